// SPDX-License-Identifier: Apache-2.0
// Reference semantics over point-based graphs: every expression becomes an
// explicit relation over PTO. Written for obviousness, not speed.
#include "trpq/oracle.hpp"

#include "trpq/errors.hpp"
#include "trpq/query.hpp"

#include <algorithm>
#include <bit>

namespace trpq {

Relation::Relation(std::size_t n, bool dense) : n_(n), words_((n + 63) / 64), dense_(dense) {
	if (dense_)
		bits_.assign(n_ * words_, 0);
	else
		rows_.resize(n_);
}

Relation Relation::identity(std::size_t n, bool dense) {
	Relation r(n, dense);
	for (std::size_t i = 0; i < n; ++i)
		r.insert(i, i);
	return r;
}

bool Relation::contains(std::size_t i, std::size_t j) const {
	if (dense_)
		return (bits_[i * words_ + j / 64] >> (j % 64)) & 1;
	return std::binary_search(rows_[i].begin(), rows_[i].end(), static_cast<std::uint32_t>(j));
}

void Relation::insert(std::size_t i, std::size_t j) {
	if (dense_) {
		bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
		return;
	}
	auto &row = rows_[i];
	auto v = static_cast<std::uint32_t>(j);
	auto it = std::lower_bound(row.begin(), row.end(), v);
	if (it == row.end() || *it != v)
		row.insert(it, v);
}

bool Relation::row_empty(std::size_t i) const {
	if (!dense_)
		return rows_[i].empty();
	for (std::size_t w = 0; w < words_; ++w)
		if (bits_[i * words_ + w])
			return false;
	return true;
}

std::vector<std::uint32_t> Relation::row(std::size_t i) const {
	if (!dense_)
		return rows_[i];
	std::vector<std::uint32_t> out;
	for (std::size_t w = 0; w < words_; ++w) {
		std::uint64_t word = bits_[i * words_ + w];
		while (word) {
			int b = std::countr_zero(word);
			out.push_back(static_cast<std::uint32_t>(w * 64 + b));
			word &= word - 1;
		}
	}
	return out;
}

std::size_t Relation::pair_count() const {
	std::size_t c = 0;
	if (dense_) {
		for (auto w : bits_)
			c += static_cast<std::size_t>(std::popcount(w));
	} else {
		for (const auto &r : rows_)
			c += r.size();
	}
	return c;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Relation::pairs() const {
	std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
	for (std::size_t i = 0; i < n_; ++i)
		for (auto j : row(i))
			out.emplace_back(static_cast<std::uint32_t>(i), j);
	return out;
}

Relation Relation::compose(const Relation &other) const {
	Relation out(n_, dense_);
	if (dense_) {
		for (std::size_t i = 0; i < n_; ++i) {
			std::uint64_t *dst = &out.bits_[i * words_];
			for (auto j : row(i)) {
				const std::uint64_t *src = other.dense_ ? &other.bits_[j * words_] : nullptr;
				if (src) {
					for (std::size_t w = 0; w < words_; ++w)
						dst[w] |= src[w];
				} else {
					for (auto k : other.rows_[j])
						dst[k / 64] |= std::uint64_t{1} << (k % 64);
				}
			}
		}
		return out;
	}
	std::vector<char> mark(n_, 0);
	for (std::size_t i = 0; i < n_; ++i) {
		std::vector<std::uint32_t> acc;
		for (auto j : rows_[i])
			for (auto k : other.row(j))
				if (!mark[k]) {
					mark[k] = 1;
					acc.push_back(k);
				}
		for (auto k : acc)
			mark[k] = 0;
		std::sort(acc.begin(), acc.end());
		out.rows_[i] = std::move(acc);
	}
	return out;
}

Relation Relation::unite(const Relation &other) const {
	Relation out = *this;
	if (dense_ && other.dense_) {
		for (std::size_t k = 0; k < bits_.size(); ++k)
			out.bits_[k] |= other.bits_[k];
		return out;
	}
	for (std::size_t i = 0; i < n_; ++i)
		for (auto j : other.row(i))
			out.insert(i, j);
	return out;
}

Relation Relation::with_identity() const {
	Relation out = *this;
	for (std::size_t i = 0; i < n_; ++i)
		out.insert(i, i);
	return out;
}

bool operator==(const Relation &a, const Relation &b) {
	if (a.n_ != b.n_)
		return false;
	for (std::size_t i = 0; i < a.n_; ++i)
		if (a.row(i) != b.row(i))
			return false;
	return true;
}

std::size_t pto_index(const Tpg &g, ObjectIndex o, TimePoint t) {
	return static_cast<std::size_t>(o) * g.points() + static_cast<std::size_t>(t - g.omega_start());
}

TemporalObject pto_object(const Tpg &g, std::size_t index) {
	return {static_cast<ObjectIndex>(index / g.points()), g.omega_start() + index % g.points()};
}

namespace {

class Oracle {
public:
	Oracle(const Tpg &g, RelationMode mode) : g_(g), n_(g.object_count() * g.points()) {
		dense_ = mode == RelationMode::Dense || (mode == RelationMode::Auto && n_ <= Relation::kDenseLimit);
	}

	Relation axis(AxisKind a) const {
		Relation r(n_, dense_);
		const auto &topo = g_.topology();
		for (ObjectIndex o = 0; o < topo.size(); ++o) {
			for (std::size_t k = 0; k < g_.points(); ++k) {
				TimePoint t = g_.omega_start() + k;
				std::size_t from = pto_index(g_, o, t);
				switch (a) {
				case AxisKind::Next:
					if (k + 1 < g_.points())
						r.insert(from, pto_index(g_, o, t + 1));
					break;
				case AxisKind::Prev:
					if (k > 0)
						r.insert(from, pto_index(g_, o, t - 1));
					break;
				case AxisKind::Forward:
				case AxisKind::Backward: {
					bool fwd = a == AxisKind::Forward;
					if (topo.is_node(o)) {
						for (auto e : fwd ? topo.out_edges(o) : topo.in_edges(o))
							r.insert(from, pto_index(g_, e, t));
					} else {
						ObjectIndex end = fwd ? topo.at(o).dst : topo.at(o).src;
						r.insert(from, pto_index(g_, end, t));
					}
					break;
				}
				}
			}
		}
		return r;
	}

	std::vector<char> sat(const TestExpr &test) {
		std::vector<char> out(n_, 0);
		const auto &topo = g_.topology();
		auto each = [&](auto &&pred) {
			for (ObjectIndex o = 0; o < topo.size(); ++o)
				for (std::size_t k = 0; k < g_.points(); ++k)
					out[pto_index(g_, o, g_.omega_start() + k)] = pred(o, g_.omega_start() + k) ? 1 : 0;
		};
		if (std::holds_alternative<test::IsNode>(test.node)) {
			each([&](ObjectIndex o, TimePoint) { return topo.is_node(o); });
		} else if (std::holds_alternative<test::IsEdge>(test.node)) {
			each([&](ObjectIndex o, TimePoint) { return topo.is_edge(o); });
		} else if (auto *x = std::get_if<test::HasLabel>(&test.node)) {
			each([&](ObjectIndex o, TimePoint) { return topo.at(o).label == x->label; });
		} else if (auto *x = std::get_if<test::PropEquals>(&test.node)) {
			each([&](ObjectIndex o, TimePoint t) {
				auto v = g_.property(o, x->prop, t);
				return v && *v == x->value;
			});
		} else if (auto *x = std::get_if<test::TimeLess>(&test.node)) {
			each([&](ObjectIndex, TimePoint t) { return t < x->k; });
		} else if (std::holds_alternative<test::Exists>(test.node)) {
			each([&](ObjectIndex o, TimePoint t) { return g_.exists(o, t); });
		} else if (auto *x = std::get_if<test::PathCondition>(&test.node)) {
			Relation r = eval(*x->path);
			for (std::size_t i = 0; i < n_; ++i)
				out[i] = r.row_empty(i) ? 0 : 1;
		} else if (auto *x = std::get_if<test::Or>(&test.node)) {
			auto a = sat(*x->lhs), b = sat(*x->rhs);
			for (std::size_t i = 0; i < n_; ++i)
				out[i] = a[i] || b[i];
		} else if (auto *x = std::get_if<test::And>(&test.node)) {
			auto a = sat(*x->lhs), b = sat(*x->rhs);
			for (std::size_t i = 0; i < n_; ++i)
				out[i] = a[i] && b[i];
		} else {
			auto a = sat(*std::get<test::Not>(test.node).operand);
			for (std::size_t i = 0; i < n_; ++i)
				out[i] = !a[i];
		}
		return out;
	}

	Relation power(const Relation &r, std::uint64_t n) const {
		if (n <= 8) {
			Relation acc = Relation::identity(n_, dense_);
			for (std::uint64_t i = 0; i < n; ++i)
				acc = acc.compose(r);
			return acc;
		}
		Relation acc = Relation::identity(n_, dense_);
		Relation base = r;
		while (n) {
			if (n & 1)
				acc = acc.compose(base);
			n >>= 1;
			if (n)
				base = base.compose(base);
		}
		return acc;
	}

	Relation closure(const Relation &r) const {
		Relation acc = r.with_identity();
		for (;;) {
			Relation next = acc.compose(acc);
			if (next == acc)
				return acc;
			acc = std::move(next);
		}
	}

	Relation eval(const PathExpr &e) {
		if (auto *x = std::get_if<path::Test>(&e.node)) {
			auto s = sat(*x->test);
			Relation r(n_, dense_);
			for (std::size_t i = 0; i < n_; ++i)
				if (s[i])
					r.insert(i, i);
			return r;
		}
		if (auto *x = std::get_if<path::Axis>(&e.node))
			return axis(x->kind);
		if (auto *x = std::get_if<path::Concat>(&e.node))
			return eval(*x->lhs).compose(eval(*x->rhs));
		if (auto *x = std::get_if<path::Union>(&e.node))
			return eval(*x->lhs).unite(eval(*x->rhs));
		const auto &rep = std::get<path::Repeat>(e.node);
		Relation r = eval(*rep.operand);
		Relation head = power(r, rep.low);
		if (!rep.high)
			return head.compose(closure(r));
		// Past D^2 extra steps no new pairs can appear.
		std::uint64_t d = n_;
		std::uint64_t clamp = d != 0 && d > kTimeMax / d ? kTimeMax : d * d;
		std::uint64_t extra = std::min(*rep.high - rep.low, clamp);
		return head.compose(power(r.with_identity(), extra));
	}

private:
	const Tpg &g_;
	std::size_t n_;
	bool dense_ = true;
};

} // namespace

Relation axis_relation(const Tpg &g, AxisKind a, RelationMode mode) {
	return Oracle(g, mode).axis(a);
}

bool test_holds(const Tpg &g, ObjectIndex o, TimePoint t, const TestExpr &test) {
	if (!g.in_omega(t))
		return false;
	return Oracle(g, RelationMode::Auto).sat(test)[pto_index(g, o, t)] != 0;
}

Relation eval_relation(const Tpg &g, const PathExpr &e, RelationMode mode) {
	return Oracle(g, mode).eval(e);
}

bool check_membership(const Tpg &g, const PathExpr &e, const BindingTuple &t) {
	if (!g.in_omega(t.from.time) || !g.in_omega(t.to.time))
		return false;
	if (t.from.object >= g.object_count() || t.to.object >= g.object_count())
		return false;
	return eval_relation(g, e).contains(pto_index(g, t.from.object, t.from.time), pto_index(g, t.to.object, t.to.time));
}

std::vector<BindingTuple> relation_tuples(const Tpg &g, const Relation &r) {
	std::vector<BindingTuple> out;
	for (const auto &[i, j] : r.pairs())
		out.push_back({pto_object(g, i), pto_object(g, j)});
	return out;
}

namespace {

// Ordinary RPQ evaluation on the object graph frozen at one time point.
// Relations here range over objects, not temporal objects.
class SnapshotEvaluator {
public:
	SnapshotEvaluator(const Tpg &g, TimePoint t) : g_(g), t_(t), n_(g.object_count()) {}

	std::vector<char> sat(const TestExpr &test) {
		const auto &topo = g_.topology();
		std::vector<char> out(n_, 0);
		for (ObjectIndex o = 0; o < n_; ++o) {
			if (std::holds_alternative<test::IsNode>(test.node))
				out[o] = topo.is_node(o);
			else if (std::holds_alternative<test::IsEdge>(test.node))
				out[o] = topo.is_edge(o);
			else if (auto *x = std::get_if<test::HasLabel>(&test.node))
				out[o] = topo.at(o).label == x->label;
			else if (auto *x = std::get_if<test::PropEquals>(&test.node)) {
				auto v = g_.property(o, x->prop, t_);
				out[o] = v && *v == x->value;
			} else if (std::holds_alternative<test::Exists>(test.node))
				out[o] = g_.exists(o, t_);
		}
		if (auto *x = std::get_if<test::PathCondition>(&test.node)) {
			auto r = eval(*x->path);
			for (ObjectIndex o = 0; o < n_; ++o)
				out[o] = std::find(r[o].begin(), r[o].end(), 1) != r[o].end();
		} else if (auto *x = std::get_if<test::Or>(&test.node)) {
			auto a = sat(*x->lhs), b = sat(*x->rhs);
			for (ObjectIndex o = 0; o < n_; ++o)
				out[o] = a[o] || b[o];
		} else if (auto *x = std::get_if<test::And>(&test.node)) {
			auto a = sat(*x->lhs), b = sat(*x->rhs);
			for (ObjectIndex o = 0; o < n_; ++o)
				out[o] = a[o] && b[o];
		} else if (auto *x = std::get_if<test::Not>(&test.node)) {
			auto a = sat(*x->operand);
			for (ObjectIndex o = 0; o < n_; ++o)
				out[o] = !a[o];
		}
		return out;
	}

	using Rows = std::vector<std::vector<char>>;

	Rows identity() const {
		Rows r(n_, std::vector<char>(n_, 0));
		for (ObjectIndex o = 0; o < n_; ++o)
			r[o][o] = 1;
		return r;
	}

	Rows compose(const Rows &a, const Rows &b) const {
		Rows r(n_, std::vector<char>(n_, 0));
		for (std::size_t i = 0; i < n_; ++i)
			for (std::size_t j = 0; j < n_; ++j)
				if (a[i][j])
					for (std::size_t k = 0; k < n_; ++k)
						r[i][k] |= b[j][k];
		return r;
	}

	Rows unite(Rows a, const Rows &b) const {
		for (std::size_t i = 0; i < n_; ++i)
			for (std::size_t k = 0; k < n_; ++k)
				a[i][k] |= b[i][k];
		return a;
	}

	Rows eval(const PathExpr &e) {
		const auto &topo = g_.topology();
		if (auto *x = std::get_if<path::Test>(&e.node)) {
			auto s = sat(*x->test);
			Rows r(n_, std::vector<char>(n_, 0));
			for (ObjectIndex o = 0; o < n_; ++o)
				r[o][o] = s[o];
			return r;
		}
		if (auto *x = std::get_if<path::Axis>(&e.node)) {
			bool fwd = x->kind == AxisKind::Forward;
			Rows r(n_, std::vector<char>(n_, 0));
			for (ObjectIndex o = 0; o < n_; ++o) {
				if (!topo.is_edge(o))
					continue;
				ObjectIndex from = fwd ? topo.at(o).src : topo.at(o).dst;
				ObjectIndex to = fwd ? topo.at(o).dst : topo.at(o).src;
				r[from][o] = 1;
				r[o][to] = 1;
			}
			return r;
		}
		if (auto *x = std::get_if<path::Concat>(&e.node))
			return compose(eval(*x->lhs), eval(*x->rhs));
		if (auto *x = std::get_if<path::Union>(&e.node))
			return unite(eval(*x->lhs), eval(*x->rhs));
		const auto &rep = std::get<path::Repeat>(e.node);
		Rows r = eval(*rep.operand);
		if (rep.low > 4096)
			throw ResourceLimit("snapshot evaluation supports repetition lower bounds up to 4096");
		Rows acc = identity();
		for (std::uint64_t i = 0; i < rep.low; ++i)
			acc = compose(acc, r);
		// Add one step at a time until the bound or a fixpoint.
		Rows total = acc;
		Rows frontier = acc;
		for (std::uint64_t k = 0; !rep.high || k < *rep.high - rep.low; ++k) {
			frontier = compose(frontier, r);
			Rows next = unite(total, frontier);
			if (next == total)
				break;
			total = std::move(next);
		}
		return total;
	}

private:

	const Tpg &g_;
	TimePoint t_;
	std::size_t n_;
};

} // namespace

Relation snapshot_relation(const Tpg &g, TimePoint t, const PathExpr &e) {
	if (!is_time_free(e))
		throw FragmentError("snapshot evaluation needs an expression without N, P or time tests");
	std::size_t n = g.object_count() * g.points();
	Relation out(n, n <= Relation::kDenseLimit);
	if (!g.in_omega(t))
		return out;
	SnapshotEvaluator ev(g, t);
	auto rows = ev.eval(e);
	for (ObjectIndex o = 0; o < g.object_count(); ++o)
		for (ObjectIndex p = 0; p < g.object_count(); ++p)
			if (rows[o][p])
				out.insert(pto_index(g, o, t), pto_index(g, p, t));
	return out;
}

} // namespace trpq
