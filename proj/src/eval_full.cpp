// SPDX-License-Identifier: Apache-2.0
// General tuple evaluation. Temporal objects are indexed densely, every
// subterm maps a start point to its sorted successor set, and repetitions are
// split by halving the bounds so that large exponents need logarithmic depth.
#include "eval_common.hpp"
#include "trpq/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace trpq {

namespace {

struct TermKey {
	const void *term;
	bool rep;
	std::uint64_t lo, hi;
	std::uint32_t x;

	bool operator==(const TermKey &) const = default;
};

struct TermKeyHash {
	std::size_t operator()(const TermKey &k) const {
		std::size_t h = std::hash<const void *>()(k.term);
		auto mix = [&](std::uint64_t v) { h ^= std::hash<std::uint64_t>()(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
		mix(k.rep);
		mix(k.lo);
		mix(k.hi);
		mix(k.x);
		return h;
	}
};

using Points = std::vector<std::uint32_t>;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
	if (a != 0 && b > kTimeMax / a)
		return kTimeMax;
	return a * b;
}

class FullEvaluator {
public:
	FullEvaluator(const Itpg &g, const EvalLimits &limits, EvalStats &stats)
	    : g_(g), limits_(limits), stats_(stats), omega_(g.omega()) {
		std::uint64_t span = omega_.end - omega_.start;
		if (span == kTimeMax || span + 1 > limits.max_points ||
		    sat_mul(span + 1, g.object_count()) > limits.max_points)
			throw ResourceLimit("temporal object count exceeds the full evaluator's point budget");
		width_ = span + 1;
		points_ = width_ * g.object_count();
		// (I ∪ R)^k is stable once k reaches the number of points.
		stable_ = sat_mul(points_, points_);
	}

	std::uint32_t index(const TemporalObject &x) const {
		return static_cast<std::uint32_t>(x.object * width_ + (x.time - omega_.start));
	}

	TemporalObject at(std::uint32_t i) const {
		return {static_cast<ObjectIndex>(i / width_), omega_.start + i % width_};
	}

	const Points &succ(const PathExpr &e, std::uint32_t x) {
		TermKey key{&e, false, 0, 0, x};
		if (auto it = memo_.find(key); it != memo_.end()) {
			++stats_.memo_hits;
			return it->second;
		}
		++stats_.memo_misses;
		DepthGuard guard(*this);
		return store(key, compute(e, x));
	}

	std::size_t entries() const { return memo_.size(); }

private:
	struct DepthGuard {
		explicit DepthGuard(FullEvaluator &ev) : ev_(ev) {
			if (++ev_.depth_ > ev_.limits_.max_depth)
				throw ResourceLimit("recursion depth budget exhausted");
		}
		~DepthGuard() { --ev_.depth_; }
		FullEvaluator &ev_;
	};

	const Points &store(const TermKey &key, Points value) {
		elements_ += value.size() + 1;
		if (elements_ > limits_.max_memo_elements)
			throw ResourceLimit("memo size budget exhausted");
		return memo_.emplace(key, std::move(value)).first->second;
	}

	template <class Fn> Points compose(const Points &first, Fn &&next) {
		Points out;
		for (auto y : first) {
			++stats_.candidates_examined;
			if (stats_.candidates_examined > limits_.max_candidates)
				throw ResourceLimit("composition budget exhausted");
			const Points &more = next(y);
			out.insert(out.end(), more.begin(), more.end());
		}
		std::sort(out.begin(), out.end());
		out.erase(std::unique(out.begin(), out.end()), out.end());
		return out;
	}

	static Points merge(const Points &a, const Points &b) {
		Points out;
		out.reserve(a.size() + b.size());
		std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
		return out;
	}

	Points compute(const PathExpr &e, std::uint32_t xi) {
		const TemporalObject x = at(xi);
		if (auto *t = std::get_if<path::Test>(&e.node))
			return test(*t->test, x) ? Points{xi} : Points{};
		if (auto *a = std::get_if<path::Axis>(&e.node))
			return axis(a->kind, x);
		if (auto *c = std::get_if<path::Concat>(&e.node))
			return compose(succ(*c->lhs, xi), [&](std::uint32_t y) -> const Points & { return succ(*c->rhs, y); });
		if (auto *u = std::get_if<path::Union>(&e.node))
			return merge(succ(*u->lhs, xi), succ(*u->rhs, xi));
		const auto &r = std::get<path::Repeat>(e.node);
		std::uint64_t hi = r.high ? *r.high : kTimeMax;
		hi = r.low + std::min(hi - r.low, stable_);
		return repeat(*r.operand, r.low, hi, xi);
	}

	Points axis(AxisKind a, const TemporalObject &x) const {
		const auto &topo = g_.topology();
		Points out;
		switch (a) {
		case AxisKind::Next:
			if (x.time < omega_.end)
				out.push_back(index({x.object, x.time + 1}));
			break;
		case AxisKind::Prev:
			if (x.time > omega_.start)
				out.push_back(index({x.object, x.time - 1}));
			break;
		case AxisKind::Forward:
		case AxisKind::Backward: {
			bool fwd = a == AxisKind::Forward;
			if (topo.is_node(x.object)) {
				for (auto edge : fwd ? topo.out_edges(x.object) : topo.in_edges(x.object))
					out.push_back(index({edge, x.time}));
			} else {
				const auto &info = topo.at(x.object);
				out.push_back(index({fwd ? info.dst : info.src, x.time}));
			}
			std::sort(out.begin(), out.end());
			out.erase(std::unique(out.begin(), out.end()), out.end());
			break;
		}
		}
		return out;
	}

	bool test(const TestExpr &t, const TemporalObject &x) {
		return detail::test_holds_at(g_, t, x, [&](const TestExpr &, const PathExpr &p, const TemporalObject &at) {
			return !succ(p, index(at)).empty();
		});
	}

	const Points &rep(const PathExpr &op, std::uint64_t n, std::uint64_t m, std::uint32_t x) {
		TermKey key{&op, true, n, m, x};
		if (auto it = memo_.find(key); it != memo_.end()) {
			++stats_.memo_hits;
			return it->second;
		}
		++stats_.memo_misses;
		DepthGuard guard(*this);
		return store(key, repeat(op, n, m, x));
	}

	Points repeat(const PathExpr &op, std::uint64_t n, std::uint64_t m, std::uint32_t x) {
		auto then = [&](std::uint64_t lo, std::uint64_t hi) {
			return [&, lo, hi](std::uint32_t y) -> const Points & { return rep(op, lo, hi, y); };
		};
		if (n == m) {
			if (n == 0)
				return {x};
			if (n == 1)
				return succ(op, x);
			std::uint64_t l = n / 2;
			if (n % 2 == 0)
				return compose(rep(op, l, l, x), then(l, l));
			Points mid = compose(rep(op, l, l, x), [&](std::uint32_t y) -> const Points & { return succ(op, y); });
			return compose(mid, then(l, l));
		}
		if (n == 0) {
			if (m == 1)
				return merge({x}, succ(op, x));
			std::uint64_t l = m / 2;
			if (m % 2 == 0)
				return compose(rep(op, 0, l, x), then(0, l));
			Points mid = compose(rep(op, 0, l, x), then(0, 1));
			return compose(mid, then(0, l));
		}
		return compose(rep(op, n, n, x), then(0, m - n));
	}

	const Itpg &g_;
	const EvalLimits &limits_;
	EvalStats &stats_;
	Interval omega_;
	std::uint64_t width_ = 0;
	std::uint64_t points_ = 0;
	std::uint64_t stable_ = 0;
	std::uint64_t depth_ = 0;
	std::uint64_t elements_ = 0;
	std::unordered_map<TermKey, Points, TermKeyHash> memo_;
};

} // namespace

bool eval_full(const Itpg &g, const PathExpr &e, const BindingTuple &t, EvalStats *stats, const EvalLimits &limits) {
	detail::Stopwatch clock;
	EvalStats local;
	local.algorithm = "full";
	bool result = false;
	if (detail::valid_tuple(g, t)) {
		FullEvaluator ev(g, limits, local);
		const auto &out = ev.succ(e, ev.index(t.from));
		result = std::binary_search(out.begin(), out.end(), ev.index(t.to));
		local.memo_entries = ev.entries();
	}
	local.wall_ms = clock.elapsed_ms();
	if (stats)
		*stats = local;
	return result;
}

} // namespace trpq
