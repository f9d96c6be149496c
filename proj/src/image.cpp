// SPDX-License-Identifier: Apache-2.0
#include "trpq/image.hpp"

#include "trpq/errors.hpp"

#include <algorithm>

namespace trpq {

TemporalSet TemporalSet::full(const Itpg &g) {
	TemporalSet s;
	for (ObjectIndex o = 0; o < g.object_count(); ++o)
		s.parts_.emplace(o, IntervalFamily::single(g.omega()));
	return s;
}

TemporalSet TemporalSet::point(ObjectIndex o, TimePoint t) {
	TemporalSet s;
	s.parts_.emplace(o, IntervalFamily::single({t, t}));
	return s;
}

bool TemporalSet::contains(ObjectIndex o, TimePoint t) const {
	auto it = parts_.find(o);
	return it != parts_.end() && it->second.contains(t);
}

TimePoint TemporalSet::point_count() const {
	TimePoint total = 0;
	for (const auto &[_, f] : parts_) {
		TimePoint c = f.point_count();
		if (kTimeMax - total < c)
			return kTimeMax;
		total += c;
	}
	return total;
}

const IntervalFamily *TemporalSet::at(ObjectIndex o) const {
	auto it = parts_.find(o);
	return it == parts_.end() ? nullptr : &it->second;
}

void TemporalSet::add(ObjectIndex o, const IntervalFamily &f) {
	if (f.empty())
		return;
	auto [it, inserted] = parts_.emplace(o, f);
	if (!inserted)
		it->second = it->second.unite(f);
}

TemporalSet TemporalSet::unite(const TemporalSet &other) const {
	TemporalSet out = *this;
	for (const auto &[o, f] : other.parts_)
		out.add(o, f);
	return out;
}

TemporalSet TemporalSet::intersect(const TemporalSet &other) const {
	TemporalSet out;
	for (const auto &[o, f] : parts_) {
		auto it = other.parts_.find(o);
		if (it == other.parts_.end())
			continue;
		auto both = f.intersect(it->second);
		if (!both.empty())
			out.parts_.emplace(o, std::move(both));
	}
	return out;
}

TemporalSet TemporalSet::subtract(const TemporalSet &other) const {
	TemporalSet out;
	for (const auto &[o, f] : parts_) {
		auto it = other.parts_.find(o);
		auto rest = it == other.parts_.end() ? f : f.subtract(it->second);
		if (!rest.empty())
			out.parts_.emplace(o, std::move(rest));
	}
	return out;
}

StepGraph::StepGraph(const Topology &topology, bool forward) : succ_(topology.size()) {
	for (ObjectIndex o = 0; o < topology.size(); ++o) {
		if (!topology.is_edge(o))
			continue;
		const auto &info = topology.at(o);
		ObjectIndex from = forward ? info.src : info.dst;
		ObjectIndex to = forward ? info.dst : info.src;
		succ_[from].push_back(o);
		succ_[o].push_back(to);
	}
}

std::vector<char> StepGraph::step(const std::vector<char> &set) const {
	std::vector<char> out(succ_.size(), 0);
	for (ObjectIndex o = 0; o < succ_.size(); ++o)
		if (set[o])
			for (auto s : succ_[o])
				out[s] = 1;
	return out;
}

namespace {

constexpr std::uint64_t kDirectSteps = std::uint64_t{1} << 16;
constexpr std::size_t kMatrixObjects = 1024;

using BitMatrix = std::vector<std::vector<std::uint64_t>>;

BitMatrix multiply(const BitMatrix &a, const BitMatrix &b, std::size_t n) {
	std::size_t words = (n + 63) / 64;
	BitMatrix out(n, std::vector<std::uint64_t>(words, 0));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			if ((a[i][j / 64] >> (j % 64)) & 1)
				for (std::size_t w = 0; w < words; ++w)
					out[i][w] |= b[j][w];
	return out;
}

} // namespace

std::vector<char> StepGraph::reach(const std::vector<char> &from, std::uint64_t n,
                                   std::optional<std::uint64_t> m) const {
	const std::size_t size = succ_.size();
	std::vector<char> current = from;
	if (n <= kDirectSteps) {
		for (std::uint64_t i = 0; i < n; ++i) {
			current = step(current);
			if (std::find(current.begin(), current.end(), 1) == current.end())
				return current;
		}
	} else if (size <= kMatrixObjects) {
		std::size_t words = (size + 63) / 64;
		BitMatrix base(size, std::vector<std::uint64_t>(words, 0));
		for (ObjectIndex o = 0; o < size; ++o)
			for (auto s : succ_[o])
				base[o][s / 64] |= std::uint64_t{1} << (s % 64);
		BitMatrix acc(size, std::vector<std::uint64_t>(words, 0));
		for (std::size_t i = 0; i < size; ++i)
			acc[i][i / 64] |= std::uint64_t{1} << (i % 64);
		for (std::uint64_t k = n; k; k >>= 1) {
			if (k & 1)
				acc = multiply(acc, base, size);
			if (k > 1)
				base = multiply(base, base, size);
		}
		std::vector<char> out(size, 0);
		for (std::size_t i = 0; i < size; ++i)
			if (current[i])
				for (std::size_t j = 0; j < size; ++j)
					if ((acc[i][j / 64] >> (j % 64)) & 1)
						out[j] = 1;
		current = std::move(out);
	} else {
		throw ResourceLimit("structural repetition with lower bound " + std::to_string(n) + " over " +
		                    std::to_string(size) + " objects exceeds the step budget");
	}
	// Beyond |N ∪ E| extra steps nothing new becomes reachable.
	std::uint64_t extra = m ? std::min<std::uint64_t>(*m - n, size) : size;
	std::vector<char> total = current;
	std::vector<char> frontier = current;
	for (std::uint64_t k = 0; k < extra; ++k) {
		auto next = step(frontier);
		bool grew = false;
		for (std::size_t i = 0; i < size; ++i) {
			if (next[i] && !total[i]) {
				total[i] = 1;
				grew = true;
			} else {
				next[i] = 0;
			}
		}
		if (!grew)
			break;
		frontier = std::move(next);
	}
	return total;
}

ImageEngine::ImageEngine(const Itpg &g, EngineLimits limits) : g_(g), limits_(limits) {}

const StepGraph &ImageEngine::steps(bool forward) {
	auto &slot = forward ? forward_steps_ : backward_steps_;
	if (!slot)
		slot.emplace(g_.topology(), forward);
	return *slot;
}

void ImageEngine::tick() {
	if (++iterations_ > limits_.max_iterations)
		throw ResourceLimit("interval image iteration budget exhausted");
}

TemporalSet ImageEngine::forward(const PathExpr &e, const TemporalSet &s) {
	return image(e, s, true);
}

TemporalSet ImageEngine::backward(const PathExpr &e, const TemporalSet &t) {
	return image(e, t, false);
}

IntervalFamily ImageEngine::satisfying(const TestExpr &test, ObjectIndex o) {
	const Interval omega = g_.omega();
	const auto &topo = g_.topology();
	const IntervalFamily all = IntervalFamily::single(omega);
	if (std::holds_alternative<test::IsNode>(test.node))
		return topo.is_node(o) ? all : IntervalFamily();
	if (std::holds_alternative<test::IsEdge>(test.node))
		return topo.is_edge(o) ? all : IntervalFamily();
	if (auto *x = std::get_if<test::HasLabel>(&test.node))
		return topo.at(o).label == x->label ? all : IntervalFamily();
	if (auto *x = std::get_if<test::PropEquals>(&test.node)) {
		const auto *fam = g_.property(o, x->prop);
		return fam ? fam->points_with(x->value).intersect(all) : IntervalFamily();
	}
	if (auto *x = std::get_if<test::TimeLess>(&test.node)) {
		if (x->k <= omega.start)
			return {};
		return IntervalFamily::single({omega.start, std::min(x->k - 1, omega.end)});
	}
	if (std::holds_alternative<test::Exists>(test.node))
		return g_.existence(o).intersect(all);
	if (auto *x = std::get_if<test::PathCondition>(&test.node)) {
		auto it = condition_cache_.find(&test);
		if (it == condition_cache_.end())
			it = condition_cache_.emplace(&test, backward(*x->path, TemporalSet::full(g_))).first;
		const auto *f = it->second.at(o);
		return f ? *f : IntervalFamily();
	}
	if (auto *x = std::get_if<test::Or>(&test.node))
		return satisfying(*x->lhs, o).unite(satisfying(*x->rhs, o));
	if (auto *x = std::get_if<test::And>(&test.node)) {
		auto lhs = satisfying(*x->lhs, o);
		return lhs.empty() ? lhs : lhs.intersect(satisfying(*x->rhs, o));
	}
	return satisfying(*std::get<test::Not>(test.node).operand, o).complement(omega);
}

TemporalSet ImageEngine::filter(const TestExpr &test, const TemporalSet &s) {
	TemporalSet out;
	for (const auto &[o, f] : s.parts())
		out.add(o, f.intersect(satisfying(test, o)));
	return out;
}

TemporalSet ImageEngine::axis_image(AxisKind a, const TemporalSet &s, bool fwd, std::uint64_t n,
                                    std::optional<std::uint64_t> m) {
	const Interval omega = g_.omega();
	TemporalSet out;
	switch (a) {
	case AxisKind::Next:
	case AxisKind::Prev: {
		bool later = (a == AxisKind::Next) == fwd;
		TimePoint hi = m ? *m : kTimeMax;
		for (const auto &[o, f] : s.parts())
			out.add(o, later ? f.shift_forward(n, hi, omega) : f.shift_backward(n, hi, omega));
		return out;
	}
	case AxisKind::Forward:
	case AxisKind::Backward: {
		const auto &graph = steps((a == AxisKind::Forward) == fwd);
		if (n == 1 && m && *m == 1) {
			for (const auto &[o, f] : s.parts())
				for (auto next : graph.successors(o))
					out.add(next, f);
			return out;
		}
		std::vector<char> from(graph.size(), 0);
		for (const auto &[o, f] : s.parts()) {
			from[o] = 1;
			auto reached = graph.reach(from, n, m);
			from[o] = 0;
			for (ObjectIndex r = 0; r < reached.size(); ++r)
				if (reached[r])
					out.add(r, f);
		}
		return out;
	}
	}
	return out;
}

TemporalSet ImageEngine::image(const PathExpr &e, const TemporalSet &s, bool fwd) {
	if (s.empty())
		return s;
	if (auto *x = std::get_if<path::Test>(&e.node))
		return filter(*x->test, s);
	if (auto *x = std::get_if<path::Axis>(&e.node))
		return axis_image(x->kind, s, fwd, 1, 1);
	if (auto *x = std::get_if<path::Concat>(&e.node)) {
		if (fwd)
			return image(*x->rhs, image(*x->lhs, s, true), true);
		return image(*x->lhs, image(*x->rhs, s, false), false);
	}
	if (auto *x = std::get_if<path::Union>(&e.node))
		return image(*x->lhs, s, fwd).unite(image(*x->rhs, s, fwd));

	const auto &rep = std::get<path::Repeat>(e.node);
	if (auto axis = as_axis(*rep.operand))
		return axis_image(*axis, s, fwd, rep.low, rep.high);

	// Composite operand: apply it low times, then accumulate further steps
	// until the upper bound or a fixpoint.
	TemporalSet current = s;
	for (std::uint64_t i = 0; i < rep.low; ++i) {
		tick();
		TemporalSet next = image(*rep.operand, current, fwd);
		if (next == current)
			break;
		current = std::move(next);
		if (current.empty())
			return current;
	}
	TemporalSet total = current;
	TemporalSet frontier = current;
	for (std::uint64_t k = 0; !rep.high || k < *rep.high - rep.low; ++k) {
		tick();
		TemporalSet fresh = image(*rep.operand, frontier, fwd).subtract(total);
		if (fresh.empty())
			break;
		total = total.unite(fresh);
		frontier = std::move(fresh);
	}
	return total;
}

} // namespace trpq
