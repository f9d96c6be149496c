// SPDX-License-Identifier: Apache-2.0
// Helpers shared by the interval-based evaluators.
#pragma once

#include "trpq/ast.hpp"
#include "trpq/eval.hpp"
#include "trpq/graph.hpp"

#include <chrono>

namespace trpq::detail {

inline bool in_omega(const Itpg &g, TimePoint t) {
	return g.omega().contains(t);
}

inline bool valid_tuple(const Itpg &g, const BindingTuple &t) {
	return t.from.object < g.object_count() && t.to.object < g.object_count() && in_omega(g, t.from.time) &&
	       in_omega(g, t.to.time);
}

/// One application of an axis: is (y) a successor of (x)?
inline bool axis_holds(const Itpg &g, AxisKind a, const TemporalObject &x, const TemporalObject &y) {
	const auto &topo = g.topology();
	switch (a) {
	case AxisKind::Next:
		return x.object == y.object && x.time != kTimeMax && y.time == x.time + 1;
	case AxisKind::Prev:
		return x.object == y.object && x.time != 0 && y.time == x.time - 1;
	case AxisKind::Forward:
		if (x.time != y.time)
			return false;
		if (topo.is_node(x.object))
			return topo.is_edge(y.object) && topo.at(y.object).src == x.object;
		return topo.at(x.object).dst == y.object;
	case AxisKind::Backward:
		if (x.time != y.time)
			return false;
		if (topo.is_node(x.object))
			return topo.is_edge(y.object) && topo.at(y.object).dst == x.object;
		return topo.at(x.object).src == y.object;
	}
	return false;
}

/// Test satisfaction read straight off the interval families; path
/// conditions are delegated to `condition`.
template <class ConditionFn>
bool test_holds_at(const Itpg &g, const TestExpr &test, const TemporalObject &x, ConditionFn &&condition) {
	const auto &topo = g.topology();
	if (std::holds_alternative<test::IsNode>(test.node))
		return topo.is_node(x.object);
	if (std::holds_alternative<test::IsEdge>(test.node))
		return topo.is_edge(x.object);
	if (auto *t = std::get_if<test::HasLabel>(&test.node))
		return topo.at(x.object).label == t->label;
	if (auto *t = std::get_if<test::PropEquals>(&test.node)) {
		auto v = property_at(g, x.object, t->prop, x.time);
		return v && *v == t->value;
	}
	if (auto *t = std::get_if<test::TimeLess>(&test.node))
		return x.time < t->k;
	if (std::holds_alternative<test::Exists>(test.node))
		return exists_at(g, x.object, x.time);
	if (auto *t = std::get_if<test::PathCondition>(&test.node))
		return condition(test, *t->path, x);
	if (auto *t = std::get_if<test::Or>(&test.node))
		return test_holds_at(g, *t->lhs, x, condition) || test_holds_at(g, *t->rhs, x, condition);
	if (auto *t = std::get_if<test::And>(&test.node))
		return test_holds_at(g, *t->lhs, x, condition) && test_holds_at(g, *t->rhs, x, condition);
	return !test_holds_at(g, *std::get<test::Not>(test.node).operand, x, condition);
}

inline TimePoint sat_add(TimePoint a, TimePoint b) {
	return kTimeMax - a < b ? kTimeMax : a + b;
}

inline TimePoint sat_sub(TimePoint a, TimePoint b) {
	return a < b ? 0 : a - b;
}

class Stopwatch {
public:
	Stopwatch() : start_(std::chrono::steady_clock::now()) {}
	double elapsed_ms() const {
		return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
	}

private:
	std::chrono::steady_clock::time_point start_;
};

} // namespace trpq::detail
