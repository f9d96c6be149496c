// SPDX-License-Identifier: Apache-2.0
#include "trpq/errors.hpp"
#include "trpq/query.hpp"

namespace trpq {

namespace {

// Generic pre-order walk over paths and tests. Visitors return false to stop.
template <class PathFn, class TestFn>
bool walk(const PathExpr &e, PathFn &&on_path, TestFn &&on_test);

template <class PathFn, class TestFn>
bool walk(const TestExpr &t, PathFn &&on_path, TestFn &&on_test) {
	if (!on_test(t))
		return false;
	if (auto *x = std::get_if<test::PathCondition>(&t.node))
		return walk(*x->path, on_path, on_test);
	if (auto *x = std::get_if<test::Or>(&t.node))
		return walk(*x->lhs, on_path, on_test) && walk(*x->rhs, on_path, on_test);
	if (auto *x = std::get_if<test::And>(&t.node))
		return walk(*x->lhs, on_path, on_test) && walk(*x->rhs, on_path, on_test);
	if (auto *x = std::get_if<test::Not>(&t.node))
		return walk(*x->operand, on_path, on_test);
	return true;
}

template <class PathFn, class TestFn>
bool walk(const PathExpr &e, PathFn &&on_path, TestFn &&on_test) {
	if (!on_path(e))
		return false;
	if (auto *x = std::get_if<path::Test>(&e.node))
		return walk(*x->test, on_path, on_test);
	if (auto *x = std::get_if<path::Concat>(&e.node))
		return walk(*x->lhs, on_path, on_test) && walk(*x->rhs, on_path, on_test);
	if (auto *x = std::get_if<path::Union>(&e.node))
		return walk(*x->lhs, on_path, on_test) && walk(*x->rhs, on_path, on_test);
	if (auto *x = std::get_if<path::Repeat>(&e.node))
		return walk(*x->operand, on_path, on_test);
	return true;
}

} // namespace

bool contains_repeat(const PathExpr &e) {
	bool found = false;
	walk(
	    e,
	    [&](const PathExpr &p) {
		    found = found || std::holds_alternative<path::Repeat>(p.node);
		    return !found;
	    },
	    [](const TestExpr &) { return true; });
	return found;
}

bool contains_path_condition(const PathExpr &e) {
	bool found = false;
	walk(
	    e, [&](const PathExpr &) { return !found; },
	    [&](const TestExpr &t) {
		    found = found || std::holds_alternative<test::PathCondition>(t.node);
		    return !found;
	    });
	return found;
}

bool repeats_on_axes_only(const PathExpr &e) {
	bool ok = true;
	walk(
	    e,
	    [&](const PathExpr &p) {
		    if (auto *r = std::get_if<path::Repeat>(&p.node))
			    ok = ok && std::holds_alternative<path::Axis>(r->operand->node);
		    return ok;
	    },
	    [](const TestExpr &) { return true; });
	return ok;
}

bool is_time_free(const PathExpr &e) {
	bool ok = true;
	walk(
	    e,
	    [&](const PathExpr &p) {
		    if (auto *a = std::get_if<path::Axis>(&p.node))
			    ok = ok && (a->kind == AxisKind::Forward || a->kind == AxisKind::Backward);
		    return ok;
	    },
	    [&](const TestExpr &t) {
		    ok = ok && !std::holds_alternative<test::TimeLess>(t.node);
		    return ok;
	    });
	return ok;
}

Fragment classify_fragment(const PathExpr &e) {
	if (!contains_repeat(e))
		return Fragment::PcOnly;
	bool pc = contains_path_condition(e);
	bool axes_only = repeats_on_axes_only(e);
	if (!pc && axes_only)
		return Fragment::Anoi;
	if (!pc)
		return Fragment::NoiOnly;
	if (axes_only)
		return Fragment::PcAnoi;
	return Fragment::Full;
}

const char *fragment_name(Fragment f) {
	switch (f) {
	case Fragment::PcOnly:
		return "PC_ONLY";
	case Fragment::NoiOnly:
		return "NOI_ONLY";
	case Fragment::Anoi:
		return "ANOI";
	case Fragment::PcAnoi:
		return "PC_ANOI";
	case Fragment::Full:
		return "FULL";
	}
	return "FULL";
}

std::uint64_t temporal_radius(const PathExpr &e) {
	if (contains_repeat(e))
		throw FragmentError("temporal radius is only defined for expressions without repetition");
	std::uint64_t count = 0;
	walk(
	    e,
	    [&](const PathExpr &p) {
		    if (auto *a = std::get_if<path::Axis>(&p.node))
			    count += (a->kind == AxisKind::Next || a->kind == AxisKind::Prev) ? 1 : 0;
		    return true;
	    },
	    [](const TestExpr &) { return true; });
	return count;
}

std::uint64_t expr_size(const TestExpr &t) {
	std::uint64_t n = 0;
	walk(
	    t,
	    [&](const PathExpr &p) {
		    n += std::holds_alternative<path::Test>(p.node) ? 0 : 1;
		    return true;
	    },
	    [&](const TestExpr &) {
		    ++n;
		    return true;
	    });
	return n;
}

std::uint64_t expr_size(const PathExpr &e) {
	std::uint64_t n = 0;
	walk(
	    e,
	    [&](const PathExpr &p) {
		    n += std::holds_alternative<path::Test>(p.node) ? 0 : 1;
		    return true;
	    },
	    [&](const TestExpr &) {
		    ++n;
		    return true;
	    });
	return n;
}

} // namespace trpq
