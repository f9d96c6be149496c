// SPDX-License-Identifier: Apache-2.0
#include "trpq/ast.hpp"

#include <stdexcept>

namespace trpq {

namespace {

PathPtr wrap(PathExpr e) {
	return std::make_shared<const PathExpr>(std::move(e));
}

TestPtr wrap(TestExpr e) {
	return std::make_shared<const TestExpr>(std::move(e));
}

} // namespace

PathPtr make_test(TestPtr t) {
	return wrap(PathExpr{path::Test{std::move(t)}});
}
PathPtr make_axis(AxisKind k) {
	return wrap(PathExpr{path::Axis{k}});
}
PathPtr make_concat(PathPtr a, PathPtr b) {
	return wrap(PathExpr{path::Concat{std::move(a), std::move(b)}});
}
PathPtr make_union(PathPtr a, PathPtr b) {
	return wrap(PathExpr{path::Union{std::move(a), std::move(b)}});
}
PathPtr make_repeat(PathPtr e, std::uint64_t low, std::optional<std::uint64_t> high) {
	if (high && *high < low)
		throw std::invalid_argument("repetition lower bound exceeds upper bound");
	return wrap(PathExpr{path::Repeat{std::move(e), low, high}});
}

TestPtr make_is_node() {
	return wrap(TestExpr{test::IsNode{}});
}
TestPtr make_is_edge() {
	return wrap(TestExpr{test::IsEdge{}});
}
TestPtr make_label(std::string label) {
	return wrap(TestExpr{test::HasLabel{std::move(label)}});
}
TestPtr make_prop(std::string prop, std::string value) {
	return wrap(TestExpr{test::PropEquals{std::move(prop), std::move(value)}});
}
TestPtr make_time_less(std::uint64_t k) {
	return wrap(TestExpr{test::TimeLess{k}});
}
TestPtr make_exists() {
	return wrap(TestExpr{test::Exists{}});
}
TestPtr make_path_condition(PathPtr p) {
	return wrap(TestExpr{test::PathCondition{std::move(p)}});
}
TestPtr make_or(TestPtr a, TestPtr b) {
	return wrap(TestExpr{test::Or{std::move(a), std::move(b)}});
}
TestPtr make_and(TestPtr a, TestPtr b) {
	return wrap(TestExpr{test::And{std::move(a), std::move(b)}});
}
TestPtr make_not(TestPtr a) {
	return wrap(TestExpr{test::Not{std::move(a)}});
}

bool equal(const TestExpr &a, const TestExpr &b) {
	if (a.node.index() != b.node.index())
		return false;
	if (auto *x = std::get_if<test::HasLabel>(&a.node))
		return x->label == std::get<test::HasLabel>(b.node).label;
	if (auto *x = std::get_if<test::PropEquals>(&a.node)) {
		const auto &y = std::get<test::PropEquals>(b.node);
		return x->prop == y.prop && x->value == y.value;
	}
	if (auto *x = std::get_if<test::TimeLess>(&a.node))
		return x->k == std::get<test::TimeLess>(b.node).k;
	if (auto *x = std::get_if<test::PathCondition>(&a.node))
		return equal(*x->path, *std::get<test::PathCondition>(b.node).path);
	if (auto *x = std::get_if<test::Or>(&a.node)) {
		const auto &y = std::get<test::Or>(b.node);
		return equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
	}
	if (auto *x = std::get_if<test::And>(&a.node)) {
		const auto &y = std::get<test::And>(b.node);
		return equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
	}
	if (auto *x = std::get_if<test::Not>(&a.node))
		return equal(*x->operand, *std::get<test::Not>(b.node).operand);
	// IsNode, IsEdge, Exists carry no payload.
	return true;
}

bool equal(const PathExpr &a, const PathExpr &b) {
	if (a.node.index() != b.node.index())
		return false;
	if (auto *x = std::get_if<path::Test>(&a.node))
		return equal(*x->test, *std::get<path::Test>(b.node).test);
	if (auto *x = std::get_if<path::Axis>(&a.node))
		return x->kind == std::get<path::Axis>(b.node).kind;
	if (auto *x = std::get_if<path::Concat>(&a.node)) {
		const auto &y = std::get<path::Concat>(b.node);
		return equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
	}
	if (auto *x = std::get_if<path::Union>(&a.node)) {
		const auto &y = std::get<path::Union>(b.node);
		return equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
	}
	const auto &x = std::get<path::Repeat>(a.node);
	const auto &y = std::get<path::Repeat>(b.node);
	return x.low == y.low && x.high == y.high && equal(*x.operand, *y.operand);
}

const TestExpr *as_test(const PathExpr &e) {
	auto *t = std::get_if<path::Test>(&e.node);
	return t ? t->test.get() : nullptr;
}

std::optional<AxisKind> as_axis(const PathExpr &e) {
	auto *a = std::get_if<path::Axis>(&e.node);
	if (!a)
		return std::nullopt;
	return a->kind;
}

char axis_symbol(AxisKind k) {
	switch (k) {
	case AxisKind::Forward:
		return 'F';
	case AxisKind::Backward:
		return 'B';
	case AxisKind::Next:
		return 'N';
	case AxisKind::Prev:
		return 'P';
	}
	return '?';
}

} // namespace trpq
