// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace trpq {

struct PathExpr;
struct TestExpr;
using PathPtr = std::shared_ptr<const PathExpr>;
using TestPtr = std::shared_ptr<const TestExpr>;

enum class AxisKind : std::uint8_t { Forward, Backward, Next, Prev };

/// Largest accepted repetition bound or time constant.
inline constexpr std::uint64_t kMaxBound = (std::uint64_t{1} << 63) - 1;

namespace test {
struct IsNode {};
struct IsEdge {};
struct HasLabel {
	std::string label;
};
struct PropEquals {
	std::string prop;
	std::string value;
};
struct TimeLess {
	std::uint64_t k;
};
struct Exists {};
struct PathCondition {
	PathPtr path;
};
struct Or {
	TestPtr lhs, rhs;
};
struct And {
	TestPtr lhs, rhs;
};
struct Not {
	TestPtr operand;
};
} // namespace test

struct TestExpr {
	std::variant<test::IsNode, test::IsEdge, test::HasLabel, test::PropEquals, test::TimeLess, test::Exists,
	             test::PathCondition, test::Or, test::And, test::Not>
	    node;
};

namespace path {
struct Test {
	TestPtr test;
};
struct Axis {
	AxisKind kind;
};
struct Concat {
	PathPtr lhs, rhs;
};
struct Union {
	PathPtr lhs, rhs;
};
/// path[low, high]; high == nullopt is the unbounded form path[low,_].
struct Repeat {
	PathPtr operand;
	std::uint64_t low;
	std::optional<std::uint64_t> high;
};
} // namespace path

struct PathExpr {
	std::variant<path::Test, path::Axis, path::Concat, path::Union, path::Repeat> node;
};

// Constructors.
PathPtr make_test(TestPtr t);
PathPtr make_axis(AxisKind k);
PathPtr make_concat(PathPtr a, PathPtr b);
PathPtr make_union(PathPtr a, PathPtr b);
/// Throws std::invalid_argument when low > high.
PathPtr make_repeat(PathPtr e, std::uint64_t low, std::optional<std::uint64_t> high);

TestPtr make_is_node();
TestPtr make_is_edge();
TestPtr make_label(std::string label);
TestPtr make_prop(std::string prop, std::string value);
TestPtr make_time_less(std::uint64_t k);
TestPtr make_exists();
TestPtr make_path_condition(PathPtr p);
TestPtr make_or(TestPtr a, TestPtr b);
TestPtr make_and(TestPtr a, TestPtr b);
TestPtr make_not(TestPtr a);

bool equal(const PathExpr &a, const PathExpr &b);
bool equal(const TestExpr &a, const TestExpr &b);

/// The test held by a path::Test node, or nullptr.
const TestExpr *as_test(const PathExpr &e);
/// The axis of a path::Axis node, or nullopt.
std::optional<AxisKind> as_axis(const PathExpr &e);

char axis_symbol(AxisKind k);

} // namespace trpq
