// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trpq/ast.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace trpq {

/// Parses the formal path syntax, e.g. "(Node & label(Person)) / P[0,_] / exists".
/// Throws SyntaxError.
PathPtr parse_trpq(std::string_view text);

/// Desugars a MATCH pattern with two endpoints into a path expression.
/// Throws SyntaxError or UnsupportedFeature.
PathPtr parse_match(std::string_view text);

/// Desugars a single-node MATCH pattern such as
/// "MATCH (x:Person {risk = 'low', time < '10'})" into a test expression.
PathPtr parse_match_node(std::string_view text);

/// Canonical fully parenthesized form; parse_trpq(pretty_print(e)) equals e.
std::string pretty_print(const PathExpr &e);
std::string pretty_print(const TestExpr &t);

enum class Fragment { PcOnly, NoiOnly, Anoi, PcAnoi, Full };

Fragment classify_fragment(const PathExpr &e);
const char *fragment_name(Fragment f);

bool contains_repeat(const PathExpr &e);
bool contains_path_condition(const PathExpr &e);
/// True when every repetition wraps a bare axis.
bool repeats_on_axes_only(const PathExpr &e);
/// True when e has no N/P axis and no time test anywhere.
bool is_time_free(const PathExpr &e);

/// Number of N and P occurrences, path conditions included.
/// Throws FragmentError when e contains repetitions.
std::uint64_t temporal_radius(const PathExpr &e);

/// AST node count; a path::Test wrapper counts as its test.
std::uint64_t expr_size(const PathExpr &e);
std::uint64_t expr_size(const TestExpr &t);

} // namespace trpq
