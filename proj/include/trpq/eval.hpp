// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trpq/ast.hpp"
#include "trpq/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace trpq {

enum class Algorithm { Auto, Pc, Anoi, Full, Oracle };

const char *algorithm_name(Algorithm a);
/// Throws std::invalid_argument for unknown names.
Algorithm parse_algorithm(const std::string &name);

struct EvalStats {
	std::string algorithm;
	std::uint64_t memo_entries = 0;
	std::uint64_t memo_hits = 0;
	std::uint64_t memo_misses = 0;
	std::uint64_t candidates_examined = 0;
	double wall_ms = 0;

	/// Flat key=value lines.
	std::string to_string() const;
};

struct EvalLimits {
	std::uint64_t max_candidates = std::uint64_t{1} << 32;
	std::uint64_t max_depth = 100000;
	/// Largest |N ∪ E| · |Ω| the full evaluator will index.
	std::uint64_t max_points = std::uint64_t{1} << 22;
	/// Total stored successor entries in the full evaluator's memo.
	std::uint64_t max_memo_elements = std::uint64_t{1} << 27;
	/// Midpoint pruning by temporal radius in the PC evaluator.
	bool radius_pruning = true;
};

/// Memoized evaluator for expressions without repetition.
/// Throws FragmentError when e contains repetition.
bool eval_only_pc(const Itpg &g, const PathExpr &e, const BindingTuple &t, EvalStats *stats = nullptr,
                  const EvalLimits &limits = {});

/// General evaluator: repetitions are split by halving, unbounded ones clamped.
/// Throws ResourceLimit when the configured budgets are exceeded.
bool eval_full(const Itpg &g, const PathExpr &e, const BindingTuple &t, EvalStats *stats = nullptr,
               const EvalLimits &limits = {});

/// Evaluator for expressions without path conditions whose repetitions wrap bare axes.
/// Throws FragmentError otherwise.
bool eval_anoi(const Itpg &g, const PathExpr &e, const BindingTuple &t, EvalStats *stats = nullptr,
               const EvalLimits &limits = {});

bool algorithm_accepts(Algorithm a, const PathExpr &e);
/// The algorithm Auto resolves to for e.
Algorithm auto_algorithm(const PathExpr &e);

struct DispatchResult {
	bool member = false;
	EvalStats stats;
};

/// Throws FragmentError when a forced algorithm does not accept e.
DispatchResult eval_dispatch(const Itpg &g, const PathExpr &e, const BindingTuple &t, Algorithm algo = Algorithm::Auto,
                             const EvalLimits &limits = {});

struct BindingOptions {
	Algorithm algorithm = Algorithm::Auto;
	unsigned threads = 1;
	std::uint64_t max_rows = std::uint64_t{1} << 26;
	std::size_t expansion_cap = kDefaultExpansionCap;
	EvalLimits limits;
};

struct BindingResult {
	std::vector<BindingTuple> rows;
	EvalStats stats;
	/// Time spent on interval sets, before any point-level expansion.
	double interval_ms = 0;
	double total_ms = 0;
};

/// All members of [[e]], sorted by (from.object, from.time, to.object, to.time).
BindingResult eval_bindings(const Itpg &g, const PathExpr &e, const BindingOptions &options = {});

} // namespace trpq
