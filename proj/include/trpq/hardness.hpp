// SPDX-License-Identifier: Apache-2.0
// Instance generators for the SUBSET-SUM, G-SUBSET-SUM and TQBF reductions,
// each paired with a brute-force decider.
#pragma once

#include "trpq/ast.hpp"
#include "trpq/graph.hpp"

#include <cstdint>
#include <vector>

namespace trpq {

struct ReductionInstance {
	Itpg graph;
	PathPtr expr;
	BindingTuple tuple;
	bool expected = false;
};

enum class Quantifier { ForAll, Exists };

/// Prenex formula Q1 x1 ... Qn xn φ with φ in CNF. Literals are signed
/// 1-based variable indices: 2 is x2, -2 is ¬x2.
struct QbfFormula {
	std::vector<Quantifier> quantifiers;
	std::vector<std::vector<int>> clauses;
};

/// Throws InvalidInstance for S = 0 or empty A.
ReductionInstance gen_subset_sum(const std::vector<std::uint64_t> &a, std::uint64_t s);
/// Throws SizeLimit for |A| > 24.
bool solve_subset_sum_brute(const std::vector<std::uint64_t> &a, std::uint64_t s);

ReductionInstance gen_gsubset_sum(const std::vector<std::uint64_t> &u, const std::vector<std::uint64_t> &w,
                                  std::uint64_t s);
/// ∃x ∈ {0,1}^|u| ∀y ∈ {0,1}^|w|: x·u + y·w ≠ s. Throws SizeLimit for |u| + |w| > 20.
bool solve_gsubset_sum_brute(const std::vector<std::uint64_t> &u, const std::vector<std::uint64_t> &w,
                             std::uint64_t s);

/// Throws InvalidInstance for malformed formulas, SizeLimit for n > 20.
ReductionInstance gen_qbf(const QbfFormula &f);
/// Same encoding with bit tests whose indicators sit on axes only.
ReductionInstance gen_qbf_anoi(const QbfFormula &f);
bool solve_qbf_brute(const QbfFormula &f);

/// Holds at (v, t) iff bit i (1-based, least significant first) of t is set.
TestPtr qbf_bit_test(unsigned i);
/// Axis-only variant of qbf_bit_test for a graph over [0, 2^n - 1].
TestPtr qbf_bit_test_anoi(unsigned i, unsigned n);

} // namespace trpq
