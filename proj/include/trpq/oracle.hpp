// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trpq/ast.hpp"
#include "trpq/graph.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace trpq {

/// Binary relation over {0..n-1}; either a bit matrix or sorted adjacency rows.
class Relation {
public:
	static constexpr std::size_t kDenseLimit = std::size_t{1} << 14;

	Relation() = default;
	Relation(std::size_t n, bool dense);
	static Relation identity(std::size_t n, bool dense);

	std::size_t size() const { return n_; }
	bool dense() const { return dense_; }

	bool contains(std::size_t i, std::size_t j) const;
	void insert(std::size_t i, std::size_t j);
	bool row_empty(std::size_t i) const;
	std::vector<std::uint32_t> row(std::size_t i) const;
	std::size_t pair_count() const;
	std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const;

	Relation compose(const Relation &other) const;
	Relation unite(const Relation &other) const;
	Relation with_identity() const;

	friend bool operator==(const Relation &a, const Relation &b);

private:
	std::size_t n_ = 0;
	std::size_t words_ = 0;
	bool dense_ = true;
	std::vector<std::uint64_t> bits_;
	std::vector<std::vector<std::uint32_t>> rows_;
};

/// Index of (o, t) in the PTO numbering used by Relation: o * |Ω| + (t - start).
std::size_t pto_index(const Tpg &g, ObjectIndex o, TimePoint t);
TemporalObject pto_object(const Tpg &g, std::size_t index);

enum class RelationMode { Auto, Dense, Sparse };

Relation axis_relation(const Tpg &g, AxisKind a, RelationMode mode = RelationMode::Auto);
bool test_holds(const Tpg &g, ObjectIndex o, TimePoint t, const TestExpr &test);
Relation eval_relation(const Tpg &g, const PathExpr &e, RelationMode mode = RelationMode::Auto);
/// Tuples outside PTO (times outside Ω) are never members.
bool check_membership(const Tpg &g, const PathExpr &e, const BindingTuple &t);
/// Evaluation of a time-free expression on the slice at t, as a relation over PTO.
/// Throws FragmentError for expressions that use N, P or time tests.
Relation snapshot_relation(const Tpg &g, TimePoint t, const PathExpr &e);

std::vector<BindingTuple> relation_tuples(const Tpg &g, const Relation &r);

} // namespace trpq
