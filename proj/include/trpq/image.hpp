// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trpq/ast.hpp"
#include "trpq/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace trpq {

/// Set of temporal objects stored as one coalesced interval family per object.
class TemporalSet {
public:
	static TemporalSet full(const Itpg &g);
	static TemporalSet point(ObjectIndex o, TimePoint t);

	bool empty() const { return parts_.empty(); }
	bool contains(ObjectIndex o, TimePoint t) const;
	/// Point count, saturating.
	TimePoint point_count() const;
	const std::map<ObjectIndex, IntervalFamily> &parts() const { return parts_; }
	const IntervalFamily *at(ObjectIndex o) const;

	void add(ObjectIndex o, const IntervalFamily &f);
	TemporalSet unite(const TemporalSet &other) const;
	TemporalSet intersect(const TemporalSet &other) const;
	TemporalSet subtract(const TemporalSet &other) const;

	friend bool operator==(const TemporalSet &, const TemporalSet &) = default;

private:
	std::map<ObjectIndex, IntervalFamily> parts_;
};

/// Incidence graph over N ∪ E used for structural steps: node -> outgoing
/// edge -> target for the forward direction, reversed for backward.
class StepGraph {
public:
	StepGraph(const Topology &topology, bool forward);

	std::size_t size() const { return succ_.size(); }
	const std::vector<ObjectIndex> &successors(ObjectIndex o) const { return succ_[o]; }
	/// Objects reachable from `from` in k steps for some k in [n, m]; m unset means unbounded.
	/// Large n uses boolean matrix powers by repeated squaring.
	std::vector<char> reach(const std::vector<char> &from, std::uint64_t n, std::optional<std::uint64_t> m) const;

private:
	std::vector<char> step(const std::vector<char> &set) const;
	std::vector<std::vector<ObjectIndex>> succ_;
};

struct EngineLimits {
	/// Total fixpoint iterations for repetitions over composite expressions.
	std::uint64_t max_iterations = std::uint64_t{1} << 22;
};

/// Exact images of path expressions over interval-represented sets.
/// forward(e, S) = {y | x in S, (x, y) in [[e]]}; backward(e, T) = {x | y in T, (x, y) in [[e]]}.
class ImageEngine {
public:
	explicit ImageEngine(const Itpg &g, EngineLimits limits = {});

	TemporalSet forward(const PathExpr &e, const TemporalSet &s);
	TemporalSet backward(const PathExpr &e, const TemporalSet &t);
	/// Times in Ω at which (o, t) satisfies the test.
	IntervalFamily satisfying(const TestExpr &test, ObjectIndex o);

	std::uint64_t iterations() const { return iterations_; }

private:
	TemporalSet image(const PathExpr &e, const TemporalSet &s, bool fwd);
	TemporalSet filter(const TestExpr &test, const TemporalSet &s);
	TemporalSet axis_image(AxisKind a, const TemporalSet &s, bool fwd, std::uint64_t n,
	                       std::optional<std::uint64_t> m);
	const StepGraph &steps(bool forward);
	void tick();

	const Itpg &g_;
	EngineLimits limits_;
	std::uint64_t iterations_ = 0;
	std::optional<StepGraph> forward_steps_, backward_steps_;
	std::unordered_map<const TestExpr *, TemporalSet> condition_cache_;
};

} // namespace trpq
