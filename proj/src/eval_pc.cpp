// SPDX-License-Identifier: Apache-2.0
// Tuple evaluation for expressions without repetition. Every (tuple,
// subexpression) result is memoized, and concatenation midpoints are limited
// to the times reachable with the N/P budget of each side.
#include "eval_common.hpp"
#include "trpq/errors.hpp"
#include "trpq/query.hpp"

#include <unordered_map>

namespace trpq {

namespace {

struct MemoKey {
	const void *node;
	ObjectIndex o1, o2;
	TimePoint t1, t2;

	bool operator==(const MemoKey &) const = default;
};

struct MemoKeyHash {
	std::size_t operator()(const MemoKey &k) const {
		std::size_t h = std::hash<const void *>()(k.node);
		auto mix = [&](std::uint64_t v) { h ^= std::hash<std::uint64_t>()(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
		mix(k.o1);
		mix(k.o2);
		mix(k.t1);
		mix(k.t2);
		return h;
	}
};

class PcEvaluator {
public:
	PcEvaluator(const Itpg &g, const EvalLimits &limits, EvalStats &stats) : g_(g), limits_(limits), stats_(stats) {}

	bool path(const PathExpr &e, const TemporalObject &x, const TemporalObject &y) {
		MemoKey key{&e, x.object, y.object, x.time, y.time};
		if (auto it = memo_.find(key); it != memo_.end()) {
			++stats_.memo_hits;
			return it->second;
		}
		++stats_.memo_misses;
		bool result = compute(e, x, y);
		memo_.emplace(key, result);
		return result;
	}

	std::size_t entries() const { return memo_.size(); }

private:
	std::uint64_t radius(const PathExpr &e) {
		auto it = radius_.find(&e);
		if (it != radius_.end())
			return it->second;
		return radius_.emplace(&e, temporal_radius(e)).first->second;
	}

	/// Times within `r1` of t1 and within `r2` of t2, clipped to Ω.
	Interval window(TimePoint t1, std::uint64_t r1, TimePoint t2, std::uint64_t r2) const {
		const Interval omega = g_.omega();
		if (!limits_.radius_pruning)
			return omega;
		TimePoint lo = std::max({omega.start, detail::sat_sub(t1, r1), detail::sat_sub(t2, r2)});
		TimePoint hi = std::min({omega.end, detail::sat_add(t1, r1), detail::sat_add(t2, r2)});
		return {lo, hi};
	}

	void count_candidate() {
		if (++stats_.candidates_examined > limits_.max_candidates)
			throw ResourceLimit("midpoint enumeration budget exhausted");
	}

	bool compute(const PathExpr &e, const TemporalObject &x, const TemporalObject &y) {
		if (auto *t = std::get_if<path::Test>(&e.node))
			return x == y && test(*t->test, x);
		if (auto *a = std::get_if<path::Axis>(&e.node))
			return detail::axis_holds(g_, a->kind, x, y);
		if (auto *u = std::get_if<path::Union>(&e.node))
			return path(*u->lhs, x, y) || path(*u->rhs, x, y);
		const auto &c = std::get<path::Concat>(e.node);
		Interval w = window(x.time, radius(*c.lhs), y.time, radius(*c.rhs));
		if (w.start > w.end)
			return false;
		for (TimePoint t = w.start;; ++t) {
			for (ObjectIndex o = 0; o < g_.object_count(); ++o) {
				count_candidate();
				TemporalObject mid{o, t};
				if (path(*c.lhs, x, mid) && path(*c.rhs, mid, y))
					return true;
			}
			if (t == w.end)
				break;
		}
		return false;
	}

	bool test(const TestExpr &t, const TemporalObject &x) {
		return detail::test_holds_at(g_, t, x, [&](const TestExpr &node, const PathExpr &p, const TemporalObject &at) {
			return condition(node, p, at);
		});
	}

	bool condition(const TestExpr &node, const PathExpr &p, const TemporalObject &x) {
		MemoKey key{&node, x.object, x.object, x.time, x.time};
		if (auto it = memo_.find(key); it != memo_.end()) {
			++stats_.memo_hits;
			return it->second;
		}
		++stats_.memo_misses;
		bool found = false;
		std::uint64_t r = radius(p);
		Interval w = window(x.time, r, x.time, r);
		for (TimePoint t = w.start; !found && w.start <= w.end; ++t) {
			for (ObjectIndex o = 0; o < g_.object_count() && !found; ++o) {
				count_candidate();
				found = path(p, x, {o, t});
			}
			if (t == w.end)
				break;
		}
		memo_.emplace(key, found);
		return found;
	}

	const Itpg &g_;
	const EvalLimits &limits_;
	EvalStats &stats_;
	std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
	std::unordered_map<const PathExpr *, std::uint64_t> radius_;
};

} // namespace

bool eval_only_pc(const Itpg &g, const PathExpr &e, const BindingTuple &t, EvalStats *stats,
                  const EvalLimits &limits) {
	if (contains_repeat(e))
		throw FragmentError("the PC evaluator does not accept occurrence indicators");
	detail::Stopwatch clock;
	EvalStats local;
	local.algorithm = "pc";
	bool result = false;
	if (detail::valid_tuple(g, t)) {
		PcEvaluator ev(g, limits, local);
		result = ev.path(e, t.from, t.to);
		local.memo_entries = ev.entries();
	}
	local.wall_ms = clock.elapsed_ms();
	if (stats)
		*stats = local;
	return result;
}

} // namespace trpq
