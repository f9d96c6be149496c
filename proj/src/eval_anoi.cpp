// SPDX-License-Identifier: Apache-2.0
// Tuple evaluation for expressions whose repetitions wrap a single axis and
// which carry no path conditions. Temporal repetitions are resolved by
// arithmetic on the time difference, structural ones by reachability, and
// concatenation midpoints come from exact interval images of both sides.
#include "eval_common.hpp"
#include "trpq/errors.hpp"
#include "trpq/image.hpp"
#include "trpq/query.hpp"

#include <map>
#include <tuple>
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

class AnoiEvaluator {
public:
	AnoiEvaluator(const Itpg &g, const EvalLimits &limits, EvalStats &stats)
	    : g_(g), limits_(limits), stats_(stats), engine_(g),
	      forward_(g.topology(), true), backward_(g.topology(), false) {}

	bool path(const PathExpr &e, const TemporalObject &x, const TemporalObject &y) {
		MemoKey key{&e, x.object, y.object, x.time, y.time};
		if (auto it = memo_.find(key); it != memo_.end()) {
			++stats_.memo_hits;
			return it->second;
		}
		++stats_.memo_misses;
		if (++depth_ > limits_.max_depth)
			throw ResourceLimit("recursion depth budget exhausted");
		bool result = compute(e, x, y);
		--depth_;
		memo_.emplace(key, result);
		return result;
	}

	std::size_t entries() const { return memo_.size(); }

private:
	bool compute(const PathExpr &e, const TemporalObject &x, const TemporalObject &y) {
		if (auto *t = std::get_if<path::Test>(&e.node))
			return x == y && detail::test_holds_at(g_, *t->test, x, [](const TestExpr &, const PathExpr &, const TemporalObject &) -> bool {
				       throw FragmentError("path conditions are outside the ANOI fragment");
			       });
		if (auto *a = std::get_if<path::Axis>(&e.node))
			return detail::axis_holds(g_, a->kind, x, y);
		if (auto *u = std::get_if<path::Union>(&e.node))
			return path(*u->lhs, x, y) || path(*u->rhs, x, y);
		if (auto *r = std::get_if<path::Repeat>(&e.node))
			return repeat(*as_axis(*r->operand), r->low, r->high, x, y);

		const auto &c = std::get<path::Concat>(e.node);
		TemporalSet mids = engine_.forward(*c.lhs, TemporalSet::point(x.object, x.time))
		                       .intersect(engine_.backward(*c.rhs, TemporalSet::point(y.object, y.time)));
		for (const auto &[o, fam] : mids.parts()) {
			for (const auto &iv : fam.items()) {
				for (TimePoint t = iv.start;; ++t) {
					if (++stats_.candidates_examined > limits_.max_candidates)
						throw ResourceLimit("midpoint enumeration budget exhausted");
					TemporalObject mid{o, t};
					if (path(*c.lhs, x, mid) && path(*c.rhs, mid, y))
						return true;
					if (t == iv.end)
						break;
				}
			}
		}
		return false;
	}

	bool repeat(AxisKind a, std::uint64_t n, std::optional<std::uint64_t> m, const TemporalObject &x,
	            const TemporalObject &y) {
		if (a == AxisKind::Next || a == AxisKind::Prev) {
			if (x.object != y.object)
				return false;
			bool later = a == AxisKind::Next;
			if (later ? y.time < x.time : y.time > x.time)
				return false;
			std::uint64_t diff = later ? y.time - x.time : x.time - y.time;
			return diff >= n && (!m || diff <= *m);
		}
		if (x.time != y.time)
			return false;
		auto key = std::make_tuple(a == AxisKind::Forward, x.object, n, m);
		auto it = reach_.find(key);
		if (it == reach_.end()) {
			const StepGraph &graph = a == AxisKind::Forward ? forward_ : backward_;
			std::vector<char> from(graph.size(), 0);
			from[x.object] = 1;
			it = reach_.emplace(key, graph.reach(from, n, m)).first;
		}
		return it->second[y.object] != 0;
	}

	const Itpg &g_;
	const EvalLimits &limits_;
	EvalStats &stats_;
	ImageEngine engine_;
	StepGraph forward_, backward_;
	std::uint64_t depth_ = 0;
	std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
	std::map<std::tuple<bool, ObjectIndex, std::uint64_t, std::optional<std::uint64_t>>, std::vector<char>> reach_;
};

} // namespace

bool eval_anoi(const Itpg &g, const PathExpr &e, const BindingTuple &t, EvalStats *stats, const EvalLimits &limits) {
	if (contains_path_condition(e) || !repeats_on_axes_only(e))
		throw FragmentError("the ANOI evaluator needs repetitions over single axes and no path conditions");
	detail::Stopwatch clock;
	EvalStats local;
	local.algorithm = "anoi";
	bool result = false;
	if (detail::valid_tuple(g, t)) {
		AnoiEvaluator ev(g, limits, local);
		result = ev.path(e, t.from, t.to);
		local.memo_entries = ev.entries();
	}
	local.wall_ms = clock.elapsed_ms();
	if (stats)
		*stats = local;
	return result;
}

} // namespace trpq
