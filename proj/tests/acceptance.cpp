// SPDX-License-Identifier: Apache-2.0
// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include "support/random_instances.hpp"
#include "trpq/bench.hpp"
#include "trpq/errors.hpp"
#include "trpq/eval.hpp"
#include "trpq/hardness.hpp"
#include "trpq/image.hpp"
#include "trpq/io.hpp"
#include "trpq/oracle.hpp"
#include "trpq/query.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <unistd.h>
#include <sstream>

using namespace trpq;
using namespace trpq::testing;

namespace {

struct Outcome {
	bool pass = true;
	std::string detail;
};

std::string to_string(const PathExpr &e) {
	return pretty_print(e);
}

std::string describe(const BindingTuple &t) {
	std::ostringstream out;
	out << "(" << t.from.object << "," << t.from.time << "," << t.to.object << "," << t.to.time << ")";
	return out.str();
}

// 1. Every evaluator that accepts the expression agrees with the oracle on can(g).
Outcome oracle_equivalence() {
	const int kTrials = 10000;
	const int kTuples = 50;
	Rng rng(20241);
	std::ostringstream detail;
	std::uint64_t checks = 0;
	for (auto [kind, name] : {std::pair{ExprKind::Pc, "PC"}, std::pair{ExprKind::Anoi, "ANOI"},
	                          std::pair{ExprKind::Full, "FULL"}}) {
		for (int trial = 0; trial < kTrials; ++trial) {
			Itpg g = random_itpg(rng);
			ExprShape shape;
			shape.kind = kind;
			PathPtr e = random_path(rng, shape);
			Tpg can = canonical_translation(g);
			Relation rel = eval_relation(can, *e);
			auto members = relation_tuples(can, rel);
			for (int k = 0; k < kTuples; ++k) {
				BindingTuple t = (k % 2 == 1 && !members.empty())
				                     ? members[uniform(rng, 0, members.size() - 1)]
				                     : random_tuple(rng, g);
				bool expected = rel.contains(pto_index(can, t.from.object, t.from.time),
				                             pto_index(can, t.to.object, t.to.time));
				for (auto algo : {Algorithm::Pc, Algorithm::Anoi, Algorithm::Full}) {
					if (!algorithm_accepts(algo, *e))
						continue;
					bool got = algo == Algorithm::Pc     ? eval_only_pc(g, *e, t)
					           : algo == Algorithm::Anoi ? eval_anoi(g, *e, t)
					                                     : eval_full(g, *e, t);
					++checks;
					if (got != expected)
						return {false, std::string(algorithm_name(algo)) + " disagrees on " + to_string(*e) + " at " +
						                   describe(t) + " in " + name + " trial " + std::to_string(trial)};
				}
			}
		}
	}
	detail << checks << " evaluator checks, 0 disagreements";
	return {true, detail.str()};
}

std::vector<QbfFormula> all_small_formulas() {
	std::vector<QbfFormula> out;
	for (int n = 1; n <= 3; ++n) {
		std::vector<int> lits;
		for (int v = 1; v <= n; ++v) {
			lits.push_back(v);
			lits.push_back(-v);
		}
		std::vector<std::vector<int>> clauses;
		for (std::size_t i = 0; i < lits.size(); ++i) {
			clauses.push_back({lits[i]});
			for (std::size_t j = i + 1; j < lits.size(); ++j)
				clauses.push_back({lits[i], lits[j]});
		}
		std::vector<std::vector<std::vector<int>>> sets{{}};
		for (std::size_t a = 0; a < clauses.size(); ++a) {
			sets.push_back({clauses[a]});
			for (std::size_t b = a + 1; b < clauses.size(); ++b) {
				sets.push_back({clauses[a], clauses[b]});
				for (std::size_t c = b + 1; c < clauses.size(); ++c)
					sets.push_back({clauses[a], clauses[b], clauses[c]});
			}
		}
		for (int mask = 0; mask < (1 << n); ++mask) {
			std::vector<Quantifier> q;
			for (int v = 0; v < n; ++v)
				q.push_back(mask >> v & 1 ? Quantifier::Exists : Quantifier::ForAll);
			for (const auto &s : sets)
				out.push_back({q, s});
		}
	}
	return out;
}

// 2. eval_full on every reduction instance equals the brute-force decider.
Outcome reduction_sweep() {
	std::uint64_t count = 0;
	auto check = [&](const ReductionInstance &inst, const std::string &what) -> std::optional<Outcome> {
		++count;
		if (eval_full(inst.graph, *inst.expr, inst.tuple) != inst.expected)
			return Outcome{false, what + ": eval_full disagrees with the decider"};
		return std::nullopt;
	};
	for (unsigned mask = 1; mask < 64; ++mask) {
		std::vector<std::uint64_t> a;
		for (unsigned i = 0; i < 6; ++i)
			if (mask >> i & 1)
				a.push_back(i + 1);
		for (std::uint64_t s = 1; s <= 21; ++s)
			if (auto bad = check(gen_subset_sum(a, s), "SUBSET-SUM mask " + std::to_string(mask) + " S=" + std::to_string(s)))
				return *bad;
	}
	Rng rng(77);
	for (int i = 0; i < 200; ++i) {
		std::vector<std::uint64_t> u(uniform(rng, 0, 4)), w(uniform(rng, 0, 4));
		if (u.empty() && w.empty())
			u.push_back(0);
		for (auto &x : u)
			x = uniform(rng, 0, 5);
		for (auto &x : w)
			x = uniform(rng, 0, 5);
		std::uint64_t total = 0;
		for (auto x : u)
			total += x;
		for (auto x : w)
			total += x;
		std::uint64_t s = uniform(rng, 0, total + 1);
		if (auto bad = check(gen_gsubset_sum(u, w, s), "G-SUBSET-SUM #" + std::to_string(i)))
			return *bad;
	}
	for (const auto &f : all_small_formulas()) {
		if (auto bad = check(gen_qbf(f), "QBF"))
			return *bad;
		if (auto bad = check(gen_qbf_anoi(f), "QBF (ANOI bit tests)"))
			return *bad;
	}
	return {true, std::to_string(count) + " instances, 0 disagreements"};
}

// 3. Bit tests hold exactly at the time points whose bit is set.
Outcome bit_predicate_law() {
	std::uint64_t count = 0;
	for (unsigned n = 1; n <= 8; ++n) {
		TimePoint last = (TimePoint{1} << n) - 1;
		Itpg g = ItpgBuilder().omega({0, last}).node("v", "V").exists("v", {0, last}).build();
		for (unsigned i = 1; i <= n; ++i) {
			PathPtr r = make_test(qbf_bit_test(i));
			PathPtr q = make_test(qbf_bit_test_anoi(i, n));
			for (TimePoint t = 0; t <= last; ++t) {
				bool bit = (t >> (i - 1)) & 1;
				BindingTuple tuple{{0, t}, {0, t}};
				count += 2;
				if (eval_full(g, *r, tuple) != bit)
					return {false, "r_" + std::to_string(i) + " wrong at t=" + std::to_string(t) + ", n=" + std::to_string(n)};
				if (eval_dispatch(g, *q, tuple).member != bit)
					return {false, "q_" + std::to_string(i) + " wrong at t=" + std::to_string(t) + ", n=" + std::to_string(n)};
			}
		}
	}
	return {true, std::to_string(count) + " checks, 0 failures"};
}

// 4. PC evaluator memo size stays within ||e||^3 * |N u E|^2.
Outcome memo_bound() {
	Rng rng(4);
	std::uint64_t worst_num = 0, worst_den = 1;
	for (int i = 0; i < 100; ++i) {
		Itpg g = random_itpg(rng);
		ExprShape shape;
		shape.kind = ExprKind::Pc;
		PathPtr e = random_path(rng, shape);
		EvalStats stats;
		eval_only_pc(g, *e, random_tuple(rng, g), &stats);
		std::uint64_t size = expr_size(*e);
		std::uint64_t v = g.object_count();
		std::uint64_t bound = size * size * size * v * v;
		if (stats.memo_entries > bound)
			return {false, "memo " + std::to_string(stats.memo_entries) + " > bound " + std::to_string(bound) +
			                   " for " + to_string(*e)};
		if (stats.memo_entries * worst_den > worst_num * bound) {
			worst_num = stats.memo_entries;
			worst_den = bound;
		}
	}
	return {true, "100 evaluations, worst ratio " + std::to_string(worst_num) + "/" + std::to_string(worst_den)};
}

std::set<std::pair<TemporalObject, TemporalObject>> binding_set(const Itpg &g, const PathExpr &e) {
	std::set<std::pair<TemporalObject, TemporalObject>> out;
	for (const auto &r : eval_bindings(g, e).rows)
		out.insert({r.from, r.to});
	return out;
}

// 5. Unbounded repetition equals its clamp, and e[n,m] = e[n,n] o e[0,m-n].
Outcome saturation_laws() {
	Rng rng(5);
	for (int i = 0; i < 100; ++i) {
		GraphShape gs;
		gs.max_objects = 4;
		gs.max_omega = 5;
		Itpg g = random_itpg(rng, gs);
		ExprShape shape;
		shape.kind = ExprKind::Full;
		shape.depth = 3;
		PathPtr inner = random_path(rng, shape);
		std::uint64_t n = uniform(rng, 0, 3), m = n + uniform(rng, 0, 4);
		std::uint64_t d = (g.omega().end - g.omega().start + 1) * g.object_count();
		PathPtr open = make_repeat(inner, n, std::nullopt);
		PathPtr clamped = make_repeat(inner, n, n + d * d);
		PathPtr bounded = make_repeat(inner, n, m);
		PathPtr split = make_concat(make_repeat(inner, n, n), make_repeat(inner, 0, m - n));
		if (binding_set(g, *open) != binding_set(g, *clamped))
			return {false, "e[n,_] != clamp for " + to_string(*open)};
		auto lhs = binding_set(g, *bounded);
		// Compose e[n,n] and e[0,m-n] explicitly.
		std::set<std::pair<TemporalObject, TemporalObject>> composed;
		auto first = binding_set(g, *make_repeat(inner, n, n));
		auto second = binding_set(g, *make_repeat(inner, 0, m - n));
		for (const auto &[x, y] : first)
			for (auto it = second.lower_bound({y, {0, 0}}); it != second.end() && it->first == y; ++it)
				composed.insert({x, it->second});
		if (lhs != composed)
			return {false, "e[n,m] != e[n,n] o e[0,m-n] for " + to_string(*bounded)};
		for (int k = 0; k < 50; ++k) {
			BindingTuple t = random_tuple(rng, g);
			if (eval_full(g, *open, t) != eval_full(g, *clamped, t) || eval_full(g, *bounded, t) != eval_full(g, *split, t))
				return {false, "eval_full breaks a law for " + to_string(*bounded) + " at " + describe(t)};
			if (eval_full(g, *bounded, t) != lhs.count({t.from, t.to}))
				return {false, "eval_full and bindings disagree for " + to_string(*bounded)};
		}
	}
	return {true, "100 instances, both laws exact"};
}

// 6. Time-free expressions evaluate slice by slice.
Outcome snapshot_reducibility() {
	Rng rng(6);
	for (int i = 0; i < 100; ++i) {
		Itpg g = random_itpg(rng);
		ExprShape shape;
		shape.kind = ExprKind::TimeFree;
		PathPtr e = random_path(rng, shape);
		Tpg can = canonical_translation(g);
		auto rows = eval_bindings(g, *e).rows;
		for (const auto &r : rows)
			if (r.from.time != r.to.time)
				return {false, "tuple with different times for " + to_string(*e)};
		for (TimePoint t = g.omega().start; t <= g.omega().end; ++t) {
			std::vector<BindingTuple> slice;
			for (const auto &r : rows)
				if (r.from.time == t)
					slice.push_back(r);
			auto snap = relation_tuples(can, snapshot_relation(can, t, *e));
			std::sort(snap.begin(), snap.end());
			if (slice != snap)
				return {false, "slice " + std::to_string(t) + " differs for " + to_string(*e)};
		}
	}
	return {true, "100 expressions, every slice equal"};
}

std::string slurp(const std::filesystem::path &p) {
	std::ifstream in(p, std::ios::binary);
	std::ostringstream out;
	out << in.rdbuf();
	return out.str();
}

std::string bundle_bytes(const std::filesystem::path &dir) {
	std::string out;
	for (const char *f : {"objects.csv", "existence.csv", "properties.csv", "meta.toml"})
		out += slurp(dir / f);
	return out;
}

// 7. Coalescing, bundle and canonical-translation round trips.
Outcome round_trips() {
	Rng rng(7);
	auto tmp = std::filesystem::temp_directory_path() / ("trpq-accept-" + std::to_string(::getpid()));
	for (int i = 0; i < 500; ++i) {
		auto raw = random_intervals(rng, {0, 255}, 6);
		auto once = coalesce(raw);
		if (coalesce(once.items()) != once || !once.is_coalesced())
			return {false, "coalesce not idempotent"};
		GraphShape gs;
		gs.max_omega = 256;
		gs.max_parts = 4;
		Itpg g = random_itpg(rng, gs);
		save_bundle(g, tmp / "a");
		Itpg back = load_bundle(tmp / "a");
		if (!(back == g))
			return {false, "bundle round trip changed graph " + std::to_string(i)};
		save_bundle(back, tmp / "b");
		if (bundle_bytes(tmp / "a") != bundle_bytes(tmp / "b"))
			return {false, "bundle bytes unstable for graph " + std::to_string(i)};
		if (!(compress(canonical_translation(g)) == g))
			return {false, "compress(can(g)) != g for graph " + std::to_string(i)};
	}
	std::filesystem::remove_all(tmp);
	return {true, "500 graphs, 0 failures"};
}

// 8. The running example returns the three-row table.
Outcome running_example() {
	Itpg g = load_bundle(TRPQ_DATA_DIR "/contact_tracing_example");
	auto e = parse_match(slurp(TRPQ_DOCS_DIR "/queries/intro.match"));
	auto rows = eval_bindings(g, *e).rows;
	const auto &topo = g.topology();
	auto id = [&](const char *s) { return topo.require(s); };
	std::vector<BindingTuple> expected{{{id("n3"), 4}, {id("n6"), 9}},
	                                   {{id("n7"), 5}, {id("n6"), 9}},
	                                   {{id("n7"), 6}, {id("n6"), 9}}};
	std::sort(expected.begin(), expected.end());
	if (rows != expected)
		return {false, "binding table has " + std::to_string(rows.size()) + " rows, not the expected three"};
	if (g.existence(id("n2")) != IntervalFamily::single({1, 9}))
		return {false, "existence of n2 is not {[1,9]}"};
	if (property_at(g, id("n2"), "risk", 5) != std::optional<std::string>("high"))
		return {false, "risk of n2 at 5 is not high"};
	return {true, "3 rows match; spot values match"};
}

// 9. Size sweep rows agree across thread counts and grow with scale.
Outcome bench_determinism() {
	BenchConfig config;
	config.sweep = Sweep::Size;
	config.points = {250, 500, 1000, 2000};
	config.queries = {{"Q8", slurp(TRPQ_DOCS_DIR "/queries/Q8.match")}};
	std::vector<std::uint64_t> reference;
	std::ostringstream timing;
	for (unsigned threads : {1u, 2u, 4u}) {
		config.threads = threads;
		auto rows = run_bench(config);
		std::vector<std::uint64_t> counts;
		for (const auto &r : rows)
			counts.push_back(r.rows);
		if (threads == 1) {
			reference = counts;
			for (const auto &r : rows)
				timing << r.point << ":" << r.rows << "/" << static_cast<long>(r.wall_ms) << "ms ";
		} else if (counts != reference) {
			return {false, "row counts differ at " + std::to_string(threads) + " threads"};
		}
	}
	for (std::size_t i = 1; i < reference.size(); ++i)
		if (reference[i] < reference[i - 1])
			return {false, "row count decreases with persons"};
	return {true, "rows/time per persons " + timing.str()};
}

} // namespace

int main() {
	struct Criterion {
		const char *name;
		std::function<Outcome()> run;
	};
	std::vector<Criterion> criteria{
	    {"oracle equivalence", oracle_equivalence},   {"reduction sweep", reduction_sweep},
	    {"bit-predicate law", bit_predicate_law},     {"memo bound", memo_bound},
	    {"saturation and clamp laws", saturation_laws}, {"snapshot reducibility", snapshot_reducibility},
	    {"round trips", round_trips},                 {"running example", running_example},
	    {"bench determinism and monotonicity", bench_determinism},
	};
	int failed = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i) {
		auto start = std::chrono::steady_clock::now();
		Outcome o;
		try {
			o = criteria[i].run();
		} catch (const std::exception &e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
		            o.detail.c_str(), secs);
		std::fflush(stdout);
		failed += o.pass ? 0 : 1;
	}
	return failed == 0 ? 0 : 1;
}
