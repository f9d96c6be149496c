// SPDX-License-Identifier: Apache-2.0
#include "eval_common.hpp"
#include "trpq/errors.hpp"
#include "trpq/image.hpp"
#include "trpq/oracle.hpp"
#include "trpq/query.hpp"

#include <algorithm>
#include <thread>

namespace trpq {

namespace {

struct Chunk {
	std::vector<BindingTuple> rows;
	double image_ms = 0;
	std::exception_ptr error;
};

bool keep_row(const Itpg &g, const PathExpr &e, const BindingTuple &row, Algorithm algo, const EvalLimits &limits,
              EvalStats &stats) {
	EvalStats s;
	bool member = true;
	switch (algo) {
	case Algorithm::Pc:
		member = eval_only_pc(g, e, row, &s, limits);
		break;
	case Algorithm::Anoi:
		member = eval_anoi(g, e, row, &s, limits);
		break;
	case Algorithm::Full:
		member = eval_full(g, e, row, &s, limits);
		break;
	default:
		return true;
	}
	stats.memo_entries += s.memo_entries;
	stats.memo_hits += s.memo_hits;
	stats.memo_misses += s.memo_misses;
	stats.candidates_examined += s.candidates_examined;
	return member;
}

void run_chunk(const Itpg &g, const PathExpr &e, const std::vector<TemporalObject> &starts, std::size_t begin,
               std::size_t end, const BindingOptions &options, Chunk &out, EvalStats &stats) {
	try {
		ImageEngine engine(g);
		for (std::size_t i = begin; i < end; ++i) {
			const auto &x = starts[i];
			detail::Stopwatch clock;
			TemporalSet reached = engine.forward(e, TemporalSet::point(x.object, x.time));
			out.image_ms += clock.elapsed_ms();
			for (const auto &[o, fam] : reached.parts()) {
				for (const auto &iv : fam.items()) {
					for (TimePoint t = iv.start;; ++t) {
						BindingTuple row{x, {o, t}};
						if (keep_row(g, e, row, options.algorithm, options.limits, stats))
							out.rows.push_back(row);
						if (out.rows.size() > options.max_rows)
							throw ResourceLimit("binding count exceeds the row budget");
						if (t == iv.end)
							break;
					}
				}
			}
		}
	} catch (...) {
		out.error = std::current_exception();
	}
}

BindingResult oracle_bindings(const Itpg &g, const PathExpr &e, const BindingOptions &options) {
	detail::Stopwatch clock;
	BindingResult result;
	result.stats.algorithm = "oracle";
	Tpg can = canonical_translation(g, options.expansion_cap);
	Relation r = eval_relation(can, e);
	if (r.pair_count() > options.max_rows)
		throw ResourceLimit("binding count exceeds the row budget");
	result.rows = relation_tuples(can, r);
	std::sort(result.rows.begin(), result.rows.end());
	result.total_ms = clock.elapsed_ms();
	result.stats.wall_ms = result.total_ms;
	return result;
}

BindingResult interval_bindings(const Itpg &g, const PathExpr &e, const BindingOptions &options) {
	detail::Stopwatch clock;
	BindingResult result;
	result.stats.algorithm = options.algorithm == Algorithm::Auto ? "interval" : algorithm_name(options.algorithm);

	detail::Stopwatch domain_clock;
	TemporalSet domain = ImageEngine(g).backward(e, TemporalSet::full(g));
	double domain_ms = domain_clock.elapsed_ms();
	if (domain.point_count() > options.max_rows)
		throw ResourceLimit("binding count exceeds the row budget");

	std::vector<TemporalObject> starts;
	for (const auto &[o, fam] : domain.parts())
		for (const auto &iv : fam.items())
			for (TimePoint t = iv.start;; ++t) {
				starts.push_back({o, t});
				if (t == iv.end)
					break;
			}

	unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(starts.size())));
	std::vector<Chunk> chunks(threads);
	std::vector<EvalStats> stats(threads);
	std::size_t per = threads ? (starts.size() + threads - 1) / threads : 0;
	if (threads == 1) {
		run_chunk(g, e, starts, 0, starts.size(), options, chunks[0], stats[0]);
	} else {
		std::vector<std::thread> pool;
		for (unsigned i = 0; i < threads; ++i) {
			std::size_t begin = std::min(starts.size(), i * per);
			std::size_t end = std::min(starts.size(), begin + per);
			pool.emplace_back(run_chunk, std::cref(g), std::cref(e), std::cref(starts), begin, end, std::cref(options),
			                  std::ref(chunks[i]), std::ref(stats[i]));
		}
		for (auto &th : pool)
			th.join();
	}

	double image_ms = 0;
	for (unsigned i = 0; i < threads; ++i) {
		if (chunks[i].error)
			std::rethrow_exception(chunks[i].error);
		image_ms = std::max(image_ms, chunks[i].image_ms);
		result.stats.memo_entries += stats[i].memo_entries;
		result.stats.memo_hits += stats[i].memo_hits;
		result.stats.memo_misses += stats[i].memo_misses;
		result.stats.candidates_examined += stats[i].candidates_examined;
	}
	std::size_t total = 0;
	for (const auto &c : chunks)
		total += c.rows.size();
	if (total > options.max_rows)
		throw ResourceLimit("binding count exceeds the row budget");
	result.rows.reserve(total);
	for (auto &c : chunks)
		result.rows.insert(result.rows.end(), c.rows.begin(), c.rows.end());
	std::sort(result.rows.begin(), result.rows.end());
	result.interval_ms = domain_ms + image_ms;
	result.total_ms = clock.elapsed_ms();
	result.stats.wall_ms = result.total_ms;
	return result;
}

} // namespace

BindingResult eval_bindings(const Itpg &g, const PathExpr &e, const BindingOptions &options) {
	if (!algorithm_accepts(options.algorithm, e))
		throw FragmentError(std::string("algorithm ") + algorithm_name(options.algorithm) + " does not accept " +
		                    fragment_name(classify_fragment(e)) + " expressions");
	if (options.algorithm == Algorithm::Oracle)
		return oracle_bindings(g, e, options);
	try {
		return interval_bindings(g, e, options);
	} catch (const ResourceLimit &) {
		if (options.algorithm != Algorithm::Auto)
			throw;
	}
	return oracle_bindings(g, e, options);
}

} // namespace trpq
