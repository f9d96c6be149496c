// SPDX-License-Identifier: Apache-2.0
#include "eval_common.hpp"
#include "trpq/errors.hpp"
#include "trpq/oracle.hpp"
#include "trpq/query.hpp"

#include <sstream>
#include <stdexcept>

namespace trpq {

const char *algorithm_name(Algorithm a) {
	switch (a) {
	case Algorithm::Auto:
		return "auto";
	case Algorithm::Pc:
		return "pc";
	case Algorithm::Anoi:
		return "anoi";
	case Algorithm::Full:
		return "full";
	case Algorithm::Oracle:
		return "oracle";
	}
	return "?";
}

Algorithm parse_algorithm(const std::string &name) {
	for (auto a : {Algorithm::Auto, Algorithm::Pc, Algorithm::Anoi, Algorithm::Full, Algorithm::Oracle})
		if (name == algorithm_name(a))
			return a;
	throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string EvalStats::to_string() const {
	std::ostringstream out;
	out << "algorithm=" << algorithm << '\n'
	    << "memo_entries=" << memo_entries << '\n'
	    << "memo_hits=" << memo_hits << '\n'
	    << "memo_misses=" << memo_misses << '\n'
	    << "candidates_examined=" << candidates_examined << '\n'
	    << "wall_ms=" << wall_ms << '\n';
	return out.str();
}

bool algorithm_accepts(Algorithm a, const PathExpr &e) {
	switch (a) {
	case Algorithm::Pc:
		return !contains_repeat(e);
	case Algorithm::Anoi:
		return !contains_path_condition(e) && repeats_on_axes_only(e);
	default:
		return true;
	}
}

Algorithm auto_algorithm(const PathExpr &e) {
	if (algorithm_accepts(Algorithm::Pc, e))
		return Algorithm::Pc;
	if (algorithm_accepts(Algorithm::Anoi, e))
		return Algorithm::Anoi;
	return Algorithm::Full;
}

namespace {

DispatchResult run_oracle(const Itpg &g, const PathExpr &e, const BindingTuple &t) {
	detail::Stopwatch clock;
	DispatchResult r;
	r.stats.algorithm = "oracle";
	r.member = detail::valid_tuple(g, t) && check_membership(canonical_translation(g), e, t);
	r.stats.wall_ms = clock.elapsed_ms();
	return r;
}

} // namespace

DispatchResult eval_dispatch(const Itpg &g, const PathExpr &e, const BindingTuple &t, Algorithm algo,
                             const EvalLimits &limits) {
	if (!algorithm_accepts(algo, e))
		throw FragmentError(std::string("algorithm ") + algorithm_name(algo) + " does not accept " +
		                    fragment_name(classify_fragment(e)) + " expressions");
	Algorithm chosen = algo == Algorithm::Auto ? auto_algorithm(e) : algo;
	DispatchResult r;
	try {
		switch (chosen) {
		case Algorithm::Pc:
			r.member = eval_only_pc(g, e, t, &r.stats, limits);
			break;
		case Algorithm::Anoi:
			r.member = eval_anoi(g, e, t, &r.stats, limits);
			break;
		case Algorithm::Full:
			r.member = eval_full(g, e, t, &r.stats, limits);
			break;
		default:
			return run_oracle(g, e, t);
		}
	} catch (const ResourceLimit &) {
		if (algo != Algorithm::Auto)
			throw;
		return run_oracle(g, e, t);
	}
	return r;
}

} // namespace trpq
