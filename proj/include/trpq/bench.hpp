// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trpq/eval.hpp"
#include "trpq/io.hpp"

#include <string>
#include <vector>

namespace trpq {

struct BenchQuery {
	std::string id;
	/// MATCH or formal syntax; `{W}` is replaced by the sweep value in window sweeps.
	std::string text;
};

/// One query per line: `<id> <query text>`. Blank lines and `#` comments are skipped.
std::vector<BenchQuery> parse_query_corpus(const std::string &content);
/// MATCH text goes to parse_match, anything else to parse_trpq.
PathPtr parse_any(const std::string &text);

enum class Sweep { Size, Positivity, Threads, Window };

const char *sweep_name(Sweep s);
/// Throws std::invalid_argument for unknown names.
Sweep parse_sweep(const std::string &name);

struct BenchConfig {
	Sweep sweep = Sweep::Size;
	GenParams base;
	/// Persons for size, percent for positivity, thread count for threads,
	/// window length for window sweeps.
	std::vector<std::uint64_t> points;
	std::vector<BenchQuery> queries;
	unsigned threads = 1;
	Algorithm algorithm = Algorithm::Auto;
};

struct BenchRow {
	std::string sweep;
	std::uint64_t point = 0;
	std::string query;
	double interval_ms = 0;
	double wall_ms = 0;
	std::uint64_t rows = 0;
};

std::vector<BenchRow> run_bench(const BenchConfig &config);
/// Header `sweep,point,query,interval_ms,wall_ms,rows`.
std::string bench_csv(const std::vector<BenchRow> &rows);

} // namespace trpq
