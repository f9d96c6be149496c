// SPDX-License-Identifier: Apache-2.0
#include "trpq/bench.hpp"

#include "trpq/errors.hpp"
#include "trpq/query.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace trpq {

std::vector<BenchQuery> parse_query_corpus(const std::string &content) {
	std::vector<BenchQuery> out;
	std::istringstream in(content);
	std::string line;
	while (std::getline(in, line)) {
		auto start = line.find_first_not_of(" \t");
		if (start == std::string::npos || line[start] == '#')
			continue;
		auto split = line.find_first_of(" \t", start);
		if (split == std::string::npos)
			throw std::invalid_argument("query line without text: " + line);
		auto text = line.find_first_not_of(" \t", split);
		if (text == std::string::npos)
			throw std::invalid_argument("query line without text: " + line);
		out.push_back({line.substr(start, split - start), line.substr(text)});
	}
	return out;
}

PathPtr parse_any(const std::string &text) {
	auto start = text.find_first_not_of(" \t\r\n");
	if (start != std::string::npos && text.compare(start, 5, "MATCH") == 0) {
		try {
			return parse_match(text);
		} catch (const SyntaxError &) {
			try {
				return parse_match_node(text);
			} catch (const SyntaxError &) {
			}
			throw;
		}
	}
	return parse_trpq(text);
}

const char *sweep_name(Sweep s) {
	switch (s) {
	case Sweep::Size:
		return "size";
	case Sweep::Positivity:
		return "positivity";
	case Sweep::Threads:
		return "threads";
	case Sweep::Window:
		return "window";
	}
	return "?";
}

Sweep parse_sweep(const std::string &name) {
	for (auto s : {Sweep::Size, Sweep::Positivity, Sweep::Threads, Sweep::Window})
		if (name == sweep_name(s))
			return s;
	throw std::invalid_argument("unknown sweep '" + name + "'");
}

namespace {

std::string substitute(std::string text, std::uint64_t value) {
	const std::string key = "{W}";
	for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos))
		text.replace(pos, key.size(), std::to_string(value));
	return text;
}

} // namespace

std::vector<BenchRow> run_bench(const BenchConfig &config) {
	std::vector<BenchRow> out;
	for (auto point : config.points) {
		GenParams params = config.base;
		BindingOptions options;
		options.algorithm = config.algorithm;
		options.threads = config.threads;
		switch (config.sweep) {
		case Sweep::Size:
			params.persons = point;
			break;
		case Sweep::Positivity:
			params.positivity_rate = static_cast<double>(point) / 100.0;
			break;
		case Sweep::Threads:
			options.threads = static_cast<unsigned>(point);
			break;
		case Sweep::Window:
			break;
		}
		Itpg g = gen_contact_graph(params);
		for (const auto &q : config.queries) {
			std::string text = config.sweep == Sweep::Window ? substitute(q.text, point) : q.text;
			PathPtr e = parse_any(text);
			auto result = eval_bindings(g, *e, options);
			out.push_back({sweep_name(config.sweep), point, q.id, result.interval_ms, result.total_ms,
			               result.rows.size()});
		}
	}
	return out;
}

std::string bench_csv(const std::vector<BenchRow> &rows) {
	std::ostringstream out;
	out << "sweep,point,query,interval_ms,wall_ms,rows\n";
	for (const auto &r : rows) {
		char buf[64];
		out << r.sweep << ',' << r.point << ',' << r.query << ',';
		std::snprintf(buf, sizeof buf, "%.3f,%.3f", r.interval_ms, r.wall_ms);
		out << buf << ',' << r.rows << '\n';
	}
	return out.str();
}

} // namespace trpq
