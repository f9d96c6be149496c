// SPDX-License-Identifier: Apache-2.0
#include "trpq/bench.hpp"
#include "trpq/errors.hpp"
#include "trpq/eval.hpp"
#include "trpq/io.hpp"
#include "trpq/query.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace trpq;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kValidation = 3, kFragment = 4, kResource = 5 };

PathPtr parse_query(const std::string &text, const std::string &syntax) {
	if (syntax == "formal")
		return parse_trpq(text);
	if (syntax == "match")
		return parse_match(text);
	return parse_any(text);
}

std::string read_text(const std::string &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw IoError("cannot read " + path);
	std::ostringstream out;
	out << in.rdbuf();
	return out.str();
}

BindingTuple parse_tuple(const Itpg &g, const std::string &text) {
	std::vector<std::string> parts;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
		parts.push_back(item);
	if (parts.size() != 4)
		throw std::invalid_argument("--tuple expects o1,t1,o2,t2");
	auto object = [&](const std::string &id) {
		auto o = g.topology().find(id);
		if (!o)
			throw std::invalid_argument("unknown object id '" + id + "'");
		return *o;
	};
	auto time = [](const std::string &s) {
		TimePoint v = 0;
		auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
		if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
			throw std::invalid_argument("invalid time point '" + s + "'");
		return v;
	};
	return {{object(parts[0]), time(parts[1])}, {object(parts[2]), time(parts[3])}};
}

void print_rows(const Itpg &g, const std::vector<BindingTuple> &rows, const std::string &format) {
	const auto &topo = g.topology();
	std::vector<std::array<std::string, 4>> cells;
	cells.push_back({"x", "x_time", "y", "y_time"});
	for (const auto &r : rows)
		cells.push_back({topo.at(r.from.object).id, std::to_string(r.from.time), topo.at(r.to.object).id,
		                 std::to_string(r.to.time)});
	std::ostringstream out;
	if (format == "table") {
		std::array<std::size_t, 4> width{};
		for (const auto &c : cells)
			for (std::size_t i = 0; i < 4; ++i)
				width[i] = std::max(width[i], c[i].size());
		for (const auto &c : cells) {
			for (std::size_t i = 0; i < 4; ++i) {
				out << c[i];
				if (i < 3)
					out << std::string(width[i] - c[i].size() + 2, ' ');
			}
			out << '\n';
		}
	} else {
		for (const auto &c : cells)
			out << c[0] << ',' << c[1] << ',' << c[2] << ',' << c[3] << '\n';
	}
	std::cout << out.str();
}

std::vector<std::uint64_t> parse_points(const std::string &text) {
	std::vector<std::uint64_t> out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
		out.push_back(std::stoull(item));
	return out;
}

template <class Fn> int guarded(Fn &&fn) {
	try {
		return fn();
	} catch (const SyntaxError &e) {
		std::cerr << "syntax error at " << e.position() << ": " << e.what() << '\n';
		return kParse;
	} catch (const UnsupportedFeature &e) {
		std::cerr << "unsupported: " << e.what() << '\n';
		return kParse;
	} catch (const std::invalid_argument &e) {
		std::cerr << "error: " << e.what() << '\n';
		return kParse;
	} catch (const ValidationError &e) {
		std::cerr << "validation failed:\n" << e.report().to_string();
		return kValidation;
	} catch (const FormatError &e) {
		std::cerr << "format error: " << e.what() << '\n';
		return kValidation;
	} catch (const FragmentError &e) {
		std::cerr << "fragment error: " << e.what() << '\n';
		return kFragment;
	} catch (const ResourceLimit &e) {
		std::cerr << "resource limit: " << e.what() << '\n';
		return kResource;
	} catch (const DomainTooLarge &e) {
		std::cerr << "domain too large: " << e.what() << '\n';
		return kResource;
	} catch (const SizeLimit &e) {
		std::cerr << "size limit: " << e.what() << '\n';
		return kResource;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << '\n';
		return kFailure;
	}
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app{"Temporal regular path queries over interval-timestamped property graphs"};
	app.require_subcommand(1);
	int code = kOk;

	auto *validate = app.add_subcommand("validate", "Load a bundle and report validation problems");
	std::string bundle;
	validate->add_option("bundle", bundle, "Bundle directory")->required();
	validate->callback([&] {
		code = guarded([&] {
			Itpg g = load_bundle(bundle);
			std::cout << "ok: " << g.topology().node_count() << " nodes, " << g.topology().edge_count()
			          << " edges, omega=[" << g.omega().start << ',' << g.omega().end << "]\n";
			return kOk;
		});
	});

	auto *query = app.add_subcommand("query", "Evaluate a query on a bundle");
	std::string query_text, query_file, syntax = "auto", algo = "auto", tuple, format = "csv";
	unsigned threads = 1;
	bool stats = false;
	query->add_option("bundle", bundle, "Bundle directory")->required();
	query->add_option("query", query_text, "Query text");
	query->add_option("--file", query_file, "Read the query from a file");
	query->add_option("--syntax", syntax, "formal, match or auto")->check(CLI::IsMember({"formal", "match", "auto"}));
	query->add_option("--algo", algo, "auto, pc, anoi, full or oracle")
	    ->check(CLI::IsMember({"auto", "pc", "anoi", "full", "oracle"}));
	query->add_option("--tuple", tuple, "Check one tuple o1,t1,o2,t2 instead of enumerating bindings");
	query->add_option("--threads", threads, "Worker threads for binding enumeration")->check(CLI::PositiveNumber);
	query->add_option("--format", format, "csv or table")->check(CLI::IsMember({"csv", "table"}));
	query->add_flag("--stats", stats, "Print evaluation statistics to stderr");
	query->callback([&] {
		code = guarded([&] {
			if (query_text.empty() == query_file.empty())
				throw std::invalid_argument("give exactly one of a query argument or --file");
			PathPtr e = parse_query(query_file.empty() ? query_text : read_text(query_file), syntax);
			Itpg g = load_bundle(bundle);
			Algorithm a = parse_algorithm(algo);
			if (!tuple.empty()) {
				auto r = eval_dispatch(g, *e, parse_tuple(g, tuple), a);
				std::cout << (r.member ? "true" : "false") << '\n';
				if (stats)
					std::cerr << r.stats.to_string();
				return kOk;
			}
			BindingOptions options;
			options.algorithm = a;
			options.threads = threads;
			auto result = eval_bindings(g, *e, options);
			print_rows(g, result.rows, format);
			if (stats)
				std::cerr << "algorithm=" << result.stats.algorithm << '\n'
				          << "interval_ms=" << result.interval_ms << '\n'
				          << "total_ms=" << result.total_ms << '\n'
				          << "rows=" << result.rows.size() << '\n';
			return kOk;
		});
	});

	auto *gen = app.add_subcommand("gen", "Generate a synthetic contact-tracing bundle");
	GenParams params;
	std::string out_dir;
	gen->add_option("--persons", params.persons)->capture_default_str()->check(CLI::PositiveNumber);
	gen->add_option("--rooms", params.rooms)->capture_default_str()->check(CLI::PositiveNumber);
	gen->add_option("--timepoints", params.timepoints)->capture_default_str()->check(CLI::PositiveNumber);
	gen->add_option("--positivity", params.positivity_rate)->capture_default_str()->check(CLI::Range(0.0, 1.0));
	gen->add_option("--highrisk", params.highrisk_rate)->capture_default_str()->check(CLI::Range(0.0, 1.0));
	gen->add_option("--meet-locations", params.meet_locations)->capture_default_str();
	gen->add_option("--seed", params.seed)->capture_default_str();
	gen->add_option("--out", out_dir, "Output bundle directory")->required();
	gen->callback([&] {
		code = guarded([&] {
			save_bundle(gen_contact_graph(params), out_dir);
			return kOk;
		});
	});

	auto *expand = app.add_subcommand("expand", "Print the point-based expansion of a bundle");
	std::size_t cap = kDefaultExpansionCap;
	expand->add_option("bundle", bundle, "Bundle directory")->required();
	expand->add_option("--cap", cap, "Largest number of time points to expand")->capture_default_str();
	expand->callback([&] {
		code = guarded([&] {
			Itpg g = load_bundle(bundle);
			Tpg t = canonical_translation(g, cap);
			std::ostringstream out;
			out << "id,time,prop,value\n";
			for (ObjectIndex o = 0; o < t.object_count(); ++o) {
				const auto &id = t.topology().at(o).id;
				for (std::size_t k = 0; k < t.points(); ++k) {
					TimePoint time = t.omega_start() + k;
					if (!t.exists(o, time))
						continue;
					out << id << ',' << time << ",,\n";
					for (const auto &[prop, values] : t.properties(o))
						if (values[k])
							out << id << ',' << time << ',' << prop << ',' << *values[k] << '\n';
				}
			}
			std::cout << out.str();
			return kOk;
		});
	});

	auto *classify = app.add_subcommand("classify", "Print the fragment of a query");
	classify->add_option("query", query_text, "Query text")->required();
	classify->add_option("--syntax", syntax, "formal, match or auto")
	    ->check(CLI::IsMember({"formal", "match", "auto"}));
	classify->callback([&] {
		code = guarded([&] {
			std::cout << fragment_name(classify_fragment(*parse_query(query_text, syntax))) << '\n';
			return kOk;
		});
	});

	auto *bench = app.add_subcommand("bench", "Run a generator sweep and report timings as CSV");
	std::string sweep = "size", points = "250,500,1000,2000", corpus;
	bench->add_option("--sweep", sweep, "size, positivity, threads or window")
	    ->check(CLI::IsMember({"size", "positivity", "threads", "window"}));
	bench->add_option("--points", points, "Comma-separated sweep values")->capture_default_str();
	bench->add_option("--queries", corpus, "Query corpus file: one `<id> <query>` per line")->required();
	bench->add_option("--threads", threads)->check(CLI::PositiveNumber);
	bench->add_option("--algo", algo)->check(CLI::IsMember({"auto", "pc", "anoi", "full", "oracle"}));
	bench->add_option("--persons", params.persons)->capture_default_str();
	bench->add_option("--rooms", params.rooms)->capture_default_str();
	bench->add_option("--timepoints", params.timepoints)->capture_default_str();
	bench->add_option("--positivity", params.positivity_rate)->capture_default_str();
	bench->add_option("--highrisk", params.highrisk_rate)->capture_default_str();
	bench->add_option("--meet-locations", params.meet_locations)->capture_default_str();
	bench->add_option("--seed", params.seed)->capture_default_str();
	bench->callback([&] {
		code = guarded([&] {
			BenchConfig config;
			config.sweep = parse_sweep(sweep);
			config.base = params;
			config.points = parse_points(points);
			config.queries = parse_query_corpus(read_text(corpus));
			config.threads = threads;
			config.algorithm = parse_algorithm(algo);
			std::cout << bench_csv(run_bench(config));
			return kOk;
		});
	});

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return kParse;
	}
	return code;
}
