// SPDX-License-Identifier: Apache-2.0
#include "trpq/errors.hpp"
#include "trpq/io.hpp"
#include "trpq/query.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

namespace trpq {

namespace fs = std::filesystem;

namespace {

constexpr const char *kObjectsHeader = "id,kind,label,src,dst";
constexpr const char *kExistenceHeader = "id,start,end";
constexpr const char *kPropertiesHeader = "id,prop,value,start,end";

std::vector<std::string> split(const std::string &line, char sep) {
	std::vector<std::string> out;
	std::string cur;
	for (char c : line) {
		if (c == sep) {
			out.push_back(cur);
			cur.clear();
		} else {
			cur.push_back(c);
		}
	}
	out.push_back(cur);
	return out;
}

class CsvReader {
public:
	CsvReader(const fs::path &dir, std::string name, const char *header, std::size_t fields)
	    : name_(std::move(name)), fields_(fields), in_(dir / name_, std::ios::binary) {
		if (!in_)
			throw FormatError(name_, 0, "cannot open file");
		std::string line;
		if (!std::getline(in_, line))
			throw FormatError(name_, 1, "missing header row");
		line_ = 1;
		if (line != header)
			throw FormatError(name_, 1, std::string("expected header '") + header + "'");
	}

	bool next(std::vector<std::string> &row) {
		std::string line;
		while (std::getline(in_, line)) {
			++line_;
			if (line.empty())
				continue;
			row = split(line, ',');
			if (row.size() != fields_)
				fail("expected " + std::to_string(fields_) + " fields, got " + std::to_string(row.size()));
			return true;
		}
		return false;
	}

	[[noreturn]] void fail(const std::string &detail) const { throw FormatError(name_, line_, detail); }

	std::string token(const std::string &s, bool allow_empty = false) const {
		if (s.empty() ? !allow_empty : !valid_token(s))
			fail("invalid value '" + s + "'");
		return s;
	}

	TimePoint number(const std::string &s) const {
		TimePoint v = 0;
		auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
		if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
			fail("invalid time point '" + s + "'");
		return v;
	}

	Interval interval(const std::string &a, const std::string &b) const {
		Interval i{number(a), number(b)};
		if (i.start > i.end)
			fail("interval start exceeds end");
		return i;
	}

	std::size_t line() const { return line_; }

private:
	std::string name_;
	std::size_t fields_;
	std::ifstream in_;
	std::size_t line_ = 0;
};

std::map<std::string, std::string> read_meta(const fs::path &dir) {
	std::ifstream in(dir / "meta.toml", std::ios::binary);
	if (!in)
		throw FormatError("meta.toml", 0, "cannot open file");
	std::map<std::string, std::string> out;
	std::string line;
	std::size_t n = 0;
	while (std::getline(in, line)) {
		++n;
		auto trim = [](std::string s) {
			auto b = s.find_first_not_of(" \t");
			auto e = s.find_last_not_of(" \t");
			return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
		};
		line = trim(line);
		if (line.empty() || line[0] == '#')
			continue;
		auto eq = line.find('=');
		if (eq == std::string::npos)
			throw FormatError("meta.toml", n, "expected key=value");
		out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
	}
	return out;
}

TimePoint meta_number(const std::map<std::string, std::string> &meta, const std::string &key) {
	auto it = meta.find(key);
	if (it == meta.end())
		throw FormatError("meta.toml", 0, "missing key " + key);
	TimePoint v = 0;
	const auto &s = it->second;
	auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
		throw FormatError("meta.toml", 0, "invalid value for " + key);
	return v;
}

void write_file(const fs::path &path, const std::string &content) {
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out)
		throw IoError("cannot write " + path.string());
	out << content;
	if (!out)
		throw IoError("write failed for " + path.string());
}

void require_token(const std::string &s, const std::string &what) {
	if (!valid_token(s))
		throw IoError(what + " '" + s + "' is outside the CSV value alphabet");
}

} // namespace

bool valid_token(const std::string &s) {
	if (s.empty())
		return false;
	return std::all_of(s.begin(), s.end(), [](char c) {
		return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
		       c == '-';
	});
}

Itpg load_bundle(const fs::path &dir) {
	if (!fs::is_directory(dir))
		throw FormatError(dir.string(), 0, "bundle directory not found");
	auto meta = read_meta(dir);
	if (meta["format_version"] != "1")
		throw FormatError("meta.toml", 0, "unsupported format_version '" + meta["format_version"] + "'");
	Interval omega{meta_number(meta, "omega_start"), meta_number(meta, "omega_end")};
	if (omega.start > omega.end)
		throw FormatError("meta.toml", 0, "omega_start exceeds omega_end");

	ItpgBuilder b;
	b.omega(omega);
	std::map<std::string, ObjectKind> kinds;
	std::vector<std::string> row;
	{
		CsvReader r(dir, "objects.csv", kObjectsHeader, 5);
		std::vector<std::tuple<std::string, std::string, std::string, std::string, std::size_t>> edges;
		while (r.next(row)) {
			std::string id = r.token(row[0]);
			if (kinds.count(id))
				r.fail("duplicate id '" + id + "'");
			std::string label = r.token(row[2]);
			if (row[1] == "node") {
				if (!row[3].empty() || !row[4].empty())
					r.fail("node '" + id + "' has endpoints");
				kinds[id] = ObjectKind::Node;
				b.node(id, label);
			} else if (row[1] == "edge") {
				kinds[id] = ObjectKind::Edge;
				edges.emplace_back(id, label, r.token(row[3]), r.token(row[4]), r.line());
			} else {
				r.fail("kind must be node or edge");
			}
		}
		for (const auto &[id, label, src, dst, line] : edges) {
			for (const auto &end : {src, dst}) {
				auto it = kinds.find(end);
				if (it == kinds.end() || it->second != ObjectKind::Node)
					throw FormatError("objects.csv", line, "edge '" + id + "' endpoint '" + end + "' is not a node");
			}
			b.edge(id, label, src, dst);
		}
	}
	{
		CsvReader r(dir, "existence.csv", kExistenceHeader, 3);
		while (r.next(row)) {
			if (!kinds.count(row[0]))
				r.fail("unknown id '" + row[0] + "'");
			b.exists(row[0], r.interval(row[1], row[2]));
		}
	}
	{
		CsvReader r(dir, "properties.csv", kPropertiesHeader, 5);
		while (r.next(row)) {
			if (!kinds.count(row[0]))
				r.fail("unknown id '" + row[0] + "'");
			b.property(row[0], r.token(row[1]), r.token(row[2]), r.interval(row[3], row[4]));
		}
	}
	Itpg g = [&] {
		try {
			return b.build();
		} catch (const ConflictingValue &e) {
			throw FormatError("properties.csv", 0, e.what());
		}
	}();
	auto report = validate_itpg(g);
	if (!report.ok())
		throw ValidationError(report);
	return g;
}

void save_bundle(const Itpg &g, const fs::path &dir) {
	const auto &topo = g.topology();
	std::ostringstream objects, existence, properties, meta;
	objects << kObjectsHeader << '\n';
	existence << kExistenceHeader << '\n';
	properties << kPropertiesHeader << '\n';
	for (ObjectIndex o = 0; o < topo.size(); ++o) {
		const auto &info = topo.at(o);
		require_token(info.id, "id");
		require_token(info.label, "label");
		if (info.kind == ObjectKind::Node)
			objects << info.id << ",node," << info.label << ",,\n";
		else
			objects << info.id << ",edge," << info.label << ',' << topo.at(info.src).id << ','
			        << topo.at(info.dst).id << '\n';
		const IntervalFamily alive = coalesce(g.existence(o).items());
		for (const auto &iv : alive.items())
			existence << info.id << ',' << iv.start << ',' << iv.end << '\n';
		std::vector<std::tuple<TimePoint, std::string, std::string, TimePoint>> rows;
		for (const auto &[prop, fam] : g.properties(o)) {
			require_token(prop, "property name");
			for (const auto &vi : fam.items()) {
				require_token(vi.value, "property value");
				rows.emplace_back(vi.interval.start, prop, vi.value, vi.interval.end);
			}
		}
		std::sort(rows.begin(), rows.end());
		for (const auto &[start, prop, value, end] : rows)
			properties << info.id << ',' << prop << ',' << value << ',' << start << ',' << end << '\n';
	}
	meta << "format_version=1\n"
	     << "omega_start=" << g.omega().start << '\n'
	     << "omega_end=" << g.omega().end << '\n';

	std::error_code ec;
	fs::create_directories(dir, ec);
	if (ec)
		throw IoError("cannot create " + dir.string() + ": " + ec.message());
	write_file(dir / "objects.csv", objects.str());
	write_file(dir / "existence.csv", existence.str());
	write_file(dir / "properties.csv", properties.str());
	write_file(dir / "meta.toml", meta.str());
}

void save_instance(const ReductionInstance &inst, const fs::path &dir) {
	save_bundle(inst.graph, dir);
	const auto &topo = inst.graph.topology();
	std::ostringstream out;
	out << "expr=" << pretty_print(*inst.expr) << '\n'
	    << "tuple=" << topo.at(inst.tuple.from.object).id << ',' << inst.tuple.from.time << ','
	    << topo.at(inst.tuple.to.object).id << ',' << inst.tuple.to.time << '\n'
	    << "expected=" << (inst.expected ? "true" : "false") << '\n';
	write_file(dir / "instance.txt", out.str());
}

ReductionInstance load_instance(const fs::path &dir) {
	Itpg g = load_bundle(dir);
	std::ifstream in(dir / "instance.txt", std::ios::binary);
	if (!in)
		throw FormatError("instance.txt", 0, "cannot open file");
	std::map<std::string, std::string> kv;
	std::string line;
	std::size_t n = 0;
	while (std::getline(in, line)) {
		++n;
		if (line.empty())
			continue;
		auto eq = line.find('=');
		if (eq == std::string::npos)
			throw FormatError("instance.txt", n, "expected key=value");
		kv[line.substr(0, eq)] = line.substr(eq + 1);
	}
	for (const char *key : {"expr", "tuple", "expected"})
		if (!kv.count(key))
			throw FormatError("instance.txt", 0, std::string("missing key ") + key);
	auto parts = split(kv["tuple"], ',');
	if (parts.size() != 4)
		throw FormatError("instance.txt", 0, "tuple needs four fields");
	auto time = [](const std::string &s) {
		TimePoint v = 0;
		auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
		if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
			throw FormatError("instance.txt", 0, "invalid time point '" + s + "'");
		return v;
	};
	auto object = [&](const std::string &id) {
		auto o = g.topology().find(id);
		if (!o)
			throw FormatError("instance.txt", 0, "unknown id '" + id + "'");
		return *o;
	};
	BindingTuple t{{object(parts[0]), time(parts[1])}, {object(parts[2]), time(parts[3])}};
	if (kv["expected"] != "true" && kv["expected"] != "false")
		throw FormatError("instance.txt", 0, "expected must be true or false");
	return {g, parse_trpq(kv["expr"]), t, kv["expected"] == "true"};
}

} // namespace trpq
