// SPDX-License-Identifier: Apache-2.0
// Desugaring of the MATCH surface syntax into path expressions.
#include "trpq/errors.hpp"
#include "trpq/query.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

namespace trpq {

namespace {

struct Tok {
	enum class Kind { Ident, Number, String, Punct, End };
	Kind kind;
	std::string text;
	std::size_t pos;
};

std::vector<Tok> lex(std::string_view s) {
	std::vector<Tok> out;
	std::size_t i = 0;
	while (i < s.size()) {
		char c = s[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			++i;
			continue;
		}
		std::size_t start = i;
		if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
				++i;
			out.push_back({Tok::Kind::Ident, std::string(s.substr(start, i - start)), start});
		} else if (std::isdigit(static_cast<unsigned char>(c))) {
			while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
				++i;
			out.push_back({Tok::Kind::Number, std::string(s.substr(start, i - start)), start});
		} else if (c == '\'' || c == '"') {
			++i;
			while (i < s.size() && s[i] != c)
				++i;
			if (i == s.size())
				throw SyntaxError(start, {std::string(1, c)}, "unterminated string at position " + std::to_string(start));
			out.push_back({Tok::Kind::String, std::string(s.substr(start + 1, i - start - 1)), start});
			++i;
		} else if (std::string_view("()[]{}:,=<-/|*>").find(c) != std::string_view::npos) {
			out.push_back({Tok::Kind::Punct, std::string(1, c), start});
			++i;
		} else {
			throw SyntaxError(start, {}, std::string("unexpected character '") + c + "' at position " + std::to_string(start));
		}
	}
	out.push_back({Tok::Kind::End, "", s.size()});
	return out;
}

std::string upper(std::string s) {
	std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
	return s;
}

std::uint64_t to_number(const std::string &digits, std::size_t pos) {
	std::uint64_t v = 0;
	if (digits.empty())
		throw SyntaxError(pos, {"number"}, "expected a number at position " + std::to_string(pos));
	for (char c : digits) {
		if (!std::isdigit(static_cast<unsigned char>(c)))
			throw SyntaxError(pos, {"number"}, "expected a number at position " + std::to_string(pos));
		std::uint64_t d = static_cast<std::uint64_t>(c - '0');
		if (v > (kMaxBound - d) / 10)
			throw SyntaxError(pos, {"number <= 9223372036854775807"}, "number out of range at position " + std::to_string(pos));
		v = v * 10 + d;
	}
	return v;
}

/// One desugared segment plus what it tells us about existence at its end.
struct Segment {
	PathPtr expr;
	enum class Shape { EdgeLabel, Structural, Other } shape;
};

class MatchParser {
public:
	explicit MatchParser(std::string_view text) : toks_(lex(text)) {}

	PathPtr parse_path_pattern() {
		expect_keyword("MATCH");
		auto lhs = node_pattern(false);
		if (!at('-')) {
			reject_unsupported();
			fail({"'-/'"}, "pattern needs two endpoints");
		}
		++pos_;
		expect('/');
		auto segs = sequence(true);
		expect('/');
		expect('-');
		bool implied = segs.size() >= 2 && segs[segs.size() - 2].shape == Segment::Shape::EdgeLabel &&
		               segs.back().shape == Segment::Shape::Structural;
		auto rhs = node_pattern(implied);
		finish();
		PathPtr e = lhs;
		for (const auto &s : segs)
			e = make_concat(e, s.expr);
		return make_concat(e, rhs);
	}

	PathPtr parse_node_only() {
		expect_keyword("MATCH");
		auto e = node_pattern(false);
		if (at('-'))
			fail({"end of input"}, "expected a single node pattern");
		finish();
		return e;
	}

private:
	const Tok &peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
	bool at(char c, std::size_t ahead = 0) const {
		const auto &t = peek(ahead);
		return t.kind == Tok::Kind::Punct && t.text[0] == c;
	}
	bool at_word(const char *w) const { return peek().kind == Tok::Kind::Ident && upper(peek().text) == w; }

	[[noreturn]] void fail(std::vector<std::string> expected, const std::string &what) const {
		const auto &t = peek();
		std::string found = t.kind == Tok::Kind::End ? "end of input" : "'" + t.text + "'";
		throw SyntaxError(t.pos, std::move(expected),
		                  what + " at position " + std::to_string(t.pos) + " (found " + found + ")");
	}

	void expect(char c) {
		if (!at(c))
			fail({std::string("'") + c + "'"}, std::string("expected '") + c + "'");
		++pos_;
	}

	void expect_keyword(const char *w) {
		if (!at_word(w))
			fail({w}, std::string("expected ") + w);
		++pos_;
	}

	void reject_unsupported() const {
		static const char *clauses[] = {"WHERE", "RETURN", "WITH", "OPTIONAL", "UNION", "ORDER", "LIMIT"};
		if (peek().kind == Tok::Kind::Ident)
			for (const char *c : clauses)
				if (upper(peek().text) == c)
					throw UnsupportedFeature(std::string(c) + " clauses are not supported");
		if (at(',') || at('<') || at('>'))
			throw UnsupportedFeature("only a single left-to-right path pattern is supported");
	}

	void finish() {
		if (at_word("ON")) {
			++pos_;
			if (peek().kind != Tok::Kind::Ident)
				fail({"graph name"}, "expected a graph name");
			++pos_;
		}
		if (peek().kind != Tok::Kind::End) {
			reject_unsupported();
			fail({"end of input"}, "unexpected trailing input");
		}
	}

	std::string value() {
		const auto &t = peek();
		if (t.kind == Tok::Kind::Ident || t.kind == Tok::Kind::String || t.kind == Tok::Kind::Number) {
			++pos_;
			return t.text;
		}
		fail({"value"}, "expected a value");
	}

	PathPtr node_pattern(bool existence_implied) {
		expect('(');
		if (peek().kind == Tok::Kind::Ident)
			++pos_;
		TestPtr t = make_is_node();
		if (at(':')) {
			++pos_;
			if (peek().kind != Tok::Kind::Ident)
				fail({"label"}, "expected a label");
			t = make_and(t, make_label(peek().text));
			++pos_;
			if (at(':') || at('|'))
				throw UnsupportedFeature("multiple labels per node pattern are not supported");
		}
		bool has_property = false;
		if (at('{')) {
			++pos_;
			for (;;) {
				if (peek().kind != Tok::Kind::Ident)
					fail({"property name", "time"}, "expected a condition");
				std::string name = peek().text;
				std::size_t name_pos = peek().pos;
				++pos_;
				if (name == "time") {
					expect('<');
					auto v = value();
					t = make_and(t, make_time_less(to_number(v, name_pos)));
				} else {
					if (at('<') || at('>'))
						throw UnsupportedFeature("only equality conditions on properties are supported");
					expect('=');
					t = make_and(t, make_prop(name, value()));
					has_property = true;
				}
				if (at(',')) {
					++pos_;
					continue;
				}
				expect('}');
				break;
			}
		}
		expect(')');
		// A property test already forces existence; so does arriving over an existing edge.
		if (!has_property && !existence_implied)
			t = make_and(t, make_exists());
		return make_test(t);
	}

	bool closing_ahead() const { return at('/') && at('-', 1); }

	std::vector<Segment> sequence(bool top_level) {
		std::vector<Segment> segs;
		for (;;) {
			segs.push_back(segment());
			if (top_level && closing_ahead())
				return segs;
			if (!top_level && (at('|') || at(')')))
				return segs;
			if (!at('/'))
				fail(top_level ? std::vector<std::string>{"'/'", "'/-'"} : std::vector<std::string>{"'/'", "'|'", "')'"},
				     "unexpected token in path segment list");
			++pos_;
		}
	}

	/// Parses an optional occurrence suffix: '*', '[n,m]' or '[n,_]'.
	bool suffix(std::uint64_t &lo, std::optional<std::uint64_t> &hi) {
		if (at('*')) {
			++pos_;
			lo = 0;
			hi.reset();
			return true;
		}
		if (!at('['))
			return false;
		std::size_t open = peek().pos;
		++pos_;
		if (peek().kind != Tok::Kind::Number)
			fail({"number"}, "expected a lower bound");
		lo = to_number(peek().text, peek().pos);
		++pos_;
		expect(',');
		if (peek().kind == Tok::Kind::Number) {
			hi = to_number(peek().text, peek().pos);
			++pos_;
		} else if (peek().kind == Tok::Kind::Ident && peek().text == "_") {
			hi.reset();
			++pos_;
		} else {
			fail({"number", "'_'"}, "expected an upper bound");
		}
		expect(']');
		if (hi && *hi < lo)
			throw SyntaxError(open, {"upper bound >= lower bound"}, "repetition bounds out of order at position " + std::to_string(open));
		return true;
	}

	Segment segment() {
		if (at(':')) {
			++pos_;
			if (peek().kind != Tok::Kind::Ident)
				fail({"label"}, "expected an edge label");
			auto label = peek().text;
			++pos_;
			if (at('*') || at('['))
				throw UnsupportedFeature("occurrence indicators on label segments are not supported");
			return {make_test(make_and(make_label(label), make_exists())), Segment::Shape::EdgeLabel};
		}
		if (at('(')) {
			++pos_;
			PathPtr alt;
			for (;;) {
				auto segs = sequence(false);
				PathPtr e = segs.front().expr;
				for (std::size_t i = 1; i < segs.size(); ++i)
					e = make_concat(e, segs[i].expr);
				alt = alt ? make_union(alt, e) : e;
				if (at('|')) {
					++pos_;
					continue;
				}
				expect(')');
				break;
			}
			std::uint64_t lo = 0;
			std::optional<std::uint64_t> hi;
			if (suffix(lo, hi))
				alt = make_repeat(alt, lo, hi);
			return {alt, Segment::Shape::Other};
		}
		if (peek().kind != Tok::Kind::Ident)
			fail({"FWD", "BWD", "NEXT", "PREV", "':label'", "label", "'('"}, "expected a path segment");
		std::string word = peek().text;
		++pos_;
		std::optional<AxisKind> axis;
		if (word == "FWD")
			axis = AxisKind::Forward;
		else if (word == "BWD")
			axis = AxisKind::Backward;
		else if (word == "NEXT")
			axis = AxisKind::Next;
		else if (word == "PREV")
			axis = AxisKind::Prev;
		if (!axis) {
			if (at('*') || at('['))
				throw UnsupportedFeature("occurrence indicators on label segments are not supported");
			return {make_test(make_label(word)), Segment::Shape::Other};
		}
		std::uint64_t lo = 0;
		std::optional<std::uint64_t> hi;
		if (suffix(lo, hi)) {
			// Each repeated step lands on an existing temporal object.
			auto step = make_concat(make_axis(*axis), make_test(make_exists()));
			return {make_repeat(step, lo, hi), Segment::Shape::Other};
		}
		bool structural = *axis == AxisKind::Forward || *axis == AxisKind::Backward;
		return {make_axis(*axis), structural ? Segment::Shape::Structural : Segment::Shape::Other};
	}

	std::vector<Tok> toks_;
	std::size_t pos_ = 0;
};

} // namespace

PathPtr parse_match(std::string_view text) {
	return MatchParser(text).parse_path_pattern();
}

PathPtr parse_match_node(std::string_view text) {
	return MatchParser(text).parse_node_only();
}

} // namespace trpq
