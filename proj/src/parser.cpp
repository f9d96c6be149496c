// SPDX-License-Identifier: Apache-2.0
#include "trpq/errors.hpp"
#include "trpq/query.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace trpq {

namespace {

struct Token {
	enum class Kind { Ident, Number, String, Punct, End };
	Kind kind;
	std::string text;
	std::size_t pos;
	std::uint64_t number = 0;
};

bool ident_start(char c) {
	return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
	return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::uint64_t parse_number(std::string_view digits, std::size_t pos) {
	std::uint64_t v = 0;
	for (char c : digits) {
		std::uint64_t d = static_cast<std::uint64_t>(c - '0');
		if (v > (kMaxBound - d) / 10)
			throw SyntaxError(pos, {"number <= 9223372036854775807"}, "number out of range at position " + std::to_string(pos));
		v = v * 10 + d;
	}
	return v;
}

std::vector<Token> tokenize(std::string_view s) {
	std::vector<Token> out;
	std::size_t i = 0;
	while (i < s.size()) {
		char c = s[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			++i;
			continue;
		}
		std::size_t start = i;
		if (ident_start(c)) {
			while (i < s.size() && ident_char(s[i]))
				++i;
			out.push_back({Token::Kind::Ident, std::string(s.substr(start, i - start)), start});
		} else if (std::isdigit(static_cast<unsigned char>(c))) {
			while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
				++i;
			auto digits = s.substr(start, i - start);
			out.push_back({Token::Kind::Number, std::string(digits), start, parse_number(digits, start)});
		} else if (c == '\'' || c == '"') {
			++i;
			while (i < s.size() && s[i] != c)
				++i;
			if (i == s.size())
				throw SyntaxError(start, {std::string(1, c)}, "unterminated string at position " + std::to_string(start));
			out.push_back({Token::Kind::String, std::string(s.substr(start + 1, i - start - 1)), start});
			++i;
		} else if (std::string_view("()[],/+&|!?<=*").find(c) != std::string_view::npos) {
			out.push_back({Token::Kind::Punct, std::string(1, c), start});
			++i;
		} else {
			throw SyntaxError(start, {}, std::string("unexpected character '") + c + "' at position " + std::to_string(start));
		}
	}
	out.push_back({Token::Kind::End, "", s.size()});
	return out;
}

std::string join(const std::vector<std::string> &items) {
	std::string out;
	for (const auto &i : items) {
		if (!out.empty())
			out += ", ";
		out += i;
	}
	return out;
}

bool is_keyword(const std::string &s) {
	return s == "F" || s == "B" || s == "N" || s == "P" || s == "Node" || s == "Edge" || s == "exists" ||
	       s == "label" || s == "prop" || s == "_";
}

class Parser {
public:
	explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

	PathPtr parse() {
		auto e = parse_union();
		if (peek().kind != Token::Kind::End)
			fail({"'+'", "'/'", "end of input"});
		return e;
	}

private:
	const Token &peek() const { return tokens_[pos_]; }
	bool at_punct(char c) const { return peek().kind == Token::Kind::Punct && peek().text[0] == c; }

	[[noreturn]] void fail(std::vector<std::string> expected) const {
		const auto &t = peek();
		std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
		throw SyntaxError(t.pos, expected,
		                  "syntax error at position " + std::to_string(t.pos) + ": found " + found + ", expected " +
		                      join(expected));
	}

	void expect_punct(char c) {
		if (!at_punct(c))
			fail({std::string("'") + c + "'"});
		++pos_;
	}

	TestPtr require_test(const PathPtr &e, std::size_t pos, const char *op) const {
		if (const auto *t = std::get_if<path::Test>(&e->node))
			return t->test;
		throw SyntaxError(pos, {"test"}, std::string("operator '") + op + "' at position " + std::to_string(pos) +
		                                     " needs test operands, not a path");
	}

	PathPtr parse_union() {
		auto lhs = parse_concat();
		while (at_punct('+')) {
			++pos_;
			lhs = make_union(lhs, parse_concat());
		}
		return lhs;
	}

	PathPtr parse_concat() {
		auto lhs = parse_or();
		while (at_punct('/')) {
			++pos_;
			lhs = make_concat(lhs, parse_or());
		}
		return lhs;
	}

	PathPtr parse_or() {
		std::size_t start = peek().pos;
		auto lhs = parse_and();
		while (at_punct('|')) {
			std::size_t op = peek().pos;
			++pos_;
			auto l = require_test(lhs, start, "|");
			auto r = require_test(parse_and(), op, "|");
			lhs = make_test(make_or(l, r));
		}
		return lhs;
	}

	PathPtr parse_and() {
		std::size_t start = peek().pos;
		auto lhs = parse_not();
		while (at_punct('&')) {
			std::size_t op = peek().pos;
			++pos_;
			auto l = require_test(lhs, start, "&");
			auto r = require_test(parse_not(), op, "&");
			lhs = make_test(make_and(l, r));
		}
		return lhs;
	}

	PathPtr parse_not() {
		if (at_punct('!')) {
			std::size_t op = peek().pos;
			++pos_;
			return make_test(make_not(require_test(parse_not(), op, "!")));
		}
		return parse_postfix();
	}

	PathPtr parse_postfix() {
		auto e = parse_primary();
		for (;;) {
			if (at_punct('*')) {
				++pos_;
				e = make_repeat(e, 0, std::nullopt);
			} else if (at_punct('[')) {
				std::size_t open = peek().pos;
				++pos_;
				if (peek().kind != Token::Kind::Number)
					fail({"number"});
				std::uint64_t lo = peek().number;
				++pos_;
				expect_punct(',');
				std::optional<std::uint64_t> hi;
				if (peek().kind == Token::Kind::Number) {
					hi = peek().number;
					++pos_;
				} else if (peek().kind == Token::Kind::Ident && peek().text == "_") {
					++pos_;
				} else {
					fail({"number", "'_'"});
				}
				expect_punct(']');
				if (hi && *hi < lo)
					throw SyntaxError(open, {"upper bound >= lower bound"},
					                  "repetition at position " + std::to_string(open) + " has lower bound " +
					                      std::to_string(lo) + " above upper bound " + std::to_string(*hi));
				e = make_repeat(e, lo, hi);
			} else {
				return e;
			}
		}
	}

	std::string parse_name() {
		const auto &t = peek();
		if (t.kind == Token::Kind::Ident || t.kind == Token::Kind::String || t.kind == Token::Kind::Number) {
			++pos_;
			return t.text;
		}
		fail({"identifier", "string"});
	}

	PathPtr parse_primary() {
		const Token &t = peek();
		if (at_punct('(')) {
			++pos_;
			auto e = parse_union();
			expect_punct(')');
			return e;
		}
		if (at_punct('?')) {
			++pos_;
			expect_punct('(');
			auto e = parse_union();
			expect_punct(')');
			return make_test(make_path_condition(e));
		}
		if (at_punct('<')) {
			++pos_;
			if (peek().kind != Token::Kind::Number)
				fail({"number"});
			auto k = peek().number;
			++pos_;
			return make_test(make_time_less(k));
		}
		if (t.kind == Token::Kind::Ident) {
			const std::string word = t.text;
			if (word == "F" || word == "B" || word == "N" || word == "P") {
				++pos_;
				AxisKind k = word == "F" ? AxisKind::Forward
				             : word == "B" ? AxisKind::Backward
				             : word == "N" ? AxisKind::Next
				                           : AxisKind::Prev;
				return make_axis(k);
			}
			if (word == "Node") {
				++pos_;
				return make_test(make_is_node());
			}
			if (word == "Edge") {
				++pos_;
				return make_test(make_is_edge());
			}
			if (word == "exists") {
				++pos_;
				return make_test(make_exists());
			}
			if (word == "label") {
				++pos_;
				expect_punct('(');
				auto name = parse_name();
				expect_punct(')');
				return make_test(make_label(name));
			}
			if (word == "prop") {
				++pos_;
				expect_punct('(');
				auto name = parse_name();
				expect_punct('=');
				auto value = parse_name();
				expect_punct(')');
				return make_test(make_prop(name, value));
			}
			if (!is_keyword(word)) {
				++pos_;
				return make_test(make_label(word));
			}
		}
		fail({"'('", "'?('", "'<'", "'!'", "F", "B", "N", "P", "Node", "Edge", "exists", "label(...)", "prop(...)",
		      "label name"});
	}

	std::vector<Token> tokens_;
	std::size_t pos_ = 0;
};

} // namespace

PathPtr parse_trpq(std::string_view text) {
	return Parser(text).parse();
}

namespace {

bool plain_identifier(const std::string &s) {
	if (s.empty() || !ident_start(s[0]) || is_keyword(s))
		return false;
	for (char c : s)
		if (!ident_char(c))
			return false;
	return true;
}

std::string quoted(const std::string &s) {
	char q = s.find('\'') == std::string::npos ? '\'' : '"';
	return q + s + q;
}

std::string name_text(const std::string &s) {
	return plain_identifier(s) ? s : quoted(s);
}

} // namespace

std::string pretty_print(const TestExpr &t) {
	if (std::holds_alternative<test::IsNode>(t.node))
		return "Node";
	if (std::holds_alternative<test::IsEdge>(t.node))
		return "Edge";
	if (std::holds_alternative<test::Exists>(t.node))
		return "exists";
	if (auto *x = std::get_if<test::HasLabel>(&t.node))
		return "label(" + name_text(x->label) + ")";
	if (auto *x = std::get_if<test::PropEquals>(&t.node))
		return "prop(" + name_text(x->prop) + "=" + quoted(x->value) + ")";
	if (auto *x = std::get_if<test::TimeLess>(&t.node))
		return "< " + std::to_string(x->k);
	if (auto *x = std::get_if<test::PathCondition>(&t.node))
		return "?(" + pretty_print(*x->path) + ")";
	if (auto *x = std::get_if<test::Or>(&t.node))
		return "(" + pretty_print(*x->lhs) + " | " + pretty_print(*x->rhs) + ")";
	if (auto *x = std::get_if<test::And>(&t.node))
		return "(" + pretty_print(*x->lhs) + " & " + pretty_print(*x->rhs) + ")";
	const auto &n = std::get<test::Not>(t.node);
	return "!" + pretty_print(*n.operand);
}

std::string pretty_print(const PathExpr &e) {
	if (auto *x = std::get_if<path::Test>(&e.node))
		return pretty_print(*x->test);
	if (auto *x = std::get_if<path::Axis>(&e.node))
		return std::string(1, axis_symbol(x->kind));
	if (auto *x = std::get_if<path::Concat>(&e.node))
		return "(" + pretty_print(*x->lhs) + " / " + pretty_print(*x->rhs) + ")";
	if (auto *x = std::get_if<path::Union>(&e.node))
		return "(" + pretty_print(*x->lhs) + " + " + pretty_print(*x->rhs) + ")";
	const auto &r = std::get<path::Repeat>(e.node);
	std::string inner = pretty_print(*r.operand);
	// A negation would otherwise capture the suffix: "!x[0,1]" reads as "!(x[0,1])".
	const TestExpr *t = as_test(*r.operand);
	if (t && std::holds_alternative<test::Not>(t->node))
		inner = "(" + inner + ")";
	return inner + "[" + std::to_string(r.low) + "," + (r.high ? std::to_string(*r.high) : "_") + "]";
}

} // namespace trpq
