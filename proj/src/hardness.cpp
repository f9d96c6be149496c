// SPDX-License-Identifier: Apache-2.0
#include "trpq/hardness.hpp"

#include "trpq/errors.hpp"

#include <functional>
#include <string>

namespace trpq {

namespace {

Itpg single_node(Interval omega) {
	return ItpgBuilder().omega(omega).node("v", "V").exists("v", omega).build();
}

PathPtr next(std::uint64_t k) {
	return make_repeat(make_axis(AxisKind::Next), k, k);
}

PathPtr prev(std::uint64_t k) {
	return make_repeat(make_axis(AxisKind::Prev), k, k);
}

PathPtr chain(const std::vector<PathPtr> &parts) {
	PathPtr out;
	for (const auto &p : parts)
		out = out ? make_concat(out, p) : p;
	return out;
}

// Times in [2^(i-1), 2^i - 1].
TestPtr top_bit_window(unsigned i) {
	return make_and(make_time_less(std::uint64_t{1} << i), make_not(make_time_less(std::uint64_t{1} << (i - 1))));
}

TestPtr tautology() {
	return make_or(make_exists(), make_not(make_exists()));
}

void check_formula(const QbfFormula &f) {
	std::size_t n = f.quantifiers.size();
	if (n == 0)
		throw InvalidInstance("QBF needs at least one variable");
	if (n > 20)
		throw SizeLimit("QBF with " + std::to_string(n) + " variables exceeds the limit of 20");
	for (const auto &clause : f.clauses)
		for (int lit : clause)
			if (lit == 0 || static_cast<std::size_t>(lit < 0 ? -lit : lit) > n)
				throw InvalidInstance("literal " + std::to_string(lit) + " does not name a quantified variable");
}

ReductionInstance encode_qbf(const QbfFormula &f, const std::function<TestPtr(unsigned)> &bit) {
	check_formula(f);
	const unsigned n = static_cast<unsigned>(f.quantifiers.size());
	TestPtr matrix;
	for (const auto &clause : f.clauses) {
		TestPtr disj;
		for (int lit : clause) {
			TestPtr t = bit(static_cast<unsigned>(lit < 0 ? -lit : lit));
			if (lit < 0)
				t = make_not(t);
			disj = disj ? make_or(disj, t) : t;
		}
		if (!disj)
			disj = make_not(tautology());
		matrix = matrix ? make_and(matrix, disj) : disj;
	}
	if (!matrix)
		matrix = tautology();

	TestPtr s = matrix;
	for (unsigned i = n; i >= 1; --i) {
		PathPtr choose = make_union(next(std::uint64_t{1} << (i - 1)), next(0));
		if (f.quantifiers[i - 1] == Quantifier::Exists)
			s = make_path_condition(make_concat(choose, make_test(s)));
		else
			s = make_not(make_path_condition(make_concat(choose, make_test(make_not(s)))));
	}
	Itpg g = single_node({0, (std::uint64_t{1} << n) - 1});
	return {g, make_test(s), {{0, 0}, {0, 0}}, solve_qbf_brute(f)};
}

} // namespace

ReductionInstance gen_subset_sum(const std::vector<std::uint64_t> &a, std::uint64_t s) {
	if (a.empty() || s == 0)
		throw InvalidInstance("SUBSET-SUM reduction needs a non-empty set and a positive target");
	std::vector<PathPtr> parts;
	for (auto x : a)
		parts.push_back(make_union(next(x), next(0)));
	return {single_node({0, s}), chain(parts), {{0, 0}, {0, s}}, solve_subset_sum_brute(a, s)};
}

bool solve_subset_sum_brute(const std::vector<std::uint64_t> &a, std::uint64_t s) {
	if (a.size() > 24)
		throw SizeLimit("subset enumeration over " + std::to_string(a.size()) + " elements exceeds the limit of 24");
	for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.size()); ++mask) {
		std::uint64_t sum = 0;
		for (std::size_t i = 0; i < a.size(); ++i)
			if (mask >> i & 1)
				sum += a[i];
		if (sum == s)
			return true;
	}
	return false;
}

ReductionInstance gen_gsubset_sum(const std::vector<std::uint64_t> &u, const std::vector<std::uint64_t> &w,
                                  std::uint64_t s) {
	if (u.empty() && w.empty())
		throw InvalidInstance("G-SUBSET-SUM reduction needs at least one entry");
	std::uint64_t total = 0;
	for (auto x : u)
		total += x;
	for (auto x : w)
		total += x;
	const std::uint64_t m = 2 * total;

	std::vector<PathPtr> parts;
	for (auto x : u)
		parts.push_back(make_repeat(next(x), 0, 1));
	PathPtr r = make_test(make_or(make_time_less(s + m), make_not(make_time_less(s + m + 1))));
	for (auto x : w)
		r = make_concat(make_repeat(chain({next(x), r, prev(2 * x)}), 2, 2), next(2 * x));
	parts.push_back(r);
	parts.push_back(make_repeat(make_axis(AxisKind::Next), 0, std::nullopt));
	parts.push_back(make_test(make_not(make_time_less(2 * m))));
	return {single_node({0, 2 * m}), chain(parts), {{0, m}, {0, 2 * m}}, solve_gsubset_sum_brute(u, w, s)};
}

bool solve_gsubset_sum_brute(const std::vector<std::uint64_t> &u, const std::vector<std::uint64_t> &w,
                             std::uint64_t s) {
	if (u.size() + w.size() > 20)
		throw SizeLimit("G-SUBSET-SUM enumeration beyond 20 entries");
	for (std::uint64_t x = 0; x < (std::uint64_t{1} << u.size()); ++x) {
		std::uint64_t base = 0;
		for (std::size_t i = 0; i < u.size(); ++i)
			if (x >> i & 1)
				base += u[i];
		bool all = true;
		for (std::uint64_t y = 0; y < (std::uint64_t{1} << w.size()) && all; ++y) {
			std::uint64_t sum = base;
			for (std::size_t j = 0; j < w.size(); ++j)
				if (y >> j & 1)
					sum += w[j];
			all = sum != s;
		}
		if (all)
			return true;
	}
	return false;
}

TestPtr qbf_bit_test(unsigned i) {
	PathPtr down = make_repeat(prev(std::uint64_t{1} << i), 0, std::nullopt);
	return make_path_condition(make_concat(down, make_test(top_bit_window(i))));
}

TestPtr qbf_bit_test_anoi(unsigned i, unsigned n) {
	std::vector<PathPtr> parts;
	for (unsigned j = n; j >= i; --j)
		parts.push_back(make_union(prev(0), prev(std::uint64_t{1} << j)));
	parts.push_back(make_test(top_bit_window(i)));
	return make_path_condition(chain(parts));
}

ReductionInstance gen_qbf(const QbfFormula &f) {
	return encode_qbf(f, [](unsigned i) { return qbf_bit_test(i); });
}

ReductionInstance gen_qbf_anoi(const QbfFormula &f) {
	const unsigned n = static_cast<unsigned>(f.quantifiers.size());
	return encode_qbf(f, [n](unsigned i) { return qbf_bit_test_anoi(i, n); });
}

bool solve_qbf_brute(const QbfFormula &f) {
	check_formula(f);
	const std::size_t n = f.quantifiers.size();
	std::vector<bool> value(n + 1, false);
	std::function<bool(std::size_t)> decide = [&](std::size_t i) -> bool {
		if (i > n) {
			for (const auto &clause : f.clauses) {
				bool sat = false;
				for (int lit : clause)
					sat = sat || (lit > 0 ? value[lit] : !value[-lit]);
				if (!sat)
					return false;
			}
			return true;
		}
		bool exists = f.quantifiers[i - 1] == Quantifier::Exists;
		for (bool v : {false, true}) {
			value[i] = v;
			bool r = decide(i + 1);
			if (r == exists)
				return r;
		}
		return !exists;
	};
	return decide(1);
}

} // namespace trpq
