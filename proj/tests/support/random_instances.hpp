// SPDX-License-Identifier: Apache-2.0
// Random graphs and expressions for property tests.
#pragma once

#include "trpq/ast.hpp"
#include "trpq/graph.hpp"

#include <random>
#include <string>
#include <vector>

namespace trpq::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng &rng, std::uint64_t lo, std::uint64_t hi) {
	return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline bool coin(Rng &rng, double p = 0.5) {
	return std::bernoulli_distribution(p)(rng);
}

/// Random interval subset of omega, as raw intervals.
inline std::vector<Interval> random_intervals(Rng &rng, Interval omega, std::size_t max_parts) {
	std::vector<Interval> out;
	std::size_t parts = uniform(rng, 0, max_parts);
	for (std::size_t i = 0; i < parts; ++i) {
		TimePoint a = uniform(rng, omega.start, omega.end);
		TimePoint b = uniform(rng, omega.start, omega.end);
		out.push_back({std::min(a, b), std::max(a, b)});
	}
	return out;
}

struct GraphShape {
	std::size_t max_objects = 6;
	TimePoint max_omega = 10;
	std::size_t max_parts = 3;
};

/// Valid ITPG with labels A/B, property p in {x, y} and q in {x}.
inline Itpg random_itpg(Rng &rng, const GraphShape &shape = {}) {
	TimePoint start = uniform(rng, 0, 3);
	Interval omega{start, start + uniform(rng, 0, shape.max_omega - 1)};
	std::size_t objects = uniform(rng, 1, shape.max_objects);
	std::size_t nodes = uniform(rng, 1, objects);
	ItpgBuilder b;
	b.omega(omega);
	std::vector<IntervalFamily> alive;
	auto label = [&] { return coin(rng) ? std::string("A") : std::string("B"); };
	auto decorate = [&](const std::string &id, const IntervalFamily &life) {
		for (const auto &iv : life.items())
			b.exists(id, iv);
		for (const char *prop : {"p", "q"}) {
			if (life.empty() || coin(rng, 0.3))
				continue;
			// Split each lifetime interval into runs with random values.
			for (const auto &iv : life.items()) {
				for (TimePoint t = iv.start;; ++t) {
					if (coin(rng, 0.7)) {
						std::string v = std::string(prop) == "q" || coin(rng) ? "x" : "y";
						b.property(id, prop, v, {t, t});
					}
					if (t == iv.end)
						break;
				}
			}
		}
	};
	for (std::size_t i = 0; i < nodes; ++i) {
		std::string id = "n" + std::to_string(i);
		b.node(id, label());
		alive.push_back(coalesce(random_intervals(rng, omega, shape.max_parts)));
		decorate(id, alive.back());
	}
	for (std::size_t i = nodes; i < objects; ++i) {
		std::string id = "e" + std::to_string(i);
		std::size_t s = uniform(rng, 0, nodes - 1), d = uniform(rng, 0, nodes - 1);
		b.edge(id, label(), "n" + std::to_string(s), "n" + std::to_string(d));
		IntervalFamily room = alive[s].intersect(alive[d]);
		decorate(id, coalesce(random_intervals(rng, omega, shape.max_parts)).intersect(room));
	}
	return b.build();
}

enum class ExprKind { Pc, Anoi, Full, TimeFree };

struct ExprShape {
	ExprKind kind = ExprKind::Full;
	unsigned depth = 6;
	std::uint64_t max_low = 3;
	std::uint64_t max_span = 3;
	TimePoint max_k = 14;
};

class ExprGen {
public:
	ExprGen(Rng &rng, ExprShape shape) : rng_(rng), s_(shape) {}

	PathPtr path(unsigned depth) {
		// Above depth 0: leaves 20%, concatenation 35%, union 20%, repetition 25%.
		unsigned roll = static_cast<unsigned>(uniform(rng_, 0, 19));
		if (depth == 0 || roll < 2)
			return make_test(test(depth == 0 ? 0 : depth - 1));
		if (roll < 4)
			return make_axis(axis());
		if (roll < 11)
			return make_concat(path(depth - 1), path(depth - 1));
		if (roll < 15)
			return make_union(path(depth - 1), path(depth - 1));
		if (s_.kind == ExprKind::Pc)
			return make_concat(path(depth - 1), path(depth - 1));
		if (s_.kind == ExprKind::Anoi)
			return repeat(make_axis(axis()));
		return repeat(path(depth - 1));
	}

	TestPtr test(unsigned depth) {
		bool allow_pc = s_.kind == ExprKind::Pc || s_.kind == ExprKind::Full || s_.kind == ExprKind::TimeFree;
		unsigned top = depth == 0 ? 6 : (allow_pc ? 10 : 9);
		switch (uniform(rng_, 0, top)) {
		case 0:
			return make_is_node();
		case 1:
			return make_is_edge();
		case 2:
			return make_label(coin(rng_) ? "A" : "B");
		case 3:
			return make_prop(coin(rng_) ? "p" : "q", coin(rng_) ? "x" : "y");
		case 4:
			if (s_.kind == ExprKind::TimeFree)
				return make_exists();
			return make_time_less(uniform(rng_, 0, s_.max_k));
		case 5:
		case 6:
			return make_exists();
		case 7:
			return make_or(test(depth - 1), test(depth - 1));
		case 8:
			return make_and(test(depth - 1), test(depth - 1));
		case 9:
			return make_not(test(depth - 1));
		default:
			return make_path_condition(path(depth - 1));
		}
	}

	AxisKind axis() {
		if (s_.kind == ExprKind::TimeFree)
			return coin(rng_) ? AxisKind::Forward : AxisKind::Backward;
		return static_cast<AxisKind>(uniform(rng_, 0, 3));
	}

	PathPtr repeat(PathPtr operand) {
		std::uint64_t low = uniform(rng_, 0, s_.max_low);
		if (coin(rng_, 0.25))
			return make_repeat(operand, low, std::nullopt);
		return make_repeat(operand, low, low + uniform(rng_, 0, s_.max_span));
	}

private:
	Rng &rng_;
	ExprShape s_;
};

inline PathPtr random_path(Rng &rng, const ExprShape &shape) {
	ExprGen gen(rng, shape);
	return gen.path(static_cast<unsigned>(uniform(rng, 2, shape.depth)));
}

/// Random tuple over PTO(g).
inline BindingTuple random_tuple(Rng &rng, const Itpg &g) {
	auto obj = [&] { return static_cast<ObjectIndex>(uniform(rng, 0, g.object_count() - 1)); };
	auto time = [&] { return uniform(rng, g.omega().start, g.omega().end); };
	return {{obj(), time()}, {obj(), time()}};
}

} // namespace trpq::testing
