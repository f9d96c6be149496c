// SPDX-License-Identifier: Apache-2.0
#include "support/random_instances.hpp"
#include "trpq/errors.hpp"
#include "trpq/graph.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace trpq;
namespace rnd = trpq::testing;

namespace {

IntervalFamily family(std::vector<Interval> items) {
	return IntervalFamily(std::move(items));
}

// Bob, Carl and the meets edge between them.
ItpgBuilder bob_carl(Interval e2 = {1, 2}) {
	ItpgBuilder b;
	b.omega({1, 11});
	b.node("n2", "Person").exists("n2", {1, 9});
	b.node("n3", "Person").exists("n3", {1, 7});
	b.edge("e2", "meets", "n2", "n3").exists("e2", e2);
	b.property("n2", "risk", "low", {1, 4}).property("n2", "risk", "high", {5, 9});
	return b;
}

bool has_kind(const ValidationReport &r, Violation::Kind k, const std::string &object) {
	for (const auto &v : r.violations)
		if (v.kind == k && v.object == object)
			return true;
	return false;
}

std::set<TimePoint> points(const IntervalFamily &f) {
	std::set<TimePoint> out;
	for (const auto &iv : f.items())
		for (TimePoint t = iv.start; t <= iv.end; ++t)
			out.insert(t);
	return out;
}

} // namespace

TEST(Interval, OccursDuring) {
	EXPECT_TRUE(occurs_during({2, 3}, {1, 4}));
	EXPECT_TRUE(occurs_during({1, 4}, {1, 4}));
	EXPECT_FALSE(occurs_during({1, 5}, {2, 9}));
}

TEST(Interval, Meets) {
	EXPECT_TRUE(meets({1, 2}, {3, 4}));
	EXPECT_FALSE(meets({1, 4}, {6, 8}));
	EXPECT_FALSE(meets({1, 2}, {2, 4}));
}

TEST(Interval, Before) {
	EXPECT_TRUE(before({1, 4}, {6, 8}));
	EXPECT_FALSE(before({1, 2}, {3, 4}));
	EXPECT_FALSE(before({1, 2}, {2, 5}));
}

TEST(Interval, Coalesce) {
	EXPECT_EQ(coalesce({{1, 2}, {3, 4}, {6, 8}}), family({{1, 4}, {6, 8}}));
	EXPECT_TRUE(coalesce({}).empty());
	EXPECT_EQ(coalesce({{1, 3}, {2, 5}}), family({{1, 5}}));
	EXPECT_TRUE(family({{1, 4}, {6, 8}}).is_coalesced());
	EXPECT_FALSE(family({{1, 2}, {3, 4}}).is_coalesced());
}

TEST(Interval, CoalesceValued) {
	EXPECT_EQ(coalesce_valued({{"v", {1, 2}}, {"v", {3, 4}}}), ValuedIntervalFamily({{"v", {1, 4}}}));
	ValuedIntervalFamily distinct({{"v", {1, 2}}, {"w", {3, 4}}});
	EXPECT_EQ(coalesce_valued({{"w", {3, 4}}, {"v", {1, 2}}}), distinct);
	EXPECT_TRUE(distinct.is_coalesced());
	EXPECT_THROW(coalesce_valued({{"v", {1, 3}}, {"w", {2, 4}}}), ConflictingValue);
	// Identical values may overlap.
	EXPECT_EQ(coalesce_valued({{"v", {1, 3}}, {"v", {2, 4}}}), ValuedIntervalFamily({{"v", {1, 4}}}));
}

TEST(Interval, FamilyContained) {
	EXPECT_TRUE(family_contained(family({{1, 2}}), family({{1, 9}})));
	EXPECT_TRUE(family_contained({}, family({{1, 2}})));
	EXPECT_FALSE(family_contained(family({{1, 5}}), family({{1, 3}, {5, 8}})));
}

TEST(Interval, SetOperationsMatchPointSets) {
	rnd::Rng rng(7);
	const Interval omega{0, 64};
	for (int trial = 0; trial < 2000; ++trial) {
		auto a = coalesce(rnd::random_intervals(rng, omega, 4));
		auto b = coalesce(rnd::random_intervals(rng, omega, 4));
		ASSERT_TRUE(a.is_coalesced());
		auto pa = points(a), pb = points(b);
		std::set<TimePoint> uni, inter, diff, comp;
		for (TimePoint t = omega.start; t <= omega.end; ++t) {
			bool x = pa.count(t), y = pb.count(t);
			if (x || y)
				uni.insert(t);
			if (x && y)
				inter.insert(t);
			if (x && !y)
				diff.insert(t);
			if (!x)
				comp.insert(t);
		}
		EXPECT_EQ(points(a.unite(b)), uni);
		EXPECT_EQ(points(a.intersect(b)), inter);
		EXPECT_EQ(points(a.subtract(b)), diff);
		EXPECT_EQ(points(a.complement(omega)), comp);
		EXPECT_TRUE(a.unite(b).is_coalesced());
		EXPECT_EQ(family_contained(a, b), std::includes(pb.begin(), pb.end(), pa.begin(), pa.end()));
		EXPECT_EQ(a.point_count(), pa.size());
	}
}

TEST(Interval, ShiftMatchesPointSets) {
	rnd::Rng rng(11);
	const Interval omega{0, 64};
	for (int trial = 0; trial < 500; ++trial) {
		auto a = coalesce(rnd::random_intervals(rng, omega, 3));
		TimePoint lo = rnd::uniform(rng, 0, 5), hi = lo + rnd::uniform(rng, 0, 5);
		std::set<TimePoint> fwd, bwd;
		for (TimePoint t : points(a))
			for (TimePoint d = lo; d <= hi; ++d) {
				if (t + d <= omega.end)
					fwd.insert(t + d);
				if (t >= d)
					bwd.insert(t - d);
			}
		EXPECT_EQ(points(a.shift_forward(lo, hi, omega)), fwd);
		EXPECT_EQ(points(a.shift_backward(lo, hi, omega)), bwd);
	}
}

TEST(ValidateItpg, RunningExampleIsValid) {
	Itpg g = bob_carl().build();
	EXPECT_TRUE(validate_itpg(g).ok()) << validate_itpg(g).to_string();
}

TEST(ValidateItpg, EdgeOutlivingEndpoint) {
	Itpg g = bob_carl({1, 8}).build();
	auto report = validate_itpg(g);
	EXPECT_TRUE(has_kind(report, Violation::Kind::EdgeContainment, "e2")) << report.to_string();
}

TEST(ValidateItpg, UncoalescedExistence) {
	ItpgBuilder b;
	b.omega({0, 9}).node("v", "V").exists("v", {1, 2}).exists("v", {3, 4});
	auto report = validate_itpg(b.build(false));
	EXPECT_TRUE(has_kind(report, Violation::Kind::NotCoalesced, "v")) << report.to_string();
	EXPECT_TRUE(validate_itpg(b.build(true)).ok());
}

TEST(ValidateItpg, PropertyOutsideExistence) {
	ItpgBuilder b;
	b.omega({0, 9}).node("v", "V").exists("v", {1, 2}).property("v", "p", "x", {2, 3});
	EXPECT_TRUE(has_kind(validate_itpg(b.build()), Violation::Kind::PropertyContainment, "v"));
}

TEST(ValidateItpg, OutsideOmega) {
	ItpgBuilder b;
	b.omega({0, 9}).node("v", "V").exists("v", {5, 12});
	EXPECT_TRUE(has_kind(validate_itpg(b.build()), Violation::Kind::OutsideOmega, "v"));
}

TEST(ValidateTpg, ExpansionIsValid) {
	EXPECT_TRUE(validate_tpg(canonical_translation(bob_carl().build())).ok());
}

TEST(ValidateTpg, PropertyWithoutExistence) {
	Tpg g = canonical_translation(bob_carl().build());
	ObjectIndex n3 = g.topology().require("n3");
	g.set_property(n3, "risk", 9, "high");
	EXPECT_FALSE(validate_tpg(g).ok());
	EXPECT_TRUE(has_kind(validate_tpg(g), Violation::Kind::PropertyContainment, "n3"));
}

TEST(ValidateTpg, EdgeWithDeadSource) {
	Tpg g = canonical_translation(bob_carl().build());
	g.set_exists(g.topology().require("e2"), 8, true);
	EXPECT_TRUE(has_kind(validate_tpg(g), Violation::Kind::EdgeContainment, "e2"));
}

TEST(CanonicalTranslation, Existence) {
	ItpgBuilder b;
	b.omega({1, 5}).node("n", "V").exists("n", {1, 3}).exists("n", {5, 5}).node("m", "V");
	Tpg g = canonical_translation(b.build());
	ObjectIndex n = g.topology().require("n"), m = g.topology().require("m");
	for (TimePoint t = 1; t <= 5; ++t) {
		EXPECT_EQ(g.exists(n, t), t != 4) << t;
		EXPECT_FALSE(g.exists(m, t));
	}
}

TEST(CanonicalTranslation, Properties) {
	Tpg g = canonical_translation(bob_carl().build());
	ObjectIndex n2 = g.topology().require("n2");
	EXPECT_EQ(g.property(n2, "risk", 4), "low");
	EXPECT_EQ(g.property(n2, "risk", 5), "high");
	EXPECT_EQ(g.property(n2, "risk", 10), std::nullopt);
}

TEST(CanonicalTranslation, DomainTooLarge) {
	ItpgBuilder b;
	b.omega({0, TimePoint{1} << 60}).node("v", "V").exists("v", {0, 3});
	EXPECT_THROW(canonical_translation(b.build()), DomainTooLarge);
	EXPECT_THROW(canonical_translation(bob_carl().build(), 5), DomainTooLarge);
}

TEST(CanonicalTranslation, CompressInverts) {
	rnd::Rng rng(3);
	for (int trial = 0; trial < 300; ++trial) {
		Itpg g = rnd::random_itpg(rng);
		EXPECT_TRUE(compress(canonical_translation(g)) == g);
	}
}

TEST(PointQueries, ExistsAt) {
	Itpg g = bob_carl().build();
	const auto &topo = g.topology();
	EXPECT_TRUE(exists_at(g, topo.require("n2"), 9));
	EXPECT_FALSE(exists_at(g, topo.require("n3"), 8));
	EXPECT_FALSE(exists_at(g, topo.require("e2"), 11));
}

TEST(PointQueries, PropertyAt) {
	Itpg g = bob_carl().build();
	ObjectIndex n2 = g.topology().require("n2");
	EXPECT_EQ(property_at(g, n2, "risk", 3), "low");
	EXPECT_EQ(property_at(g, n2, "risk", 7), "high");
	EXPECT_EQ(property_at(g, n2, "risk", 10), std::nullopt);
	EXPECT_EQ(property_at(g, n2, "name", 3), std::nullopt);
}

TEST(Topology, ObjectsOrderedById) {
	ItpgBuilder b;
	b.omega({0, 1}).node("b", "V").node("a", "V").edge("c", "E", "b", "a").edge("d", "E", "b", "a");
	Itpg g = b.build();
	const auto &topo = g.topology();
	EXPECT_EQ(topo.at(0).id, "a");
	EXPECT_EQ(topo.at(1).id, "b");
	EXPECT_EQ(topo.node_count(), 2u);
	// Parallel edges between the same endpoints are kept apart.
	EXPECT_EQ(topo.out_edges(topo.require("b")).size(), 2u);
	EXPECT_EQ(topo.in_edges(topo.require("a")).size(), 2u);
	EXPECT_THROW(ItpgBuilder().node("v", "V").edge("e", "E", "v", "w").build(), GraphError);
}
