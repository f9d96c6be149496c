// SPDX-License-Identifier: Apache-2.0
// Synthetic contact-tracing graphs. Every random decision is drawn from a
// splitmix64 stream derived from (seed, purpose, entity), so a person's
// visits, risk and test status do not depend on how many other persons exist.
#include "trpq/io.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace trpq {

namespace {

std::uint64_t mix64(std::uint64_t z) {
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

class SplitMix64 {
public:
	explicit SplitMix64(std::uint64_t state) : state_(state) {}

	std::uint64_t next() {
		state_ += 0x9e3779b97f4a7c15ULL;
		return mix64(state_);
	}

	/// Uniform in [0, n).
	std::uint64_t below(std::uint64_t n) { return next() % n; }
	/// Uniform in [0, 1).
	double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
	std::uint64_t state_;
};

enum Purpose : std::uint64_t { kVisits = 1, kRisk = 2, kTest = 3, kMeet = 4 };

SplitMix64 stream(std::uint64_t seed, Purpose purpose, std::uint64_t a, std::uint64_t b = 0) {
	return SplitMix64(mix64(seed ^ mix64(purpose * 0x9e3779b97f4a7c15ULL ^ mix64(a ^ mix64(b + 1)))));
}

struct Visit {
	std::uint64_t location;
	Interval when;
};

} // namespace

std::string person_id(std::uint64_t index) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "p%07llu", static_cast<unsigned long long>(index));
	return buf;
}

std::string room_id(std::uint64_t index) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "r%04llu", static_cast<unsigned long long>(index));
	return buf;
}

Itpg gen_contact_graph(const GenParams &p) {
	if (p.persons < 1 || p.rooms < 1 || p.timepoints < 1)
		throw std::invalid_argument("persons, rooms and timepoints must be at least 1");
	if (!(p.positivity_rate >= 0 && p.positivity_rate <= 1) || !(p.highrisk_rate >= 0 && p.highrisk_rate <= 1))
		throw std::invalid_argument("rates must lie in [0, 1]");

	const Interval omega{0, p.timepoints - 1};
	const std::uint64_t locations = p.rooms + p.meet_locations;
	ItpgBuilder b;
	b.omega(omega);
	for (std::uint64_t r = 1; r <= p.rooms; ++r)
		b.node(room_id(r), "Room").exists(room_id(r), omega);

	std::vector<std::vector<Visit>> visits(p.persons + 1);
	for (std::uint64_t i = 1; i <= p.persons; ++i) {
		const std::string id = person_id(i);
		b.node(id, "Person");

		SplitMix64 rng = stream(p.seed, kVisits, i);
		std::uint64_t count = 1 + rng.below(4);
		std::uint64_t cursor = rng.below(p.timepoints);
		for (std::uint64_t k = 0; k < count && cursor < p.timepoints; ++k) {
			std::uint64_t length = 1 + rng.below(6);
			Interval when{cursor, std::min(cursor + length - 1, omega.end)};
			visits[i].push_back({rng.below(locations), when});
			cursor = when.end + 1 + rng.below(4);
		}

		std::vector<Interval> life;
		std::map<std::uint64_t, std::vector<Interval>> rooms;
		for (const auto &v : visits[i]) {
			life.push_back(v.when);
			if (v.location < p.rooms)
				rooms[v.location + 1].push_back(v.when);
		}
		IntervalFamily alive = coalesce(life);
		for (const auto &iv : alive.items())
			b.exists(id, iv);
		for (const auto &[room, when] : rooms) {
			std::string edge = "v-" + id + "-" + room_id(room);
			b.edge(edge, "visits", id, room_id(room));
			for (const auto &iv : when)
				b.exists(edge, iv);
		}

		SplitMix64 risk = stream(p.seed, kRisk, i);
		std::string level = risk.unit() < p.highrisk_rate ? "high" : "low";
		for (const auto &iv : alive.items())
			b.property(id, "risk", level, iv);

		SplitMix64 test = stream(p.seed, kTest, i);
		double draw = test.unit();
		std::uint64_t onset_rank = test.below(alive.point_count());
		if (draw < p.positivity_rate) {
			for (const auto &iv : alive.items()) {
				std::uint64_t len = iv.end - iv.start + 1;
				if (onset_rank >= len) {
					onset_rank -= len;
					continue;
				}
				b.property(id, "test", "pos", {iv.start + onset_rank, iv.end});
				onset_rank = 0;
			}
		}
	}

	// Meetings: co-located persons with overlapping stays meet with
	// probability min(1, overlap / 6).
	std::vector<std::vector<std::pair<std::uint64_t, Interval>>> at(locations);
	for (std::uint64_t i = 1; i <= p.persons; ++i)
		for (const auto &v : visits[i])
			at[v.location].emplace_back(i, v.when);
	std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<Interval>> meetings;
	for (std::uint64_t loc = 0; loc < locations; ++loc) {
		auto &stays = at[loc];
		std::sort(stays.begin(), stays.end(),
		          [](const auto &x, const auto &y) { return x.second.start < y.second.start; });
		for (std::size_t x = 0; x < stays.size(); ++x) {
			for (std::size_t y = x + 1; y < stays.size() && stays[y].second.start <= stays[x].second.end; ++y) {
				auto [a, ia] = stays[x];
				auto [c, ic] = stays[y];
				if (a == c)
					continue;
				Interval overlap{std::max(ia.start, ic.start), std::min(ia.end, ic.end)};
				if (overlap.start > overlap.end)
					continue;
				auto lo = std::min(a, c), hi = std::max(a, c);
				SplitMix64 rng = stream(p.seed, kMeet, lo * 0x100000001b3ULL ^ hi, loc * 0x10000 + overlap.start);
				if (rng.unit() < static_cast<double>(overlap.length()) / 6.0)
					meetings[{lo, hi}].push_back(overlap);
			}
		}
	}
	for (const auto &[pair, when] : meetings) {
		auto [a, c] = pair;
		for (auto [from, to] : {std::pair{a, c}, std::pair{c, a}}) {
			std::string edge = "m-" + person_id(from) + "-" + person_id(to);
			b.edge(edge, "meets", person_id(from), person_id(to));
			for (const auto &iv : when)
				b.exists(edge, iv);
		}
	}
	return b.build();
}

} // namespace trpq
