// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trpq/graph.hpp"
#include "trpq/hardness.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace trpq {

/// Throws FormatError for malformed files and ValidationError when the graph
/// does not validate.
Itpg load_bundle(const std::filesystem::path &dir);
/// Canonical output: sorted rows, LF endings. Throws IoError on write
/// failures and on values outside [A-Za-z0-9_.-].
void save_bundle(const Itpg &g, const std::filesystem::path &dir);

bool valid_token(const std::string &s);

/// Bundle plus `instance.txt` holding expr, tuple and expected value.
void save_instance(const ReductionInstance &inst, const std::filesystem::path &dir);
ReductionInstance load_instance(const std::filesystem::path &dir);

struct GenParams {
	std::uint64_t persons = 100;
	std::uint64_t rooms = 10;
	std::uint64_t timepoints = 48;
	double positivity_rate = 0.05;
	double highrisk_rate = 0.18;
	std::uint64_t meet_locations = 5;
	std::uint64_t seed = 1;
};

/// Throws std::invalid_argument for out-of-range parameters.
Itpg gen_contact_graph(const GenParams &p);

/// Person ids are zero-padded so lexicographic and numeric order agree.
std::string person_id(std::uint64_t index);
std::string room_id(std::uint64_t index);

} // namespace trpq
