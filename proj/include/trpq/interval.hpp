// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace trpq {

using TimePoint = std::uint64_t;

inline constexpr TimePoint kTimeMax = std::numeric_limits<TimePoint>::max();

/// Closed interval [start, end] of time points.
struct Interval {
	TimePoint start = 0;
	TimePoint end = 0;

	bool contains(TimePoint t) const { return start <= t && t <= end; }
	/// Point count, saturating at kTimeMax for the full 64-bit range.
	TimePoint length() const { return end - start == kTimeMax ? kTimeMax : end - start + 1; }

	friend bool operator==(const Interval &, const Interval &) = default;
	friend auto operator<=>(const Interval &, const Interval &) = default;
};

struct ValuedInterval {
	std::string value;
	Interval interval;

	friend bool operator==(const ValuedInterval &, const ValuedInterval &) = default;
};

bool occurs_during(const Interval &a, const Interval &b);
bool meets(const Interval &a, const Interval &b);
bool before(const Interval &a, const Interval &b);

/// Ordered interval sequence. Most operations assume the coalesced form,
/// which coalesce() produces; the raw constructor keeps input as given so
/// that malformed families can be represented and reported by validation.
class IntervalFamily {
public:
	IntervalFamily() = default;
	explicit IntervalFamily(std::vector<Interval> items) : items_(std::move(items)) {}

	static IntervalFamily single(Interval i) { return IntervalFamily({i}); }

	const std::vector<Interval> &items() const { return items_; }
	bool empty() const { return items_.empty(); }
	std::size_t size() const { return items_.size(); }

	bool is_coalesced() const;
	bool contains(TimePoint t) const;
	/// Number of covered points, saturating.
	TimePoint point_count() const;

	IntervalFamily unite(const IntervalFamily &other) const;
	IntervalFamily intersect(const IntervalFamily &other) const;
	IntervalFamily subtract(const IntervalFamily &other) const;
	IntervalFamily complement(const Interval &omega) const;
	/// {t + d | t in this, lo <= d <= hi} clipped to omega; hi may be kTimeMax for "unbounded".
	IntervalFamily shift_forward(TimePoint lo, TimePoint hi, const Interval &omega) const;
	/// {t - d | t in this, lo <= d <= hi} clipped to omega.
	IntervalFamily shift_backward(TimePoint lo, TimePoint hi, const Interval &omega) const;

	friend bool operator==(const IntervalFamily &, const IntervalFamily &) = default;

private:
	std::vector<Interval> items_;
};

IntervalFamily coalesce(std::vector<Interval> intervals);
bool family_contained(const IntervalFamily &f1, const IntervalFamily &f2);

class ValuedIntervalFamily {
public:
	ValuedIntervalFamily() = default;
	explicit ValuedIntervalFamily(std::vector<ValuedInterval> items) : items_(std::move(items)) {}

	const std::vector<ValuedInterval> &items() const { return items_; }
	bool empty() const { return items_.empty(); }

	bool is_coalesced() const;
	std::optional<std::string> value_at(TimePoint t) const;
	/// Points carrying exactly this value.
	IntervalFamily points_with(const std::string &value) const;
	/// Points carrying any value.
	IntervalFamily support() const;

	friend bool operator==(const ValuedIntervalFamily &, const ValuedIntervalFamily &) = default;

private:
	std::vector<ValuedInterval> items_;
};

/// Throws ConflictingValue when one point receives two distinct values.
ValuedIntervalFamily coalesce_valued(std::vector<ValuedInterval> items);

} // namespace trpq
