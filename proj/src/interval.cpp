// SPDX-License-Identifier: Apache-2.0
#include "trpq/interval.hpp"

#include "trpq/errors.hpp"

#include <algorithm>

namespace trpq {

bool occurs_during(const Interval &a, const Interval &b) {
	return b.start <= a.start && a.end <= b.end;
}

bool meets(const Interval &a, const Interval &b) {
	return a.end != kTimeMax && a.end + 1 == b.start;
}

bool before(const Interval &a, const Interval &b) {
	return a.end != kTimeMax && a.end + 1 < b.start;
}

bool IntervalFamily::is_coalesced() const {
	for (std::size_t i = 0; i < items_.size(); ++i) {
		if (items_[i].start > items_[i].end)
			return false;
		if (i > 0 && !before(items_[i - 1], items_[i]))
			return false;
	}
	return true;
}

bool IntervalFamily::contains(TimePoint t) const {
	auto it = std::upper_bound(items_.begin(), items_.end(), t,
	                           [](TimePoint v, const Interval &i) { return v < i.start; });
	if (it == items_.begin())
		return false;
	return std::prev(it)->contains(t);
}

TimePoint IntervalFamily::point_count() const {
	TimePoint total = 0;
	for (const auto &i : items_) {
		TimePoint len = i.length();
		if (kTimeMax - total < len)
			return kTimeMax;
		total += len;
	}
	return total;
}

IntervalFamily coalesce(std::vector<Interval> intervals) {
	std::sort(intervals.begin(), intervals.end());
	std::vector<Interval> out;
	out.reserve(intervals.size());
	for (const auto &i : intervals) {
		if (!out.empty() && (out.back().end == kTimeMax || i.start <= out.back().end + 1)) {
			out.back().end = std::max(out.back().end, i.end);
		} else {
			out.push_back(i);
		}
	}
	return IntervalFamily(std::move(out));
}

IntervalFamily IntervalFamily::unite(const IntervalFamily &other) const {
	if (other.empty())
		return *this;
	if (empty())
		return other;
	std::vector<Interval> all;
	all.reserve(items_.size() + other.items_.size());
	std::merge(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(), std::back_inserter(all));
	return coalesce(std::move(all));
}

IntervalFamily IntervalFamily::intersect(const IntervalFamily &other) const {
	std::vector<Interval> out;
	std::size_t i = 0, j = 0;
	while (i < items_.size() && j < other.items_.size()) {
		const auto &a = items_[i];
		const auto &b = other.items_[j];
		TimePoint lo = std::max(a.start, b.start);
		TimePoint hi = std::min(a.end, b.end);
		if (lo <= hi)
			out.push_back({lo, hi});
		if (a.end < b.end)
			++i;
		else
			++j;
	}
	return IntervalFamily(std::move(out));
}

IntervalFamily IntervalFamily::complement(const Interval &omega) const {
	std::vector<Interval> out;
	TimePoint cursor = omega.start;
	bool open = true;
	for (const auto &i : items_) {
		if (i.end < omega.start || i.start > omega.end)
			continue;
		if (i.start > cursor)
			out.push_back({cursor, i.start - 1});
		if (i.end >= omega.end) {
			open = false;
			break;
		}
		cursor = std::max(cursor, i.end + 1);
	}
	if (open && cursor <= omega.end)
		out.push_back({cursor, omega.end});
	return IntervalFamily(std::move(out));
}

IntervalFamily IntervalFamily::subtract(const IntervalFamily &other) const {
	if (empty() || other.empty())
		return *this;
	Interval hull{items_.front().start, items_.back().end};
	return intersect(other.complement(hull));
}

namespace {

TimePoint sat_add(TimePoint a, TimePoint b) {
	return kTimeMax - a < b ? kTimeMax : a + b;
}

} // namespace

IntervalFamily IntervalFamily::shift_forward(TimePoint lo, TimePoint hi, const Interval &omega) const {
	std::vector<Interval> out;
	for (const auto &i : items_) {
		if (kTimeMax - i.start < lo)
			break;
		TimePoint s = std::max(i.start + lo, omega.start);
		TimePoint e = std::min(sat_add(i.end, hi), omega.end);
		if (s <= e)
			out.push_back({s, e});
	}
	return coalesce(std::move(out));
}

IntervalFamily IntervalFamily::shift_backward(TimePoint lo, TimePoint hi, const Interval &omega) const {
	std::vector<Interval> out;
	for (const auto &i : items_) {
		if (i.end < lo)
			continue;
		TimePoint s = std::max(i.start >= hi ? i.start - hi : 0, omega.start);
		TimePoint e = std::min(i.end - lo, omega.end);
		if (s <= e)
			out.push_back({s, e});
	}
	return coalesce(std::move(out));
}

bool family_contained(const IntervalFamily &f1, const IntervalFamily &f2) {
	const auto &outer = f2.items();
	for (const auto &i : f1.items()) {
		auto it = std::upper_bound(outer.begin(), outer.end(), i.start,
		                           [](TimePoint v, const Interval &x) { return v < x.start; });
		if (it == outer.begin() || !occurs_during(i, *std::prev(it)))
			return false;
	}
	return true;
}

bool ValuedIntervalFamily::is_coalesced() const {
	for (std::size_t i = 0; i < items_.size(); ++i) {
		const auto &cur = items_[i].interval;
		if (cur.start > cur.end)
			return false;
		if (i == 0)
			continue;
		const auto &prev = items_[i - 1];
		if (before(prev.interval, cur))
			continue;
		if (meets(prev.interval, cur) && prev.value != items_[i].value)
			continue;
		return false;
	}
	return true;
}

std::optional<std::string> ValuedIntervalFamily::value_at(TimePoint t) const {
	auto it = std::upper_bound(items_.begin(), items_.end(), t,
	                           [](TimePoint v, const ValuedInterval &i) { return v < i.interval.start; });
	if (it == items_.begin())
		return std::nullopt;
	--it;
	if (!it->interval.contains(t))
		return std::nullopt;
	return it->value;
}

IntervalFamily ValuedIntervalFamily::points_with(const std::string &value) const {
	std::vector<Interval> out;
	for (const auto &vi : items_)
		if (vi.value == value)
			out.push_back(vi.interval);
	return coalesce(std::move(out));
}

IntervalFamily ValuedIntervalFamily::support() const {
	std::vector<Interval> out;
	out.reserve(items_.size());
	for (const auto &vi : items_)
		out.push_back(vi.interval);
	return coalesce(std::move(out));
}

ValuedIntervalFamily coalesce_valued(std::vector<ValuedInterval> items) {
	std::sort(items.begin(), items.end(), [](const ValuedInterval &a, const ValuedInterval &b) {
		if (a.interval.start != b.interval.start)
			return a.interval.start < b.interval.start;
		return a.interval.end < b.interval.end;
	});
	std::vector<ValuedInterval> out;
	for (auto &vi : items) {
		if (out.empty()) {
			out.push_back(std::move(vi));
			continue;
		}
		auto &last = out.back();
		bool overlaps = vi.interval.start <= last.interval.end;
		if (overlaps && vi.value != last.value)
			throw ConflictingValue("time point " + std::to_string(vi.interval.start) + " has values '" + last.value +
			                       "' and '" + vi.value + "'");
		if (vi.value == last.value && (overlaps || meets(last.interval, vi.interval))) {
			last.interval.end = std::max(last.interval.end, vi.interval.end);
		} else {
			out.push_back(std::move(vi));
		}
	}
	return ValuedIntervalFamily(std::move(out));
}

} // namespace trpq
