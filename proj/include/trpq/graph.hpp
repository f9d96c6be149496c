// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trpq/errors.hpp"
#include "trpq/interval.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace trpq {

enum class ObjectKind : std::uint8_t { Node, Edge };

using ObjectIndex = std::uint32_t;

struct ObjectInfo {
	std::string id;
	ObjectKind kind = ObjectKind::Node;
	std::string label;
	// Endpoints, meaningful for edges only.
	ObjectIndex src = 0;
	ObjectIndex dst = 0;

	friend bool operator==(const ObjectInfo &, const ObjectInfo &) = default;
};

/// Objects, labels and incidence shared by the point and interval models.
/// Objects are ordered by id; that order is the canonical object order.
class Topology {
public:
	explicit Topology(std::vector<ObjectInfo> objects);

	std::size_t size() const { return objects_.size(); }
	std::size_t node_count() const { return node_count_; }
	std::size_t edge_count() const { return objects_.size() - node_count_; }

	const ObjectInfo &at(ObjectIndex o) const { return objects_[o]; }
	const std::vector<ObjectInfo> &objects() const { return objects_; }
	bool is_node(ObjectIndex o) const { return objects_[o].kind == ObjectKind::Node; }
	bool is_edge(ObjectIndex o) const { return objects_[o].kind == ObjectKind::Edge; }
	std::optional<ObjectIndex> find(const std::string &id) const;
	ObjectIndex require(const std::string &id) const;

	const std::vector<ObjectIndex> &out_edges(ObjectIndex node) const { return out_[node]; }
	const std::vector<ObjectIndex> &in_edges(ObjectIndex node) const { return in_[node]; }

	friend bool operator==(const Topology &a, const Topology &b) { return a.objects_ == b.objects_; }

private:
	std::vector<ObjectInfo> objects_;
	std::unordered_map<std::string, ObjectIndex> index_;
	std::vector<std::vector<ObjectIndex>> out_;
	std::vector<std::vector<ObjectIndex>> in_;
	std::size_t node_count_ = 0;
};

class GraphError : public Error {
public:
	using Error::Error;
};

using PropertyMap = std::map<std::string, ValuedIntervalFamily>;

/// Interval-timestamped temporal property graph. Immutable once built.
class Itpg {
public:
	Itpg(Interval omega, std::shared_ptr<const Topology> topology, std::vector<IntervalFamily> xi,
	     std::vector<PropertyMap> sigma);

	const Interval &omega() const { return omega_; }
	const Topology &topology() const { return *topology_; }
	std::shared_ptr<const Topology> topology_ptr() const { return topology_; }
	std::size_t object_count() const { return topology_->size(); }

	const IntervalFamily &existence(ObjectIndex o) const { return xi_[o]; }
	const PropertyMap &properties(ObjectIndex o) const { return sigma_[o]; }
	const ValuedIntervalFamily *property(ObjectIndex o, const std::string &p) const;

	friend bool operator==(const Itpg &a, const Itpg &b);

private:
	Interval omega_;
	std::shared_ptr<const Topology> topology_;
	std::vector<IntervalFamily> xi_;
	std::vector<PropertyMap> sigma_;
};

class ItpgBuilder {
public:
	ItpgBuilder &omega(Interval omega);
	ItpgBuilder &node(const std::string &id, const std::string &label);
	ItpgBuilder &edge(const std::string &id, const std::string &label, const std::string &src,
	                  const std::string &dst);
	ItpgBuilder &exists(const std::string &id, Interval i);
	ItpgBuilder &property(const std::string &id, const std::string &prop, const std::string &value, Interval i);

	/// With normalize, families are coalesced (ConflictingValue on clashes);
	/// otherwise they are kept in input order.
	Itpg build(bool normalize = true) const;

private:
	struct PendingObject {
		ObjectKind kind;
		std::string label, src, dst;
	};
	Interval omega_{0, 0};
	std::map<std::string, PendingObject> objects_;
	std::map<std::string, std::vector<Interval>> existence_;
	std::map<std::string, std::map<std::string, std::vector<ValuedInterval>>> properties_;
};

/// Point-timestamped temporal property graph over Ω = [start, start + points - 1].
class Tpg {
public:
	Tpg(TimePoint omega_start, std::size_t points, std::shared_ptr<const Topology> topology);

	TimePoint omega_start() const { return start_; }
	std::size_t points() const { return points_; }
	TimePoint omega_end() const { return start_ + points_ - 1; }
	bool in_omega(TimePoint t) const { return t >= start_ && t - start_ < points_; }
	const Topology &topology() const { return *topology_; }
	std::shared_ptr<const Topology> topology_ptr() const { return topology_; }
	std::size_t object_count() const { return topology_->size(); }

	bool exists(ObjectIndex o, TimePoint t) const { return xi_[o][t - start_]; }
	void set_exists(ObjectIndex o, TimePoint t, bool v) { xi_[o][t - start_] = v; }
	std::optional<std::string> property(ObjectIndex o, const std::string &p, TimePoint t) const;
	void set_property(ObjectIndex o, const std::string &p, TimePoint t, std::optional<std::string> v);
	const std::map<std::string, std::vector<std::optional<std::string>>> &properties(ObjectIndex o) const {
		return sigma_[o];
	}

private:
	TimePoint start_;
	std::size_t points_;
	std::shared_ptr<const Topology> topology_;
	std::vector<std::vector<bool>> xi_;
	std::vector<std::map<std::string, std::vector<std::optional<std::string>>>> sigma_;
};

struct Violation {
	enum class Kind { NotCoalesced, OutsideOmega, EdgeContainment, PropertyContainment, EmptyOmega };
	Kind kind;
	std::string object;
	std::string detail;
};

struct ValidationReport {
	std::vector<Violation> violations;
	bool ok() const { return violations.empty(); }
	std::string to_string() const;
};

class ValidationError : public Error {
public:
	explicit ValidationError(ValidationReport report);
	const ValidationReport &report() const { return report_; }

private:
	ValidationReport report_;
};

ValidationReport validate_itpg(const Itpg &g);
ValidationReport validate_tpg(const Tpg &g);

inline constexpr std::size_t kDefaultExpansionCap = std::size_t{1} << 20;

/// Throws DomainTooLarge when |Ω| exceeds the point cap.
Tpg canonical_translation(const Itpg &g, std::size_t max_points = kDefaultExpansionCap);
/// Inverse of canonical_translation: per-object and per-property coalescing.
Itpg compress(const Tpg &g);

/// A pair (object, time point).
struct TemporalObject {
	ObjectIndex object = 0;
	TimePoint time = 0;

	friend bool operator==(const TemporalObject &, const TemporalObject &) = default;
	friend auto operator<=>(const TemporalObject &, const TemporalObject &) = default;
};

/// Member (o, t, o', t') of a query result.
struct BindingTuple {
	TemporalObject from;
	TemporalObject to;

	friend bool operator==(const BindingTuple &, const BindingTuple &) = default;
	friend auto operator<=>(const BindingTuple &, const BindingTuple &) = default;
};

bool exists_at(const Itpg &g, ObjectIndex o, TimePoint t);
std::optional<std::string> property_at(const Itpg &g, ObjectIndex o, const std::string &p, TimePoint t);

} // namespace trpq
