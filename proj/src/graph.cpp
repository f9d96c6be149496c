// SPDX-License-Identifier: Apache-2.0
#include "trpq/graph.hpp"

#include <algorithm>
#include <sstream>

namespace trpq {

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string &detail)
    : Error(detail), position_(position), expected_(std::move(expected)) {}

FormatError::FormatError(std::string file, std::size_t line, const std::string &detail)
    : Error(file + ":" + std::to_string(line) + ": " + detail), file_(std::move(file)), line_(line) {}

Topology::Topology(std::vector<ObjectInfo> objects) : objects_(std::move(objects)) {
	out_.resize(objects_.size());
	in_.resize(objects_.size());
	for (ObjectIndex i = 0; i < objects_.size(); ++i) {
		if (!index_.emplace(objects_[i].id, i).second)
			throw GraphError("duplicate object id '" + objects_[i].id + "'");
		if (objects_[i].kind == ObjectKind::Node)
			++node_count_;
	}
	for (ObjectIndex i = 0; i < objects_.size(); ++i) {
		const auto &o = objects_[i];
		if (o.kind != ObjectKind::Edge)
			continue;
		if (o.src >= objects_.size() || o.dst >= objects_.size() || !is_node(o.src) || !is_node(o.dst))
			throw GraphError("edge '" + o.id + "' has an endpoint that is not a node");
		out_[o.src].push_back(i);
		in_[o.dst].push_back(i);
	}
}

std::optional<ObjectIndex> Topology::find(const std::string &id) const {
	auto it = index_.find(id);
	if (it == index_.end())
		return std::nullopt;
	return it->second;
}

ObjectIndex Topology::require(const std::string &id) const {
	auto o = find(id);
	if (!o)
		throw GraphError("unknown object id '" + id + "'");
	return *o;
}

Itpg::Itpg(Interval omega, std::shared_ptr<const Topology> topology, std::vector<IntervalFamily> xi,
           std::vector<PropertyMap> sigma)
    : omega_(omega), topology_(std::move(topology)), xi_(std::move(xi)), sigma_(std::move(sigma)) {
	if (xi_.size() != topology_->size() || sigma_.size() != topology_->size())
		throw GraphError("existence/property tables do not match the object count");
}

const ValuedIntervalFamily *Itpg::property(ObjectIndex o, const std::string &p) const {
	auto it = sigma_[o].find(p);
	return it == sigma_[o].end() ? nullptr : &it->second;
}

bool operator==(const Itpg &a, const Itpg &b) {
	return a.omega_ == b.omega_ && *a.topology_ == *b.topology_ && a.xi_ == b.xi_ && a.sigma_ == b.sigma_;
}

ItpgBuilder &ItpgBuilder::omega(Interval omega) {
	omega_ = omega;
	return *this;
}

ItpgBuilder &ItpgBuilder::node(const std::string &id, const std::string &label) {
	if (!objects_.emplace(id, PendingObject{ObjectKind::Node, label, {}, {}}).second)
		throw GraphError("duplicate object id '" + id + "'");
	return *this;
}

ItpgBuilder &ItpgBuilder::edge(const std::string &id, const std::string &label, const std::string &src,
                               const std::string &dst) {
	if (!objects_.emplace(id, PendingObject{ObjectKind::Edge, label, src, dst}).second)
		throw GraphError("duplicate object id '" + id + "'");
	return *this;
}

ItpgBuilder &ItpgBuilder::exists(const std::string &id, Interval i) {
	existence_[id].push_back(i);
	return *this;
}

ItpgBuilder &ItpgBuilder::property(const std::string &id, const std::string &prop, const std::string &value,
                                   Interval i) {
	properties_[id][prop].push_back({value, i});
	return *this;
}

Itpg ItpgBuilder::build(bool normalize) const {
	std::vector<std::string> ids;
	for (const auto &[id, _] : objects_)
		ids.push_back(id);
	auto position = [&](const std::string &id) -> ObjectIndex {
		auto it = std::lower_bound(ids.begin(), ids.end(), id);
		if (it == ids.end() || *it != id)
			throw GraphError("unknown object id '" + id + "'");
		return static_cast<ObjectIndex>(it - ids.begin());
	};

	std::vector<ObjectInfo> infos;
	infos.reserve(ids.size());
	for (const auto &[id, p] : objects_) {
		ObjectInfo info{id, p.kind, p.label, 0, 0};
		if (p.kind == ObjectKind::Edge) {
			info.src = position(p.src);
			info.dst = position(p.dst);
		}
		infos.push_back(std::move(info));
	}
	auto topology = std::make_shared<const Topology>(std::move(infos));

	std::vector<IntervalFamily> xi(ids.size());
	for (const auto &[id, intervals] : existence_) {
		for (const auto &i : intervals)
			if (i.start > i.end)
				throw GraphError("interval with start after end on '" + id + "'");
		xi[position(id)] = normalize ? coalesce(intervals) : IntervalFamily(intervals);
	}
	std::vector<PropertyMap> sigma(ids.size());
	for (const auto &[id, props] : properties_) {
		auto o = position(id);
		for (const auto &[prop, items] : props) {
			for (const auto &vi : items)
				if (vi.interval.start > vi.interval.end)
					throw GraphError("interval with start after end on '" + id + "'");
			sigma[o][prop] = normalize ? coalesce_valued(items) : ValuedIntervalFamily(items);
		}
	}
	return Itpg(omega_, std::move(topology), std::move(xi), std::move(sigma));
}

Tpg::Tpg(TimePoint omega_start, std::size_t points, std::shared_ptr<const Topology> topology)
    : start_(omega_start), points_(points), topology_(std::move(topology)) {
	xi_.assign(topology_->size(), std::vector<bool>(points_, false));
	sigma_.resize(topology_->size());
}

std::optional<std::string> Tpg::property(ObjectIndex o, const std::string &p, TimePoint t) const {
	auto it = sigma_[o].find(p);
	if (it == sigma_[o].end())
		return std::nullopt;
	return it->second[t - start_];
}

void Tpg::set_property(ObjectIndex o, const std::string &p, TimePoint t, std::optional<std::string> v) {
	auto &column = sigma_[o][p];
	if (column.empty())
		column.resize(points_);
	column[t - start_] = std::move(v);
}

std::string ValidationReport::to_string() const {
	std::ostringstream out;
	for (const auto &v : violations)
		out << v.object << ": " << v.detail << "\n";
	return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : Error("graph failed validation:\n" + report.to_string()), report_(std::move(report)) {}

ValidationReport validate_itpg(const Itpg &g) {
	ValidationReport report;
	const auto &topo = g.topology();
	const Interval omega = g.omega();
	auto add = [&](Violation::Kind k, const std::string &id, std::string detail) {
		report.violations.push_back({k, id, std::move(detail)});
	};
	if (omega.start > omega.end)
		add(Violation::Kind::EmptyOmega, "", "temporal domain has start after end");

	auto within_omega = [&](const Interval &i) { return occurs_during(i, omega); };

	for (ObjectIndex o = 0; o < topo.size(); ++o) {
		const auto &id = topo.at(o).id;
		const auto &xi = g.existence(o);
		if (!xi.is_coalesced())
			add(Violation::Kind::NotCoalesced, id, "existence family is not coalesced");
		for (const auto &i : xi.items())
			if (!within_omega(i)) {
				add(Violation::Kind::OutsideOmega, id, "existence interval outside the temporal domain");
				break;
			}
		if (topo.is_edge(o)) {
			const auto &info = topo.at(o);
			if (!family_contained(xi, g.existence(info.src)))
				add(Violation::Kind::EdgeContainment, id,
				    "edge existence not contained in source '" + topo.at(info.src).id + "'");
			if (!family_contained(xi, g.existence(info.dst)))
				add(Violation::Kind::EdgeContainment, id,
				    "edge existence not contained in target '" + topo.at(info.dst).id + "'");
		}
		for (const auto &[prop, fam] : g.properties(o)) {
			if (!fam.is_coalesced())
				add(Violation::Kind::NotCoalesced, id, "property '" + prop + "' family is not coalesced");
			for (const auto &vi : fam.items()) {
				if (!within_omega(vi.interval)) {
					add(Violation::Kind::OutsideOmega, id, "property '" + prop + "' interval outside the temporal domain");
					break;
				}
			}
			for (const auto &vi : fam.items()) {
				if (!family_contained(IntervalFamily::single(vi.interval), xi)) {
					add(Violation::Kind::PropertyContainment, id,
					    "property '" + prop + "' defined while the object does not exist");
					break;
				}
			}
		}
	}
	return report;
}

ValidationReport validate_tpg(const Tpg &g) {
	ValidationReport report;
	const auto &topo = g.topology();
	for (ObjectIndex o = 0; o < topo.size(); ++o) {
		const auto &info = topo.at(o);
		for (std::size_t k = 0; k < g.points(); ++k) {
			TimePoint t = g.omega_start() + k;
			if (info.kind == ObjectKind::Edge && g.exists(o, t) && (!g.exists(info.src, t) || !g.exists(info.dst, t))) {
				report.violations.push_back({Violation::Kind::EdgeContainment, info.id,
				                             "edge alive at " + std::to_string(t) + " with a dead endpoint"});
				break;
			}
		}
		for (const auto &[prop, column] : g.properties(o)) {
			for (std::size_t k = 0; k < column.size(); ++k) {
				if (column[k] && !g.exists(o, g.omega_start() + k)) {
					report.violations.push_back({Violation::Kind::PropertyContainment, info.id,
					                             "property '" + prop + "' defined at " +
					                                 std::to_string(g.omega_start() + k) +
					                                 " while the object does not exist"});
					break;
				}
			}
		}
	}
	return report;
}

Tpg canonical_translation(const Itpg &g, std::size_t max_points) {
	const Interval omega = g.omega();
	TimePoint span = omega.end - omega.start;
	if (span >= max_points)
		throw DomainTooLarge("temporal domain [" + std::to_string(omega.start) + "," + std::to_string(omega.end) +
		                     "] exceeds the expansion cap of " + std::to_string(max_points) + " points");
	Tpg out(omega.start, static_cast<std::size_t>(span) + 1, g.topology_ptr());
	for (ObjectIndex o = 0; o < g.object_count(); ++o) {
		const IntervalFamily alive = g.existence(o).intersect(IntervalFamily::single(omega));
		for (const auto &i : alive.items())
			for (TimePoint t = i.start;; ++t) {
				out.set_exists(o, t, true);
				if (t == i.end)
					break;
			}
		for (const auto &[prop, fam] : g.properties(o))
			for (const auto &vi : fam.items()) {
				TimePoint lo = std::max(vi.interval.start, omega.start);
				TimePoint hi = std::min(vi.interval.end, omega.end);
				for (TimePoint t = lo; lo <= hi; ++t) {
					out.set_property(o, prop, t, vi.value);
					if (t == hi)
						break;
				}
			}
	}
	return out;
}

Itpg compress(const Tpg &g) {
	const auto &topo = g.topology();
	std::vector<IntervalFamily> xi(topo.size());
	std::vector<PropertyMap> sigma(topo.size());
	for (ObjectIndex o = 0; o < topo.size(); ++o) {
		std::vector<Interval> runs;
		for (std::size_t k = 0; k < g.points(); ++k) {
			TimePoint t = g.omega_start() + k;
			if (!g.exists(o, t))
				continue;
			if (!runs.empty() && runs.back().end + 1 == t)
				runs.back().end = t;
			else
				runs.push_back({t, t});
		}
		xi[o] = IntervalFamily(std::move(runs));
		for (const auto &[prop, column] : g.properties(o)) {
			std::vector<ValuedInterval> items;
			for (std::size_t k = 0; k < column.size(); ++k) {
				if (!column[k])
					continue;
				TimePoint t = g.omega_start() + k;
				if (!items.empty() && items.back().interval.end + 1 == t && items.back().value == *column[k])
					items.back().interval.end = t;
				else
					items.push_back({*column[k], {t, t}});
			}
			if (!items.empty())
				sigma[o][prop] = ValuedIntervalFamily(std::move(items));
		}
	}
	return Itpg({g.omega_start(), g.omega_end()}, g.topology_ptr(), std::move(xi), std::move(sigma));
}

bool exists_at(const Itpg &g, ObjectIndex o, TimePoint t) {
	return g.existence(o).contains(t);
}

std::optional<std::string> property_at(const Itpg &g, ObjectIndex o, const std::string &p, TimePoint t) {
	const auto *fam = g.property(o, p);
	if (!fam)
		return std::nullopt;
	return fam->value_at(t);
}

} // namespace trpq
