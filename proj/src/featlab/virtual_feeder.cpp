#include "ltlf/featlab/virtual_feeder.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ltlf/error.hpp"

namespace ltlf::featlab {

std::string virtual_feeder_id(std::vector<std::string> member_ids) {
    std::sort(member_ids.begin(), member_ids.end());
    std::string id;
    for (const auto& m : member_ids) {
        if (!id.empty()) id += '+';
        id += m;
    }
    return id;
}

FeederYearRecord build_virtual_feeder(std::span<const FeederYearRecord> members) {
    if (members.size() < 2) throw DomainError("a virtual feeder needs at least two members");

    std::vector<const FeederYearRecord*> sorted;
    for (const auto& m : members) sorted.push_back(&m);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->feeder_id < b->feeder_id; });

    const int year = sorted.front()->year;
    const bool has_der = sorted.front()->der_growth.has_value();
    const bool has_ev = sorted.front()->ev_growth.has_value();
    double peak_sum = 0.0, lc_sum = 0.0, der_sum = 0.0, ev_sum = 0.0;
    double res_weighted = 0.0, com_weighted = 0.0;
    std::vector<std::string> ids;
    for (const auto* m : sorted) {
        if (m->year != year) throw ConsistencyError("virtual feeder members come from different years");
        if (m->der_growth.has_value() != has_der || m->ev_growth.has_value() != has_ev) {
            throw ConsistencyError("virtual feeder members disagree on optional DER/EV features");
        }
        peak_sum += m->peak_demand;
        lc_sum += m->large_customer_net_change;
        res_weighted += m->residential_pct * m->peak_demand;
        com_weighted += m->commercial_pct * m->peak_demand;
        if (has_der) der_sum += *m->der_growth;
        if (has_ev) ev_sum += *m->ev_growth;
        ids.push_back(m->feeder_id);
    }

    const double p = static_cast<double>(sorted.size());
    FeederYearRecord v;
    v.feeder_id = virtual_feeder_id(ids);
    v.year = year;
    v.peak_demand = peak_sum / p;
    v.large_customer_net_change = lc_sum / p;
    // p * P_V equals the member peak sum
    v.residential_pct = res_weighted / (p * v.peak_demand);
    v.commercial_pct = com_weighted / (p * v.peak_demand);
    v.industrial_pct = 1.0 - v.residential_pct - v.commercial_pct;
    if (has_der) v.der_growth = der_sum / p;
    if (has_ev) v.ev_growth = ev_sum / p;
    return v;
}

namespace {

struct DisjointSets {
    std::map<std::string, std::string> parent;

    const std::string& find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end()) it = parent.emplace(x, x).first;
        if (it->second == x) return it->second;
        it->second = find(it->second);
        return it->second;
    }

    void unite(const std::string& a, const std::string& b) {
        std::string ra = find(a);
        std::string rb = find(b);
        if (ra == rb) return;
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
    }
};

}  // namespace

ResolvedFeeders resolve_virtual_feeders(const FeederTable& feeders,
                                        std::span<const TransferEvent> events) {
    DisjointSets sets;
    for (const auto& ev : events) {
        ev.validate();
        for (const auto& id : ev.feeder_ids) {
            if (!feeders.contains(id)) {
                throw ConsistencyError("transfer log references unknown feeder " + id);
            }
        }
        for (std::size_t i = 1; i < ev.feeder_ids.size(); ++i) sets.unite(ev.feeder_ids[0], ev.feeder_ids[i]);
    }

    std::map<std::string, std::vector<std::string>> by_root;
    for (const auto& [id, root] : sets.parent) by_root[sets.find(id)].push_back(id);

    ResolvedFeeders out;
    std::set<std::string> grouped;
    for (auto& [root, members] : by_root) {
        std::sort(members.begin(), members.end());
        grouped.insert(members.begin(), members.end());

        std::set<int> years;
        for (const auto& [year, rec] : feeders.at(members.front())) years.insert(year);
        for (int year : years) {
            std::vector<FeederYearRecord> rows;
            for (const auto& m : members) {
                const auto& hist = feeders.at(m);
                auto it = hist.find(year);
                if (it == hist.end()) break;
                rows.push_back(it->second);
            }
            if (rows.size() != members.size()) continue;
            FeederYearRecord v = build_virtual_feeder(rows);
            out.table[v.feeder_id].emplace(year, std::move(v));
        }
        out.groups.push_back(members);
    }
    for (const auto& [id, hist] : feeders) {
        if (!grouped.contains(id)) out.table.emplace(id, hist);
    }
    return out;
}

}  // namespace ltlf::featlab
