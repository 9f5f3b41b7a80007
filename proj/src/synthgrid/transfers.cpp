#include <algorithm>
#include <cmath>

#include "ltlf/error.hpp"
#include "ltlf/random.hpp"
#include "ltlf/synthgrid.hpp"

namespace ltlf::synthgrid {

namespace {
constexpr std::uint64_t kTransferStream = 2;
}

TransferPlan plan_transfers(const SynthConfig& config, const FeederTable& feeders) {
    TransferPlan plan;
    if (config.transfer_fraction <= 0.0 || feeders.size() < 2) return plan;

    Rng rng(derive_seed(config.seed, kTransferStream));
    std::vector<std::string> ids;
    for (const auto& [id, hist] : feeders) ids.push_back(id);
    rng.shuffle(std::span<std::string>(ids));

    const auto target = static_cast<std::size_t>(std::ceil(config.transfer_fraction * static_cast<double>(ids.size())));
    std::size_t used = 0;
    while (used + 2 <= ids.size() && used < target) {
        std::size_t p = 2;
        if (used + 3 <= ids.size() && rng.uniform() < config.multi_feeder_probability) p = 3;

        TransferEvent ev;
        ev.feeder_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(used),
                             ids.begin() + static_cast<std::ptrdiff_t>(used + p));
        used += p;

        const auto& donor = feeders.at(ev.feeder_ids.front());
        const int first = donor.begin()->first;
        const int last = donor.rbegin()->first;
        // keep a couple of clean years on both sides of the switch
        ev.year = first + 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, last - first - 3))));
        double min_peak = donor.at(ev.year).peak_demand;
        for (const auto& [year, rec] : donor) {
            if (year >= ev.year) min_peak = std::min(min_peak, rec.peak_demand);
        }
        const double fraction = rng.uniform(config.transfer_min_fraction, config.transfer_max_fraction);
        plan.magnitudes.push_back(std::round(fraction * min_peak));
        plan.events.push_back(std::move(ev));
    }
    return plan;
}

InjectedGrid inject_load_transfers(const FeederTable& feeders, std::span<const TransferEvent> events,
                                   std::span<const double> magnitudes) {
    if (events.size() != magnitudes.size()) throw ShapeError("one magnitude per transfer event is required");

    std::vector<std::size_t> order(events.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return events[a].year < events[b].year; });

    InjectedGrid out{feeders, {}};
    for (std::size_t idx : order) {
        const TransferEvent& ev = events[idx];
        const double magnitude = magnitudes[idx];
        ev.validate();
        if (!(magnitude >= 0.0)) throw DomainError("transfer magnitude must be nonnegative");
        for (const auto& id : ev.feeder_ids) {
            if (!out.feeders.contains(id)) throw DomainError("transfer references unknown feeder " + id);
        }

        auto& donor = out.feeders.at(ev.feeder_ids.front());
        const double share = magnitude / static_cast<double>(ev.feeder_ids.size() - 1);
        for (auto& [year, drec] : donor) {
            if (year < ev.year) continue;
            if (!(magnitude < drec.peak_demand)) {
                throw DomainError("transfer of " + std::to_string(magnitude) + " A exceeds donor " +
                                  drec.feeder_id + " peak in " + std::to_string(year));
            }
        }
        for (auto& [year, drec] : donor) {
            if (year < ev.year) continue;
            double delivered = 0.0;
            for (std::size_t m = 1; m < ev.feeder_ids.size(); ++m) {
                auto& hist = out.feeders.at(ev.feeder_ids[m]);
                auto it = hist.find(year);
                if (it == hist.end()) continue;
                FeederYearRecord& r = it->second;
                const double new_peak = r.peak_demand + share;
                r.residential_pct = (r.residential_pct * r.peak_demand + drec.residential_pct * share) / new_peak;
                r.commercial_pct = (r.commercial_pct * r.peak_demand + drec.commercial_pct * share) / new_peak;
                r.industrial_pct = 1.0 - r.residential_pct - r.commercial_pct;
                r.peak_demand = new_peak;
                delivered += share;
            }
            // the slice keeps the donor's mix, so its shares are unchanged
            drec.peak_demand -= delivered;
        }
        out.log.push_back(ev);
    }
    return out;
}

}  // namespace ltlf::synthgrid
