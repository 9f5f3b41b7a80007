#include "ltlf/featlab/composition.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ltlf/error.hpp"
#include "ltlf/records.hpp"

namespace ltlf {

void FeederYearRecord::validate() const {
    if (!(peak_demand > 0.0)) {
        throw DomainError("feeder " + feeder_id + " year " + std::to_string(year) +
                          ": peak demand must be positive");
    }
    for (double share : {residential_pct, commercial_pct, industrial_pct}) {
        if (!(share >= -1e-12 && share <= 1.0 + 1e-12)) {
            throw DomainError("feeder " + feeder_id + " year " + std::to_string(year) +
                              ": composition share outside [0,1]");
        }
    }
    if (std::abs(residential_pct + commercial_pct + industrial_pct - 1.0) > 1e-9) {
        throw ConsistencyError("feeder " + feeder_id + " year " + std::to_string(year) +
                               ": composition does not sum to 1");
    }
    if ((der_growth && *der_growth < 0.0) || (ev_growth && *ev_growth < 0.0)) {
        throw DomainError("feeder " + feeder_id + ": DER/EV growth must be nonnegative");
    }
}

void RegionalHistory::update_temperature_changes() {
    for (auto& [year, rec] : years) {
        auto prev = years.find(year - 1);
        if (prev != years.end()) {
            rec.temperature_change = rec.temperature - prev->second.temperature;
        } else {
            rec.temperature_change.reset();
        }
    }
}

void TransferEvent::validate() const {
    if (feeder_ids.size() < 2) throw DomainError("a transfer event involves at least two feeders");
    for (std::size_t i = 0; i < feeder_ids.size(); ++i) {
        for (std::size_t j = i + 1; j < feeder_ids.size(); ++j) {
            if (feeder_ids[i] == feeder_ids[j]) {
                throw DomainError("transfer event lists feeder " + feeder_ids[i] + " twice");
            }
        }
    }
}

namespace featlab {

Composition load_composition(double feeder_peak, std::span<const double> residential_loads,
                             std::span<const double> commercial_loads) {
    if (!(feeder_peak > 0.0)) throw DomainError("feeder peak must be positive");
    const double res = std::accumulate(residential_loads.begin(), residential_loads.end(), 0.0);
    const double com = std::accumulate(commercial_loads.begin(), commercial_loads.end(), 0.0);
    if (res + com > feeder_peak * (1.0 + 1e-12)) {
        throw ConsistencyError("residential plus commercial load exceeds the feeder peak");
    }
    Composition c;
    c.residential = res / feeder_peak;
    c.commercial = com / feeder_peak;
    c.industrial = 1.0 - c.residential - c.commercial;
    return c;
}

}  // namespace featlab
}  // namespace ltlf
