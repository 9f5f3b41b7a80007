#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ltlf {

/// One feeder-year of bottom-up data. Composition values are fractions.
struct FeederYearRecord {
    std::string feeder_id;
    int year = 0;
    double peak_demand = 0.0;  // amperes
    double residential_pct = 0.0;
    double commercial_pct = 0.0;
    double industrial_pct = 0.0;
    double large_customer_net_change = 0.0;  // amperes, signed
    std::optional<double> der_growth;
    std::optional<double> ev_growth;

    /// Throws DomainError/ConsistencyError on broken invariants.
    void validate() const;
};

/// feeder id -> year -> record
using FeederTable = std::map<std::string, std::map<int, FeederYearRecord>>;

/// One region-year of top-down data.
struct RegionalYearRecord {
    int year = 0;
    std::vector<double> econ;  // columns named by RegionalHistory::econ_names
    double temperature = 0.0;  // seasonal max (summer) or min (winter), deg C
    std::optional<double> temperature_change;
};

struct RegionalHistory {
    std::vector<std::string> econ_names;
    std::map<int, RegionalYearRecord> years;

    /// Recomputes temperature_change from consecutive years; the change is
    /// empty when the prior year is missing.
    void update_temperature_changes();
};

/// Load moved between adjacent feeders from `year` onward.
struct TransferEvent {
    int year = 0;
    std::vector<std::string> feeder_ids;  // first entry is the donor

    void validate() const;
};

}  // namespace ltlf

namespace ltlf {

enum class Season { summer, winter };

std::string to_string(Season season);
Season parse_season(const std::string& text);

}  // namespace ltlf
