#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltlf/records.hpp"

namespace ltlf::synthgrid {

/// Parameters of the synthetic feeder grid. Every random draw comes from
/// mt19937_64 streams derived from `seed`, so a config reproduces the same
/// dataset on any platform with IEEE doubles.
struct SynthConfig {
    int n_feeders = 60;
    int years = 14;
    int first_year = 2004;
    std::uint64_t seed = 1;
    Season season = Season::summer;

    // regional drivers, percent per year (net migration in thousands)
    double gdp_mean = 2.5, gdp_sd = 3.0;
    double employment_mean = 1.5, employment_sd = 1.5;
    double population_mean = 2.0, population_sd = 0.6;
    double migration_mean = 14.0, migration_sd = 6.0;
    /// AR(1) persistence of the common economic factor.
    double factor_persistence = 0.5;
    /// Share of each driver's variance that is column-specific noise.
    double idiosyncratic_share = 0.2;

    // seasonal extreme temperature, deg C
    double temperature_mean = 33.0;
    double temperature_sd = 1.5;

    // feeders
    double base_peak_min = 250.0, base_peak_max = 600.0;
    double residential_min = 0.4, residential_max = 0.9;
    double commercial_max = 0.4;
    double growth_sensitivity_min = 0.6, growth_sensitivity_max = 1.4;
    /// Fractional peak change per deg C above the seasonal mean (summer) or
    /// below it (winter).
    double temperature_sensitivity_min = 0.01, temperature_sensitivity_max = 0.03;
    double composition_drift = 0.005;
    double noise = 0.01;  // relative sd of the peak
    double large_customer_probability = 0.2;
    double large_customer_max_fraction = 0.08;
    /// Feeder-specific growth in percent per year, constant over the history
    /// and drawn uniformly; only a feeder's own past peaks reveal it.
    double local_trend_min = 0.0, local_trend_max = 0.0;
    /// Weights of the driver at lags 0, 1, 2 in yearly growth.
    std::vector<double> lag_weights{1.0, 0.0, 0.0};

    // transfers
    double transfer_fraction = 0.0;  // share of feeders touched by events
    double transfer_min_fraction = 0.1, transfer_max_fraction = 0.3;
    double multi_feeder_probability = 0.2;

    void validate() const;
};

struct FeederTruth {
    std::string feeder_id;
    double base_peak = 0.0;
    double growth_sensitivity = 0.0;
    double temperature_sensitivity = 0.0;
    double local_trend = 0.0;
};

struct SynthGrid {
    RegionalHistory regional;  // gdp_growth, employment_growth, population_growth, net_migration
    FeederTable feeders;
    std::vector<FeederTruth> truth;
};

SynthGrid generate_synthetic_grid(const SynthConfig& config);

/// Transfer events plus the amperes moved by each.
struct TransferPlan {
    std::vector<TransferEvent> events;
    std::vector<double> magnitudes;
};

/// Draws events touching about `transfer_fraction` of the feeders. Each
/// feeder joins at most one event. Magnitudes are a fraction of the donor's
/// peak in the event year.
TransferPlan plan_transfers(const SynthConfig& config, const FeederTable& feeders);

struct InjectedGrid {
    FeederTable feeders;
    std::vector<TransferEvent> log;
};

/// From each event year onward the donor (first id) loses `magnitude` and the
/// other members share it equally. The moved load keeps the donor's
/// composition. Throws DomainError if a magnitude is not below the donor's peak.
InjectedGrid inject_load_transfers(const FeederTable& feeders, std::span<const TransferEvent> events,
                                   std::span<const double> magnitudes);

}  // namespace ltlf::synthgrid
