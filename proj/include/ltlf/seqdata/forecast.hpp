#pragma once

#include <map>
#include <span>
#include <vector>

#include "ltlf/records.hpp"
#include "ltlf/seqdata/pipeline.hpp"
#include "ltlf/seqnet/network.hpp"

namespace ltlf::seqdata {

/// Conservative planning temperature: the historical maximum (summer) or
/// minimum (winter) plus a signed margin.
double normalize_temperature_scenario(std::span<const double> history, double margin, Season season);

/// Assumed conditions for the years after the last actual year.
struct Scenario {
    double temperature = 0.0;
    /// Economic columns per future year; a missing year repeats the latest known row.
    std::map<int, std::vector<double>> econ;
    /// Large-customer net change per future year; missing years use 0.
    std::map<int, double> large_customer_change;
};

struct ChainResult {
    std::vector<int> years;
    std::vector<double> forecasts;         // amperes
    std::vector<SequenceSample> windows;   // raw input window used for each year
};

/// Forecasts years Y+1..Y+horizon for one feeder whose history ends at Y.
/// Later windows use earlier forecasts in place of unknown actual peaks;
/// composition and DER/EV carry forward from year Y.
ChainResult chain_forecast(const seqnet::NetworkParams& net, const FeaturePipeline& pipeline,
                           const std::map<int, FeederYearRecord>& history, const RegionalHistory& regional,
                           const Scenario& scenario, int horizon);

}  // namespace ltlf::seqdata
