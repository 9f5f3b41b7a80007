#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltlf/baselines.hpp"
#include "ltlf/evalkit.hpp"
#include "ltlf/optim.hpp"
#include "ltlf/seqdata/dataset.hpp"
#include "ltlf/seqnet/network.hpp"

namespace ltlf::experiments {

/// Final-year actual and forecast peaks (amperes) for a list of samples.
struct Forecasts {
    std::vector<double> actuals;
    std::vector<double> forecasts;
    /// Records that used a fallback rule (AR(2) on a short history,
    /// implausible bottom-up results).
    std::size_t fallbacks = 0;

    double mape() const { return evalkit::mape(actuals, forecasts); }
};

Forecasts network_forecasts(const seqnet::NetworkParams& net, const seqdata::FeaturePipeline& pipeline,
                            const std::vector<SequenceSample>& raw);

Forecasts bottom_up_forecasts(const std::vector<SequenceSample>& raw, const seqdata::RawLayout& layout);

/// One-step AR(2) forecast of each sample's final year from the feeder's
/// consecutive history before that year. Histories shorter than five years
/// fall back to the previous-year peak.
Forecasts ar2_forecasts(const seqdata::EngineeredDataset& ds, const std::vector<SequenceSample>& raw);

struct NetworkDesign {
    seqnet::CellKind cell = seqnet::CellKind::lstm;
    seqnet::SeqConfig mode = seqnet::SeqConfig::many_to_one;
    int hidden_width = 6;
    std::vector<int> dense_widths{6};
};

struct NetworkRun {
    seqnet::NetworkParams params;
    std::vector<double> loss_history;
    double training_seconds = 0.0;
    Forecasts test;
};

/// Initializes from `seed`, trains on ds.train and forecasts ds.test.
NetworkRun run_network(const seqdata::EngineeredDataset& ds, const NetworkDesign& design, TrainHyperparams hyper,
                       std::uint64_t seed);

struct FnnRun {
    baselines::FnnModel model;
    std::vector<double> loss_history;
    double training_seconds = 0.0;
    Forecasts test;
};

FnnRun run_fnn(const seqdata::EngineeredDataset& ds, baselines::FnnVariant variant, TrainHyperparams hyper,
               std::uint64_t seed);

std::string network_label(seqnet::CellKind cell, seqnet::SeqConfig mode);

}  // namespace ltlf::experiments
