#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ltlf/records.hpp"
#include "ltlf/seqdata/pipeline.hpp"
#include "ltlf/seqdata/samples.hpp"

namespace ltlf::seqdata {

struct EngineerOptions {
    int n_steps = 3;
    double split_ratio = 0.8;
    std::uint64_t split_seed = 0;
    bool use_virtual_feeders = true;
    PipelineOptions pipeline;
};

/// Split raw samples plus the pipeline fitted on the training part.
///
/// Samples are stored unnormalized with one target per forecast year; use
/// `prepared` for network-ready inputs.
struct EngineeredDataset {
    Season season = Season::summer;
    int n_steps = 3;
    double split_ratio = 0.8;
    std::uint64_t split_seed = 0;
    bool virtual_feeders = true;
    FeaturePipeline pipeline;
    std::vector<SequenceSample> train;
    std::vector<SequenceSample> test;
    /// Peak history per (possibly virtual) feeder, for the AR(2) baseline.
    std::map<std::string, std::map<int, double>> histories;
    std::vector<std::vector<std::string>> virtual_groups;
    std::vector<std::string> skipped;

    /// Normalized samples shaped for `config`.
    std::vector<SequenceSample> prepared(const std::vector<SequenceSample>& raw, seqnet::SeqConfig config) const;
};

/// Virtual feeders (optional), windowing, split, and pipeline fit.
///
/// With virtual feeders on, logged transfers are merged and any remaining
/// window crossing a logged transfer is dropped. With them off, feeder
/// histories are used as recorded, transfer steps included.
EngineeredDataset engineer(const FeederTable& feeders, const RegionalHistory& regional,
                           std::span<const TransferEvent> transfers, Season season,
                           const EngineerOptions& options);

}  // namespace ltlf::seqdata
