#include "ltlf/seqdata/dataset.hpp"

#include "ltlf/error.hpp"
#include "ltlf/featlab/virtual_feeder.hpp"
#include "ltlf/seqdata/split.hpp"

namespace ltlf::seqdata {

std::vector<SequenceSample> EngineeredDataset::prepared(const std::vector<SequenceSample>& raw,
                                                        seqnet::SeqConfig config) const {
    std::vector<SequenceSample> out;
    out.reserve(raw.size());
    for (const auto& s : raw) out.push_back(to_config(pipeline.transform(s), config));
    return out;
}

EngineeredDataset engineer(const FeederTable& feeders, const RegionalHistory& regional,
                           std::span<const TransferEvent> transfers, Season season,
                           const EngineerOptions& options) {
    EngineeredDataset ds;
    ds.season = season;
    ds.n_steps = options.n_steps;
    ds.split_ratio = options.split_ratio;
    ds.split_seed = options.split_seed;
    ds.virtual_feeders = options.use_virtual_feeders;

    FeederTable table;
    std::span<const TransferEvent> boundaries;
    if (options.use_virtual_feeders) {
        auto resolved = featlab::resolve_virtual_feeders(feeders, transfers);
        table = std::move(resolved.table);
        ds.virtual_groups = std::move(resolved.groups);
        boundaries = transfers;
    } else {
        table = feeders;
    }

    BuildResult built = build_sequence_samples(table, regional, seqnet::SeqConfig::many_to_many,
                                               options.n_steps, boundaries);
    ds.skipped = std::move(built.skipped);
    if (built.samples.empty()) throw DomainError("no complete sequence windows in the input data");

    DatasetSplit split = split_dataset(built.samples, options.split_ratio, options.split_seed);
    if (split.train.empty() || split.test.empty()) {
        throw DomainError("split leaves an empty training or test set");
    }
    ds.pipeline = fit_pipeline(split.train, infer_layout(table, regional), regional.econ_names, options.pipeline);
    ds.train = std::move(split.train);
    ds.test = std::move(split.test);

    for (const auto& [id, hist] : table) {
        for (const auto& [year, rec] : hist) ds.histories[id][year] = rec.peak_demand;
    }
    return ds;
}

}  // namespace ltlf::seqdata
