#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "ltlf/optim.hpp"
#include "ltlf/records.hpp"
#include "ltlf/seqdata/pipeline.hpp"
#include "ltlf/seqnet/network.hpp"

namespace ltlf::io {

/// Everything needed to run inference: architecture, weights (row-major,
/// with shapes), and the fitted feature pipeline. Doubles are written in
/// shortest round-trip decimal, so save/load is lossless.
struct ModelDocument {
    seqnet::NetworkParams network;
    seqdata::FeaturePipeline pipeline;
    Season season = Season::summer;
    std::optional<TrainHyperparams> training;
};

nlohmann::json network_to_json(const seqnet::NetworkParams& net);
seqnet::NetworkParams network_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const ModelDocument& doc);
ModelDocument model_from_json(const nlohmann::json& j);

void save_model(const std::string& path, const ModelDocument& doc);
ModelDocument load_model(const std::string& path);

}  // namespace ltlf::io
