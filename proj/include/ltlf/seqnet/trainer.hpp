#pragma once

#include <vector>

#include "ltlf/optim.hpp"
#include "ltlf/sample.hpp"
#include "ltlf/seqnet/network.hpp"

namespace ltlf::seqnet {

struct TrainResult {
    NetworkParams params;
    std::vector<double> loss_history;  // one entry per epoch
};

/// Deterministic mini-batch training for a fixed seed on one platform.
TrainResult train(const NetworkParams& net, const std::vector<SequenceSample>& train_set,
                  const TrainHyperparams& hyper);

}  // namespace ltlf::seqnet
