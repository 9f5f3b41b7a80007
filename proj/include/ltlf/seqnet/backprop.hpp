#pragma once

#include <vector>

#include "ltlf/sample.hpp"
#include "ltlf/seqnet/network.hpp"

namespace ltlf::seqnet {

struct GradientResult {
    NetworkParams grads;  // same shape as the network
    double loss = 0.0;
};

/// Exact gradient of the configuration's mean absolute error over `batch`
/// by backpropagation through time. Throws NumericError naming the first
/// non-finite block.
GradientResult compute_gradients(const NetworkParams& net, const std::vector<SequenceSample>& batch);

/// Same, over a subset of `samples` selected by index.
GradientResult compute_gradients(const NetworkParams& net, const std::vector<SequenceSample>& samples,
                                 const std::vector<std::size_t>& indices);

/// Batch loss without gradients.
double batch_loss(const NetworkParams& net, const std::vector<SequenceSample>& batch);

}  // namespace ltlf::seqnet
