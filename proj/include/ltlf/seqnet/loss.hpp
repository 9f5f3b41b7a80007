#pragma once

#include <vector>

#include "ltlf/seqnet/network.hpp"

namespace ltlf::seqnet {

using Batch = std::vector<std::vector<double>>;

/// Mean absolute error over a batch. Many-to-one expects one value per
/// record; many-to-many averages over every step of every record.
double sequence_loss(SeqConfig config, const Batch& actuals, const Batch& forecasts);

/// d|r|/dr with subgradient 0 at r == 0.
inline double abs_subgradient(double residual) {
    return residual > 0.0 ? 1.0 : (residual < 0.0 ? -1.0 : 0.0);
}

}  // namespace ltlf::seqnet
