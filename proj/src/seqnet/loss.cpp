#include "ltlf/seqnet/loss.hpp"

#include <cmath>

#include "ltlf/error.hpp"

namespace ltlf::seqnet {

double sequence_loss(SeqConfig config, const Batch& actuals, const Batch& forecasts) {
    if (actuals.empty()) throw DomainError("loss over an empty batch");
    if (actuals.size() != forecasts.size()) throw ShapeError("actual and forecast batch sizes differ");

    const std::size_t width = actuals.front().size();
    if (width == 0) throw ShapeError("records must carry at least one target");
    if (config == SeqConfig::many_to_one && width != 1) {
        throw ShapeError("many-to-one records carry exactly one target");
    }

    double total = 0.0;
    for (std::size_t j = 0; j < actuals.size(); ++j) {
        if (actuals[j].size() != width || forecasts[j].size() != width) {
            throw ShapeError("record target lengths differ within the batch");
        }
        for (std::size_t i = 0; i < width; ++i) total += std::abs(actuals[j][i] - forecasts[j][i]);
    }
    return total / static_cast<double>(actuals.size() * width);
}

}  // namespace ltlf::seqnet
