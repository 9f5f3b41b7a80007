#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ltlf {

enum class OptimizerKind { sgd, adam };

std::string_view to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(std::string_view text);

struct TrainHyperparams {
    int epochs = 200;
    int batch_size = 10;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
    OptimizerKind optimizer = OptimizerKind::adam;
    /// Global-norm gradient clip; 0 disables it.
    double clip_norm = 0.0;
};

/// First-order update rule over a flat parameter vector.
class Optimizer {
public:
    Optimizer(OptimizerKind kind, double learning_rate, Eigen::Index size);

    void step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad);

private:
    OptimizerKind kind_;
    double lr_;
    Eigen::VectorXd m_;
    Eigen::VectorXd v_;
    double beta1_pow_ = 1.0;
    double beta2_pow_ = 1.0;
};

/// Fills `grad` for the samples in `batch` at `theta` and returns the batch loss.
using BatchGradient = std::function<double(const std::vector<std::size_t>& batch,
                                           const Eigen::VectorXd& theta, Eigen::VectorXd& grad)>;

/// Shuffled mini-batch descent shared by every trainable model.
///
/// Batch order is reshuffled each epoch from a generator seeded with
/// `hyper.seed`. Returns the sample-weighted mean training loss per epoch.
/// Throws TrainingError when the loss or parameters become non-finite.
std::vector<double> minibatch_descent(Eigen::VectorXd& theta, std::size_t n_samples,
                                      const TrainHyperparams& hyper, const BatchGradient& gradient);

}  // namespace ltlf
