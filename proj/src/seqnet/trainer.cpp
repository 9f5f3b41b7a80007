#include "ltlf/seqnet/trainer.hpp"

#include <cmath>
#include <numeric>

#include "ltlf/error.hpp"
#include "ltlf/random.hpp"
#include "ltlf/seqnet/backprop.hpp"

namespace ltlf {

std::string_view to_string(OptimizerKind kind) { return kind == OptimizerKind::sgd ? "sgd" : "adam"; }

OptimizerKind parse_optimizer(std::string_view text) {
    if (text == "sgd") return OptimizerKind::sgd;
    if (text == "adam") return OptimizerKind::adam;
    throw DomainError("unknown optimizer: " + std::string(text));
}

Optimizer::Optimizer(OptimizerKind kind, double learning_rate, Eigen::Index size)
    : kind_(kind), lr_(learning_rate) {
    if (!(learning_rate > 0.0)) throw DomainError("learning rate must be positive");
    if (kind_ == OptimizerKind::adam) {
        m_ = Eigen::VectorXd::Zero(size);
        v_ = Eigen::VectorXd::Zero(size);
    }
}

void Optimizer::step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad) {
    if (kind_ == OptimizerKind::sgd) {
        theta -= lr_ * grad;
        return;
    }
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    beta1_pow_ *= beta1;
    beta2_pow_ *= beta2;
    m_ = beta1 * m_ + (1.0 - beta1) * grad;
    v_ = beta2 * v_ + (1.0 - beta2) * grad.cwiseAbs2();
    const double c1 = 1.0 - beta1_pow_;
    const double c2 = 1.0 - beta2_pow_;
    theta.array() -= lr_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps);
}

std::vector<double> minibatch_descent(Eigen::VectorXd& theta, std::size_t n_samples,
                                      const TrainHyperparams& hyper, const BatchGradient& gradient) {
    if (hyper.epochs < 0) throw DomainError("epochs must be nonnegative");
    if (hyper.epochs == 0) return {};
    if (n_samples == 0) throw DomainError("training set is empty");
    if (hyper.batch_size <= 0 || static_cast<std::size_t>(hyper.batch_size) > n_samples) {
        throw DomainError("batch size must lie in [1, training set size]");
    }

    Optimizer opt(hyper.optimizer, hyper.learning_rate, theta.size());
    Rng rng(hyper.seed);
    std::vector<std::size_t> order(n_samples);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto batch_size = static_cast<std::size_t>(hyper.batch_size);

    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(hyper.epochs));
    Eigen::VectorXd grad(theta.size());
    std::vector<std::size_t> batch;

    for (int epoch = 1; epoch <= hyper.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        double weighted = 0.0;
        for (std::size_t start = 0; start < n_samples; start += batch_size) {
            const std::size_t stop = std::min(n_samples, start + batch_size);
            batch.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(stop));
            grad.setZero();
            double loss;
            try {
                loss = gradient(batch, theta, grad);
            } catch (const NumericError& e) {
                throw TrainingError(epoch, std::string("training diverged: ") + e.what());
            }
            if (hyper.clip_norm > 0.0) {
                const double norm = grad.norm();
                if (norm > hyper.clip_norm) grad *= hyper.clip_norm / norm;
            }
            opt.step(theta, grad);
            weighted += loss * static_cast<double>(batch.size());
        }
        const double epoch_loss = weighted / static_cast<double>(n_samples);
        if (!std::isfinite(epoch_loss) || !theta.allFinite()) {
            throw TrainingError(epoch, "training diverged: non-finite loss or parameters");
        }
        history.push_back(epoch_loss);
    }
    return history;
}

namespace seqnet {

TrainResult train(const NetworkParams& net, const std::vector<SequenceSample>& train_set,
                  const TrainHyperparams& hyper) {
    net.validate();
    TrainResult result{net, {}};
    if (hyper.epochs == 0) return result;

    Eigen::VectorXd theta = flatten(net);
    NetworkParams work = net;
    auto gradient = [&](const std::vector<std::size_t>& batch, const Eigen::VectorXd& th,
                        Eigen::VectorXd& grad) {
        unflatten(work, th);
        GradientResult g = compute_gradients(work, train_set, batch);
        grad = flatten(g.grads);
        return g.loss;
    };
    result.loss_history = minibatch_descent(theta, train_set.size(), hyper, gradient);
    unflatten(result.params, theta);
    return result;
}

}  // namespace seqnet
}  // namespace ltlf
