#include <cmath>
#include <set>

#include "ltlf/baselines.hpp"
#include "ltlf/error.hpp"
#include "ltlf/random.hpp"
#include "ltlf/seqnet/loss.hpp"

namespace ltlf::baselines {

using seqnet::Activation;
using seqnet::DenseParams;

std::size_t FnnModel::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
    return n;
}

FnnModel init_fnn(FnnVariant variant, int step_width, int n_steps, std::uint64_t seed) {
    if (step_width <= 0 || n_steps <= 0) throw DomainError("FNN widths must be positive");
    FnnModel m;
    m.variant = variant;
    m.input_width = variant == FnnVariant::one_year ? step_width : step_width * n_steps;
    const int hidden = variant == FnnVariant::one_year ? 6 : 12;

    Rng rng(seed);
    int in = m.input_width;
    for (int out : {hidden, hidden, 1}) {
        const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
        Eigen::MatrixXd w(out, in);
        for (int r = 0; r < out; ++r) {
            for (int c = 0; c < in; ++c) w(r, c) = rng.uniform(-limit, limit);
        }
        m.layers.push_back(DenseParams{std::move(w), Eigen::VectorXd::Zero(out), Activation::relu});
        in = out;
    }
    return m;
}

double fnn_forward(const FnnModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.input_width) {
        throw ShapeError("FNN expects " + std::to_string(model.input_width) + " inputs, got " +
                         std::to_string(x.size()));
    }
    Eigen::VectorXd act = x;
    for (const auto& layer : model.layers) act = seqnet::dense_forward(layer, act).post;
    return act(0);
}

Eigen::VectorXd flatten_steps(const SequenceSample& sample) {
    Eigen::Index total = 0;
    for (const auto& s : sample.steps) total += s.size();
    Eigen::VectorXd out(total);
    Eigen::Index pos = 0;
    for (const auto& s : sample.steps) {
        out.segment(pos, s.size()) = s;
        pos += s.size();
    }
    return out;
}

std::vector<FnnExample> fnn_examples(FnnVariant variant, const std::vector<SequenceSample>& samples) {
    std::vector<FnnExample> out;
    if (variant == FnnVariant::three_year) {
        for (const auto& s : samples) out.push_back({flatten_steps(s), s.targets.back()});
        return out;
    }
    std::set<std::pair<std::string, int>> seen;
    for (const auto& s : samples) {
        if (s.targets.size() != s.steps.size()) {
            throw ShapeError("one-year FNN examples need per-step targets (many-to-many samples)");
        }
        for (std::size_t t = 0; t < s.steps.size(); ++t) {
            if (seen.emplace(s.feeder_id, s.forecast_years.at(t)).second) {
                out.push_back({s.steps[t], s.targets[t]});
            }
        }
    }
    return out;
}

double fnn_forecast(const FnnModel& model, const SequenceSample& sample) {
    if (sample.steps.empty()) throw ShapeError("sample has no steps");
    return model.variant == FnnVariant::one_year ? fnn_forward(model, sample.steps.back())
                                                 : fnn_forward(model, flatten_steps(sample));
}

Eigen::VectorXd flatten(const FnnModel& model) {
    Eigen::VectorXd flat(static_cast<Eigen::Index>(model.parameter_count()));
    Eigen::Index pos = 0;
    for (const auto& l : model.layers) {
        flat.segment(pos, l.weight.size()) = Eigen::Map<const Eigen::VectorXd>(l.weight.data(), l.weight.size());
        pos += l.weight.size();
        flat.segment(pos, l.bias.size()) = l.bias;
        pos += l.bias.size();
    }
    return flat;
}

void unflatten(FnnModel& model, const Eigen::VectorXd& flat) {
    if (flat.size() != static_cast<Eigen::Index>(model.parameter_count())) {
        throw ShapeError("flat FNN parameter vector has the wrong length");
    }
    Eigen::Index pos = 0;
    for (auto& l : model.layers) {
        Eigen::Map<Eigen::VectorXd>(l.weight.data(), l.weight.size()) = flat.segment(pos, l.weight.size());
        pos += l.weight.size();
        l.bias = flat.segment(pos, l.bias.size());
        pos += l.bias.size();
    }
}

FnnGradient fnn_gradients(const FnnModel& model, const std::vector<FnnExample>& examples,
                          const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw DomainError("gradient of an empty batch");
    const std::size_t n_layers = model.layers.size();
    std::vector<Eigen::MatrixXd> gw;
    std::vector<Eigen::VectorXd> gb;
    for (const auto& l : model.layers) {
        gw.push_back(Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()));
        gb.push_back(Eigen::VectorXd::Zero(l.bias.size()));
    }

    const double denom = static_cast<double>(indices.size());
    double abs_total = 0.0;
    std::vector<Eigen::VectorXd> inputs(n_layers), pres(n_layers);
    for (std::size_t idx : indices) {
        const FnnExample& ex = examples.at(idx);
        if (ex.x.size() != model.input_width) throw ShapeError("FNN example width mismatch");
        Eigen::VectorXd act = ex.x;
        for (std::size_t l = 0; l < n_layers; ++l) {
            auto d = seqnet::dense_forward(model.layers[l], act);
            inputs[l] = std::move(act);
            pres[l] = std::move(d.pre);
            act = std::move(d.post);
        }
        const double residual = act(0) - ex.target;
        abs_total += std::abs(residual);
        const double d_out = seqnet::abs_subgradient(residual) / denom;
        if (d_out == 0.0) continue;

        Eigen::VectorXd d_act = Eigen::VectorXd::Constant(1, d_out);
        for (std::size_t l = n_layers; l-- > 0;) {
            const auto& layer = model.layers[l];
            Eigen::VectorXd d_pre = d_act;
            if (layer.activation == Activation::relu) {
                for (Eigen::Index i = 0; i < d_pre.size(); ++i) {
                    if (!(pres[l](i) > 0.0)) d_pre(i) = 0.0;
                }
            }
            gw[l].noalias() += d_pre * inputs[l].transpose();
            gb[l] += d_pre;
            d_act = layer.weight.transpose() * d_pre;
        }
    }

    FnnGradient g;
    g.loss = abs_total / denom;
    g.grad.resize(static_cast<Eigen::Index>(model.parameter_count()));
    Eigen::Index pos = 0;
    for (std::size_t l = 0; l < n_layers; ++l) {
        g.grad.segment(pos, gw[l].size()) = Eigen::Map<const Eigen::VectorXd>(gw[l].data(), gw[l].size());
        pos += gw[l].size();
        g.grad.segment(pos, gb[l].size()) = gb[l];
        pos += gb[l].size();
    }
    if (!g.grad.allFinite()) throw NumericError("fnn", "non-finite gradient");
    return g;
}

FnnTrainResult fnn_train(const FnnModel& model, const std::vector<FnnExample>& examples,
                         const TrainHyperparams& hyper) {
    FnnTrainResult result{model, {}};
    if (hyper.epochs == 0) return result;
    Eigen::VectorXd theta = flatten(model);
    FnnModel work = model;
    auto gradient = [&](const std::vector<std::size_t>& batch, const Eigen::VectorXd& th, Eigen::VectorXd& grad) {
        unflatten(work, th);
        FnnGradient g = fnn_gradients(work, examples, batch);
        grad = std::move(g.grad);
        return g.loss;
    };
    result.loss_history = minibatch_descent(theta, examples.size(), hyper, gradient);
    unflatten(result.model, theta);
    return result;
}

}  // namespace ltlf::baselines
