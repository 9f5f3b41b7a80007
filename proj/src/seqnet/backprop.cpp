#include "ltlf/seqnet/backprop.hpp"

#include <cmath>

#include "ltlf/error.hpp"
#include "ltlf/seqnet/loss.hpp"

namespace ltlf::seqnet {

namespace {

void check_targets(const NetworkParams& net, const SequenceSample& sample) {
    if (static_cast<int>(sample.targets.size()) != net.output_count()) {
        throw ShapeError("sample " + std::to_string(sample.record_id) + " carries " +
                         std::to_string(sample.targets.size()) + " targets, network emits " +
                         std::to_string(net.output_count()));
    }
}

double relu_grad(const DenseParams& layer, double pre) {
    if (layer.activation == Activation::identity) return 1.0;
    return pre > 0.0 ? 1.0 : 0.0;
}

// Backpropagates d(loss)/d(output) through the dense stack; returns
// d(loss)/d(H_t).
Vector dense_backward(const NetworkParams& net, NetworkParams& g, const std::vector<Vector>& inputs,
                      const std::vector<Vector>& pres, double d_output) {
    const std::size_t n_hidden = net.dense_hidden.size();

    Vector d_pre(1);
    d_pre(0) = d_output * relu_grad(net.dense_out, pres[n_hidden](0));
    g.dense_out.weight.noalias() += d_pre * inputs[n_hidden].transpose();
    g.dense_out.bias += d_pre;
    Vector d_act = net.dense_out.weight.transpose() * d_pre;

    for (std::size_t l = n_hidden; l-- > 0;) {
        const auto& layer = net.dense_hidden[l];
        d_pre = d_act;
        for (Eigen::Index i = 0; i < d_pre.size(); ++i) d_pre(i) *= relu_grad(layer, pres[l](i));
        g.dense_hidden[l].weight.noalias() += d_pre * inputs[l].transpose();
        g.dense_hidden[l].bias += d_pre;
        d_act = layer.weight.transpose() * d_pre;
    }
    return d_act;
}

void lstm_backward(const LstmCellParams& p, LstmCellParams& g, const std::vector<LstmTrace>& traces,
                   const std::vector<Vector>& d_hidden_out) {
    const int h = p.hidden_width();
    Vector dh_next = Vector::Zero(h);
    Vector dc_next = Vector::Zero(h);
    for (std::size_t t = traces.size(); t-- > 0;) {
        const LstmTrace& tr = traces[t];
        Vector dh = d_hidden_out[t] + dh_next;

        Vector d_out = dh.cwiseProduct(tr.memory_tanh);
        Vector dc = dc_next + dh.cwiseProduct(tr.output).cwiseProduct(
                                   (1.0 - tr.memory_tanh.array().square()).matrix());

        Vector d_forget = dc.cwiseProduct(tr.memory_prev);
        Vector d_input = dc.cwiseProduct(tr.cand);
        Vector d_cand = dc.cwiseProduct(tr.input);
        dc_next = dc.cwiseProduct(tr.forget);

        Vector a_forget = d_forget.array() * tr.forget.array() * (1.0 - tr.forget.array());
        Vector a_input = d_input.array() * tr.input.array() * (1.0 - tr.input.array());
        Vector a_cand = d_cand.array() * (1.0 - tr.cand.array().square());
        Vector a_out = d_out.array() * tr.output.array() * (1.0 - tr.output.array());

        g.w_forget.noalias() += a_forget * tr.concat.transpose();
        g.w_input.noalias() += a_input * tr.concat.transpose();
        g.w_cand.noalias() += a_cand * tr.concat.transpose();
        g.w_output.noalias() += a_out * tr.concat.transpose();
        g.b_forget += a_forget;
        g.b_input += a_input;
        g.b_cand += a_cand;
        g.b_output += a_out;

        Vector dz = p.w_forget.transpose() * a_forget + p.w_input.transpose() * a_input +
                    p.w_cand.transpose() * a_cand + p.w_output.transpose() * a_out;
        dh_next = dz.head(h);
    }
}

void gru_backward(const GruCellParams& p, GruCellParams& g, const std::vector<GruTrace>& traces,
                  const std::vector<Vector>& d_hidden_out) {
    const int h = p.hidden_width();
    Vector dh_next = Vector::Zero(h);
    for (std::size_t t = traces.size(); t-- > 0;) {
        const GruTrace& tr = traces[t];
        Vector dh = d_hidden_out[t] + dh_next;

        Vector d_cand = dh.cwiseProduct(tr.update);
        Vector d_update = dh.cwiseProduct(tr.cand - tr.hidden_prev);
        Vector dh_prev = dh.cwiseProduct((Vector::Ones(h) - tr.update));

        Vector a_cand = d_cand.array() * (1.0 - tr.cand.array().square());
        g.w_cand.noalias() += a_cand * tr.reset_concat.transpose();
        g.b_cand += a_cand;
        Vector dzr = p.w_cand.transpose() * a_cand;
        Vector d_reset_h = dzr.head(h);
        dh_prev += d_reset_h.cwiseProduct(tr.reset);
        Vector d_reset = d_reset_h.cwiseProduct(tr.hidden_prev);

        Vector a_reset = d_reset.array() * tr.reset.array() * (1.0 - tr.reset.array());
        Vector a_update = d_update.array() * tr.update.array() * (1.0 - tr.update.array());
        g.w_reset.noalias() += a_reset * tr.concat.transpose();
        g.w_update.noalias() += a_update * tr.concat.transpose();
        g.b_reset += a_reset;
        g.b_update += a_update;

        Vector dz = p.w_reset.transpose() * a_reset + p.w_update.transpose() * a_update;
        dh_next = dh_prev + dz.head(h);
    }
}

void check_finite(const NetworkParams& g) {
    visit_blocks(g, [](const std::string& name, const double* data, Eigen::Index n) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!std::isfinite(data[i])) throw NumericError(name, "non-finite gradient");
        }
    });
}

}  // namespace

GradientResult compute_gradients(const NetworkParams& net, const std::vector<SequenceSample>& samples,
                                 const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw DomainError("gradient of an empty batch");

    GradientResult result{net.zeros_like(), 0.0};
    NetworkParams& g = result.grads;
    const double denom = static_cast<double>(indices.size()) * net.output_count();
    const int first = net.config == SeqConfig::many_to_one ? net.n_steps - 1 : 0;

    ForwardTrace trace;
    std::vector<Vector> d_hidden(static_cast<std::size_t>(net.n_steps));
    double abs_total = 0.0;

    for (std::size_t idx : indices) {
        const SequenceSample& sample = samples.at(idx);
        check_targets(net, sample);
        forward_sequence(net, sample.steps, &trace);

        for (auto& d : d_hidden) d = Vector::Zero(net.hidden_width());
        for (std::size_t o = 0; o < trace.outputs.size(); ++o) {
            const double forecast = trace.outputs[o];
            if (!std::isfinite(forecast)) throw NumericError("forward", "non-finite network output");
            const double residual = forecast - sample.targets[o];
            abs_total += std::abs(residual);
            const double d_output = abs_subgradient(residual) / denom;
            if (d_output == 0.0) continue;
            d_hidden[static_cast<std::size_t>(first) + o] +=
                dense_backward(net, g, trace.layer_inputs[o], trace.layer_pre[o], d_output);
        }

        if (const auto* lstm = std::get_if<LstmCellParams>(&net.recurrent)) {
            lstm_backward(*lstm, std::get<LstmCellParams>(g.recurrent), trace.lstm, d_hidden);
        } else {
            gru_backward(std::get<GruCellParams>(net.recurrent), std::get<GruCellParams>(g.recurrent),
                         trace.gru, d_hidden);
        }
    }

    result.loss = abs_total / denom;
    check_finite(g);
    return result;
}

GradientResult compute_gradients(const NetworkParams& net, const std::vector<SequenceSample>& batch) {
    std::vector<std::size_t> indices(batch.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    return compute_gradients(net, batch, indices);
}

double batch_loss(const NetworkParams& net, const std::vector<SequenceSample>& batch) {
    Batch actuals;
    Batch forecasts;
    actuals.reserve(batch.size());
    forecasts.reserve(batch.size());
    for (const auto& sample : batch) {
        check_targets(net, sample);
        actuals.push_back(sample.targets);
        forecasts.push_back(forward_sequence(net, sample.steps));
    }
    return sequence_loss(net.config, actuals, forecasts);
}

}  // namespace ltlf::seqnet
