#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ltlf/seqnet/cells.hpp"

namespace ltlf::seqnet {

enum class CellKind { lstm, gru };
enum class SeqConfig { many_to_one, many_to_many };
enum class Activation { relu, identity };

std::string_view to_string(CellKind kind);
std::string_view to_string(SeqConfig config);
std::string_view to_string(Activation act);
CellKind parse_cell_kind(std::string_view text);
SeqConfig parse_seq_config(std::string_view text);
Activation parse_activation(std::string_view text);

struct DenseParams {
    Matrix weight;  // out x in
    Vector bias;
    Activation activation = Activation::relu;

    int in_width() const { return static_cast<int>(weight.cols()); }
    int out_width() const { return static_cast<int>(weight.rows()); }
};

/// Pre-activation and output of a dense layer.
struct DenseOutput {
    Vector pre;
    Vector post;
};

DenseOutput dense_forward(const DenseParams& layer, const Vector& in);

/// Recurrent layer followed by one or more dense hidden layers and a scalar
/// output layer. The same struct holds gradients.
struct NetworkParams {
    CellKind cell_kind = CellKind::lstm;
    SeqConfig config = SeqConfig::many_to_one;
    int n_steps = 3;
    int input_width = 8;
    std::variant<LstmCellParams, GruCellParams> recurrent;
    std::vector<DenseParams> dense_hidden;
    DenseParams dense_out;

    int hidden_width() const;
    /// Number of outputs produced per sequence.
    int output_count() const { return config == SeqConfig::many_to_one ? 1 : n_steps; }
    std::size_t parameter_count() const;

    /// Throws ShapeError on any broken invariant.
    void validate() const;

    /// Same architecture, every entry zero.
    NetworkParams zeros_like() const;
};

struct Architecture {
    CellKind cell_kind = CellKind::lstm;
    SeqConfig config = SeqConfig::many_to_one;
    int n_steps = 3;
    int input_width = 8;
    int hidden_width = 6;
    std::vector<int> dense_widths{6};
};

/// Glorot-uniform weights drawn from `seed`, zero biases, ReLU on every dense layer.
NetworkParams init_network(const Architecture& arch, std::uint64_t seed);

/// Calls f(name, data, size) for every weight and bias block in a fixed order.
template <typename Net, typename F>
void visit_blocks(Net& net, F&& f) {
    if (auto* lstm = std::get_if<LstmCellParams>(&net.recurrent)) {
        f("lstm.w_forget", lstm->w_forget.data(), lstm->w_forget.size());
        f("lstm.w_input", lstm->w_input.data(), lstm->w_input.size());
        f("lstm.w_cand", lstm->w_cand.data(), lstm->w_cand.size());
        f("lstm.w_output", lstm->w_output.data(), lstm->w_output.size());
        f("lstm.b_forget", lstm->b_forget.data(), lstm->b_forget.size());
        f("lstm.b_input", lstm->b_input.data(), lstm->b_input.size());
        f("lstm.b_cand", lstm->b_cand.data(), lstm->b_cand.size());
        f("lstm.b_output", lstm->b_output.data(), lstm->b_output.size());
    } else {
        auto& gru = std::get<GruCellParams>(net.recurrent);
        f("gru.w_reset", gru.w_reset.data(), gru.w_reset.size());
        f("gru.w_update", gru.w_update.data(), gru.w_update.size());
        f("gru.w_cand", gru.w_cand.data(), gru.w_cand.size());
        f("gru.b_reset", gru.b_reset.data(), gru.b_reset.size());
        f("gru.b_update", gru.b_update.data(), gru.b_update.size());
        f("gru.b_cand", gru.b_cand.data(), gru.b_cand.size());
    }
    for (std::size_t l = 0; l < net.dense_hidden.size(); ++l) {
        auto& layer = net.dense_hidden[l];
        const std::string prefix = "dense_hidden[" + std::to_string(l) + "]";
        f(prefix + ".weight", layer.weight.data(), layer.weight.size());
        f(prefix + ".bias", layer.bias.data(), layer.bias.size());
    }
    f("dense_out.weight", net.dense_out.weight.data(), net.dense_out.weight.size());
    f("dense_out.bias", net.dense_out.bias.data(), net.dense_out.bias.size());
}

Vector flatten(const NetworkParams& net);
void unflatten(NetworkParams& net, const Vector& flat);

/// Everything the backward pass needs from one forward pass.
struct ForwardTrace {
    std::vector<LstmTrace> lstm;
    std::vector<GruTrace> gru;
    std::vector<Vector> hidden;  // H_t per step
    // dense activations per output, per layer (hidden layers then output layer)
    std::vector<std::vector<Vector>> layer_inputs;
    std::vector<std::vector<Vector>> layer_pre;
    std::vector<double> outputs;
};

/// Runs a sequence from zero initial state. Returns 1 output for
/// many-to-one, n_steps outputs for many-to-many.
std::vector<double> forward_sequence(const NetworkParams& net, const std::vector<Vector>& steps);
std::vector<double> forward_sequence(const NetworkParams& net, const std::vector<Vector>& steps,
                                     ForwardTrace* trace);

}  // namespace ltlf::seqnet
