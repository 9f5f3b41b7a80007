#include "ltlf/seqnet/network.hpp"

#include <cmath>

#include "ltlf/error.hpp"
#include "ltlf/random.hpp"

namespace ltlf::seqnet {

std::string_view to_string(CellKind kind) { return kind == CellKind::lstm ? "lstm" : "gru"; }

std::string_view to_string(SeqConfig config) {
    return config == SeqConfig::many_to_one ? "many-to-one" : "many-to-many";
}

std::string_view to_string(Activation act) { return act == Activation::relu ? "relu" : "identity"; }

CellKind parse_cell_kind(std::string_view text) {
    if (text == "lstm") return CellKind::lstm;
    if (text == "gru") return CellKind::gru;
    throw DomainError("unknown cell kind: " + std::string(text));
}

SeqConfig parse_seq_config(std::string_view text) {
    if (text == "many-to-one" || text == "many_to_one") return SeqConfig::many_to_one;
    if (text == "many-to-many" || text == "many_to_many") return SeqConfig::many_to_many;
    throw DomainError("unknown sequence configuration: " + std::string(text));
}

Activation parse_activation(std::string_view text) {
    if (text == "relu") return Activation::relu;
    if (text == "identity") return Activation::identity;
    throw DomainError("unknown activation: " + std::string(text));
}

DenseOutput dense_forward(const DenseParams& layer, const Vector& in) {
    if (in.size() != layer.in_width()) throw ShapeError("dense layer input width mismatch");
    DenseOutput out;
    out.pre = layer.weight * in + layer.bias;
    out.post = layer.activation == Activation::relu ? Vector(out.pre.cwiseMax(0.0)) : out.pre;
    return out;
}

int NetworkParams::hidden_width() const {
    return std::visit([](const auto& cell) { return cell.hidden_width(); }, recurrent);
}

std::size_t NetworkParams::parameter_count() const {
    std::size_t total = 0;
    visit_blocks(*this, [&](const std::string&, const double*, Eigen::Index n) {
        total += static_cast<std::size_t>(n);
    });
    return total;
}

void NetworkParams::validate() const {
    if (n_steps <= 0 || input_width <= 0) throw ShapeError("n_steps and input_width must be positive");
    const bool is_lstm = std::holds_alternative<LstmCellParams>(recurrent);
    if (is_lstm != (cell_kind == CellKind::lstm)) {
        throw ShapeError("cell_kind does not match recurrent parameter variant");
    }
    std::visit(
        [&](const auto& cell) {
            cell.validate();
            if (cell.input_width() != input_width) throw ShapeError("recurrent input width mismatch");
        },
        recurrent);
    if (dense_hidden.empty()) throw ShapeError("at least one dense hidden layer is required");
    int width = hidden_width();
    for (const auto& layer : dense_hidden) {
        if (layer.in_width() != width || layer.bias.size() != layer.out_width()) {
            throw ShapeError("dense hidden layer widths do not chain");
        }
        width = layer.out_width();
    }
    if (dense_out.in_width() != width || dense_out.out_width() != 1 || dense_out.bias.size() != 1) {
        throw ShapeError("output layer must map the last hidden width to 1");
    }
}

NetworkParams NetworkParams::zeros_like() const {
    NetworkParams z = *this;
    visit_blocks(z, [](const std::string&, double* data, Eigen::Index n) {
        std::fill(data, data + n, 0.0);
    });
    return z;
}

namespace {

Matrix glorot(Rng& rng, int rows, int cols) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    Matrix m(rows, cols);
    // Row-major fill so the draw order matches the serialized layout.
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) m(r, c) = rng.uniform(-limit, limit);
    }
    return m;
}

}  // namespace

NetworkParams init_network(const Architecture& arch, std::uint64_t seed) {
    if (arch.hidden_width <= 0 || arch.input_width <= 0 || arch.n_steps <= 0) {
        throw DomainError("architecture widths must be positive");
    }
    if (arch.dense_widths.empty()) throw DomainError("at least one dense hidden layer is required");

    Rng rng(seed);
    const int h = arch.hidden_width;
    const int cols = h + arch.input_width;

    NetworkParams net;
    net.cell_kind = arch.cell_kind;
    net.config = arch.config;
    net.n_steps = arch.n_steps;
    net.input_width = arch.input_width;

    if (arch.cell_kind == CellKind::lstm) {
        auto cell = LstmCellParams::zeros(h, arch.input_width);
        cell.w_forget = glorot(rng, h, cols);
        cell.w_input = glorot(rng, h, cols);
        cell.w_cand = glorot(rng, h, cols);
        cell.w_output = glorot(rng, h, cols);
        net.recurrent = std::move(cell);
    } else {
        auto cell = GruCellParams::zeros(h, arch.input_width);
        cell.w_reset = glorot(rng, h, cols);
        cell.w_update = glorot(rng, h, cols);
        cell.w_cand = glorot(rng, h, cols);
        net.recurrent = std::move(cell);
    }

    int width = h;
    for (int out : arch.dense_widths) {
        if (out <= 0) throw DomainError("dense widths must be positive");
        net.dense_hidden.push_back(DenseParams{glorot(rng, out, width), Vector::Zero(out), Activation::relu});
        width = out;
    }
    net.dense_out = DenseParams{glorot(rng, 1, width), Vector::Zero(1), Activation::relu};
    return net;
}

Vector flatten(const NetworkParams& net) {
    Vector flat(static_cast<Eigen::Index>(net.parameter_count()));
    Eigen::Index pos = 0;
    visit_blocks(net, [&](const std::string&, const double* data, Eigen::Index n) {
        flat.segment(pos, n) = Eigen::Map<const Vector>(data, n);
        pos += n;
    });
    return flat;
}

void unflatten(NetworkParams& net, const Vector& flat) {
    if (flat.size() != static_cast<Eigen::Index>(net.parameter_count())) {
        throw ShapeError("flat parameter vector has the wrong length");
    }
    Eigen::Index pos = 0;
    visit_blocks(net, [&](const std::string&, double* data, Eigen::Index n) {
        Eigen::Map<Vector>(data, n) = flat.segment(pos, n);
        pos += n;
    });
}

std::vector<double> forward_sequence(const NetworkParams& net, const std::vector<Vector>& steps) {
    return forward_sequence(net, steps, nullptr);
}

std::vector<double> forward_sequence(const NetworkParams& net, const std::vector<Vector>& steps,
                                     ForwardTrace* trace) {
    if (static_cast<int>(steps.size()) != net.n_steps) {
        throw ShapeError("expected " + std::to_string(net.n_steps) + " steps, got " +
                         std::to_string(steps.size()));
    }
    for (const auto& x : steps) {
        if (x.size() != net.input_width) throw ShapeError("step width does not match input_width");
    }

    if (trace) *trace = ForwardTrace{};
    const int h = net.hidden_width();
    std::vector<Vector> hidden;
    hidden.reserve(steps.size());

    if (const auto* lstm = std::get_if<LstmCellParams>(&net.recurrent)) {
        CellState state = CellState::zeros(h, true);
        if (trace) trace->lstm.resize(steps.size());
        for (std::size_t t = 0; t < steps.size(); ++t) {
            state = lstm_step(*lstm, steps[t], state, trace ? &trace->lstm[t] : nullptr);
            hidden.push_back(state.hidden);
        }
    } else {
        const auto& gru = std::get<GruCellParams>(net.recurrent);
        Vector state = Vector::Zero(h);
        if (trace) trace->gru.resize(steps.size());
        for (std::size_t t = 0; t < steps.size(); ++t) {
            state = gru_step(gru, steps[t], state, trace ? &trace->gru[t] : nullptr);
            hidden.push_back(state);
        }
    }

    const int first = net.config == SeqConfig::many_to_one ? net.n_steps - 1 : 0;
    std::vector<double> outputs;
    outputs.reserve(static_cast<std::size_t>(net.n_steps - first));
    for (int t = first; t < net.n_steps; ++t) {
        std::vector<Vector> inputs;
        std::vector<Vector> pres;
        Vector act = hidden[static_cast<std::size_t>(t)];
        for (const auto& layer : net.dense_hidden) {
            DenseOutput d = dense_forward(layer, act);
            if (trace) {
                inputs.push_back(std::move(act));
                pres.push_back(std::move(d.pre));
            }
            act = std::move(d.post);
        }
        DenseOutput y = dense_forward(net.dense_out, act);
        if (trace) {
            inputs.push_back(std::move(act));
            pres.push_back(std::move(y.pre));
            trace->layer_inputs.push_back(std::move(inputs));
            trace->layer_pre.push_back(std::move(pres));
        }
        outputs.push_back(y.post(0));
    }

    if (trace) {
        trace->hidden = std::move(hidden);
        trace->outputs = outputs;
    }
    return outputs;
}

}  // namespace ltlf::seqnet
