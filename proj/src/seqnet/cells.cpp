#include "ltlf/seqnet/cells.hpp"

#include <cmath>
#include <string>

#include "ltlf/error.hpp"

namespace ltlf::seqnet {

namespace {

void check_block(const Matrix& w, const Vector& b, int hidden, int cols, const char* name) {
    if (w.rows() != hidden || w.cols() != cols || b.size() != hidden) {
        throw ShapeError(std::string("recurrent block ") + name + " has inconsistent shape");
    }
}

Vector concat(const Vector& head, const Vector& tail) {
    Vector out(head.size() + tail.size());
    out << head, tail;
    return out;
}

Vector sigmoid(const Vector& a) {
    return a.unaryExpr([](double v) { return ltlf::seqnet::sigmoid(v); });
}

}  // namespace

double sigmoid(double a) {
    // Split by sign so exp never overflows.
    if (a >= 0.0) {
        return 1.0 / (1.0 + std::exp(-a));
    }
    const double e = std::exp(a);
    return e / (1.0 + e);
}

LstmCellParams LstmCellParams::zeros(int hidden, int input) {
    const int cols = hidden + input;
    return LstmCellParams{
        Matrix::Zero(hidden, cols), Matrix::Zero(hidden, cols), Matrix::Zero(hidden, cols),
        Matrix::Zero(hidden, cols), Vector::Zero(hidden),       Vector::Zero(hidden),
        Vector::Zero(hidden),       Vector::Zero(hidden)};
}

void LstmCellParams::validate() const {
    const int h = hidden_width();
    const int cols = static_cast<int>(w_forget.cols());
    if (h <= 0 || cols <= h) throw ShapeError("LSTM cell needs positive hidden and input widths");
    check_block(w_forget, b_forget, h, cols, "forget");
    check_block(w_input, b_input, h, cols, "input");
    check_block(w_cand, b_cand, h, cols, "candidate");
    check_block(w_output, b_output, h, cols, "output");
}

GruCellParams GruCellParams::zeros(int hidden, int input) {
    const int cols = hidden + input;
    return GruCellParams{Matrix::Zero(hidden, cols), Matrix::Zero(hidden, cols),
                         Matrix::Zero(hidden, cols), Vector::Zero(hidden),
                         Vector::Zero(hidden),       Vector::Zero(hidden)};
}

void GruCellParams::validate() const {
    const int h = hidden_width();
    const int cols = static_cast<int>(w_reset.cols());
    if (h <= 0 || cols <= h) throw ShapeError("GRU cell needs positive hidden and input widths");
    check_block(w_reset, b_reset, h, cols, "reset");
    check_block(w_update, b_update, h, cols, "update");
    check_block(w_cand, b_cand, h, cols, "candidate");
}

CellState CellState::zeros(int hidden, bool with_memory) {
    return CellState{Vector::Zero(hidden), with_memory ? Vector::Zero(hidden) : Vector()};
}

CellState lstm_step(const LstmCellParams& params, const Vector& x, const CellState& prev) {
    return lstm_step(params, x, prev, nullptr);
}

CellState lstm_step(const LstmCellParams& params, const Vector& x, const CellState& prev,
                    LstmTrace* trace) {
    const int h = params.hidden_width();
    if (x.size() != params.input_width()) throw ShapeError("LSTM input width mismatch");
    if (prev.hidden.size() != h || prev.memory.size() != h) {
        throw ShapeError("LSTM previous state width mismatch");
    }

    Vector z = concat(prev.hidden, x);
    Vector f = sigmoid(params.w_forget * z + params.b_forget);
    Vector i = sigmoid(params.w_input * z + params.b_input);
    Vector k = (params.w_cand * z + params.b_cand).array().tanh().matrix();
    Vector o = sigmoid(params.w_output * z + params.b_output);

    CellState next;
    next.memory = f.cwiseProduct(prev.memory) + i.cwiseProduct(k);
    Vector memory_tanh = next.memory.array().tanh().matrix();
    next.hidden = o.cwiseProduct(memory_tanh);

    if (trace != nullptr) {
        trace->concat = std::move(z);
        trace->forget = std::move(f);
        trace->input = std::move(i);
        trace->cand = std::move(k);
        trace->output = std::move(o);
        trace->memory_prev = prev.memory;
        trace->memory = next.memory;
        trace->memory_tanh = std::move(memory_tanh);
    }
    return next;
}

Vector gru_step(const GruCellParams& params, const Vector& x, const Vector& prev_hidden) {
    return gru_step(params, x, prev_hidden, nullptr);
}

Vector gru_step(const GruCellParams& params, const Vector& x, const Vector& prev_hidden,
                GruTrace* trace) {
    const int h = params.hidden_width();
    if (x.size() != params.input_width()) throw ShapeError("GRU input width mismatch");
    if (prev_hidden.size() != h) throw ShapeError("GRU previous hidden width mismatch");

    Vector z = concat(prev_hidden, x);
    Vector r = sigmoid(params.w_reset * z + params.b_reset);
    Vector u = sigmoid(params.w_update * z + params.b_update);
    Vector zr = concat(r.cwiseProduct(prev_hidden), x);
    Vector cand = (params.w_cand * zr + params.b_cand).array().tanh().matrix();

    Vector next = (Vector::Ones(h) - u).cwiseProduct(prev_hidden) + u.cwiseProduct(cand);

    if (trace != nullptr) {
        trace->concat = std::move(z);
        trace->reset_concat = std::move(zr);
        trace->hidden_prev = prev_hidden;
        trace->reset = std::move(r);
        trace->update = std::move(u);
        trace->cand = std::move(cand);
    }
    return next;
}

}  // namespace ltlf::seqnet
