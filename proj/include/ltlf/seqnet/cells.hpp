#pragma once

#include <Eigen/Dense>

namespace ltlf::seqnet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// LSTM cell weights. Every matrix is hidden x (hidden + input) and acts on
/// the concatenation [h_prev, x].
struct LstmCellParams {
    Matrix w_forget, w_input, w_cand, w_output;
    Vector b_forget, b_input, b_cand, b_output;

    static LstmCellParams zeros(int hidden, int input);

    int hidden_width() const { return static_cast<int>(w_forget.rows()); }
    int input_width() const { return static_cast<int>(w_forget.cols()) - hidden_width(); }

    /// Throws ShapeError unless all blocks agree.
    void validate() const;
};

/// GRU cell weights, laid out like LstmCellParams.
struct GruCellParams {
    Matrix w_reset, w_update, w_cand;
    Vector b_reset, b_update, b_cand;

    static GruCellParams zeros(int hidden, int input);

    int hidden_width() const { return static_cast<int>(w_reset.rows()); }
    int input_width() const { return static_cast<int>(w_reset.cols()) - hidden_width(); }

    void validate() const;
};

/// Recurrent state carried between steps. `memory` is empty for GRU.
struct CellState {
    Vector hidden;
    Vector memory;

    static CellState zeros(int hidden, bool with_memory);
};

/// Gate activations of one LSTM step, kept for backpropagation.
struct LstmTrace {
    Vector concat;  // [h_prev, x]
    Vector forget, input, cand, output;
    Vector memory_prev, memory, memory_tanh;
};

/// Gate activations of one GRU step.
struct GruTrace {
    Vector concat;        // [h_prev, x]
    Vector reset_concat;  // [r * h_prev, x]
    Vector hidden_prev;
    Vector reset, update, cand;
};

double sigmoid(double a);

CellState lstm_step(const LstmCellParams& params, const Vector& x, const CellState& prev);
CellState lstm_step(const LstmCellParams& params, const Vector& x, const CellState& prev,
                    LstmTrace* trace);

Vector gru_step(const GruCellParams& params, const Vector& x, const Vector& prev_hidden);
Vector gru_step(const GruCellParams& params, const Vector& x, const Vector& prev_hidden,
                GruTrace* trace);

}  // namespace ltlf::seqnet
