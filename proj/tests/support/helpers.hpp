#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ltlf/sample.hpp"
#include "ltlf/seqnet/cells.hpp"
#include "ltlf/seqnet/network.hpp"
#include "oracles.hpp"

namespace testing_support {

inline oracle::Mat to_rows(const Eigen::MatrixXd& m) {
    oracle::Mat rows(static_cast<std::size_t>(m.rows()), oracle::Vec(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
    }
    return rows;
}

inline oracle::Vec to_vec(const Eigen::VectorXd& v) { return oracle::Vec(v.data(), v.data() + v.size()); }

inline Eigen::VectorXd random_vector(std::mt19937_64& gen, int n, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = d(gen);
    return v;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& gen, int r, int c, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c; ++j) m(i, j) = d(gen);
    }
    return m;
}

/// Overwrites every parameter with N(0, scale) draws; output bias is set to
/// `out_bias` so the output ReLU stays active.
inline void randomize(ltlf::seqnet::NetworkParams& net, std::mt19937_64& gen, double scale, double out_bias) {
    std::normal_distribution<double> d(0.0, scale);
    ltlf::seqnet::visit_blocks(net, [&](const std::string&, double* data, Eigen::Index n) {
        for (Eigen::Index i = 0; i < n; ++i) data[i] = d(gen);
    });
    net.dense_out.bias(0) = out_bias;
}

inline std::vector<ltlf::SequenceSample> random_samples(std::mt19937_64& gen, int count, int n_steps, int width,
                                                        int n_targets, double target_offset) {
    std::vector<ltlf::SequenceSample> out;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int s = 0; s < count; ++s) {
        ltlf::SequenceSample sample;
        sample.record_id = s + 1;
        for (int t = 0; t < n_steps; ++t) {
            sample.forecast_years.push_back(2000 + t);
            sample.steps.push_back(random_vector(gen, width));
        }
        for (int t = 0; t < n_targets; ++t) sample.targets.push_back(u(gen) + target_offset);
        out.push_back(std::move(sample));
    }
    return out;
}

inline ltlf::seqnet::LstmCellParams random_lstm(std::mt19937_64& gen, int h, int in, double scale) {
    ltlf::seqnet::LstmCellParams p;
    p.w_forget = random_matrix(gen, h, h + in, scale);
    p.w_input = random_matrix(gen, h, h + in, scale);
    p.w_cand = random_matrix(gen, h, h + in, scale);
    p.w_output = random_matrix(gen, h, h + in, scale);
    p.b_forget = random_vector(gen, h, scale);
    p.b_input = random_vector(gen, h, scale);
    p.b_cand = random_vector(gen, h, scale);
    p.b_output = random_vector(gen, h, scale);
    return p;
}

inline ltlf::seqnet::GruCellParams random_gru(std::mt19937_64& gen, int h, int in, double scale) {
    ltlf::seqnet::GruCellParams p;
    p.w_reset = random_matrix(gen, h, h + in, scale);
    p.w_update = random_matrix(gen, h, h + in, scale);
    p.w_cand = random_matrix(gen, h, h + in, scale);
    p.b_reset = random_vector(gen, h, scale);
    p.b_update = random_vector(gen, h, scale);
    p.b_cand = random_vector(gen, h, scale);
    return p;
}

/// AR(2) recursion from two seed values with optional Gaussian noise.
inline std::vector<double> ar2_series(double c, double phi1, double phi2, double y0, double y1, int n, double noise,
                               std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> d(0.0, noise);
    std::vector<double> y{y0, y1};
    while (static_cast<int>(y.size()) < n) {
        const std::size_t t = y.size();
        y.push_back(c + phi1 * y[t - 1] + phi2 * y[t - 2] + (noise > 0 ? d(gen) : 0.0));
    }
    return y;
}

}  // namespace testing_support
