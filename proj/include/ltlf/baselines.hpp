#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltlf/optim.hpp"
#include "ltlf/sample.hpp"
#include "ltlf/seqnet/network.hpp"

namespace ltlf::baselines {

// ---- bottom-up -------------------------------------------------------------

struct BottomUpForecast {
    double amperes = 0.0;
    bool implausible = false;  // result <= 0
};

/// Previous-year peak plus the reported large-customer net change.
BottomUpForecast bottom_up_forecast(double prev_peak, double large_customer_net_change);

// ---- AR(2) -----------------------------------------------------------------

/// y_t = intercept + phi1 * y_{t-1} + phi2 * y_{t-2}
struct Ar2Model {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double intercept = 0.0;
    bool ridge_fallback = false;
};

/// Conditional least squares over rows t >= 3. A rank-deficient design is
/// refit with ridge penalty 1e-8.
Ar2Model fit_ar2(std::span<const double> series);

/// Iterated one-step forecasts from the last two observations (older first).
std::vector<double> forecast_ar2(const Ar2Model& model, double older, double latest, int horizon);

// ---- feed-forward baselines ------------------------------------------------

enum class FnnVariant { one_year, three_year };

struct FnnModel {
    FnnVariant variant = FnnVariant::one_year;
    int input_width = 8;
    std::vector<seqnet::DenseParams> layers;  // hidden layers then the scalar output layer

    std::size_t parameter_count() const;
};

/// One-year: step_width inputs, hidden (6, 6). Three-year: n_steps * step_width
/// inputs, hidden (12, 12). ReLU everywhere, Glorot-uniform weights.
FnnModel init_fnn(FnnVariant variant, int step_width, int n_steps, std::uint64_t seed);

double fnn_forward(const FnnModel& model, const Eigen::VectorXd& x);

struct FnnExample {
    Eigen::VectorXd x;
    double target = 0.0;
};

/// Concatenates the steps of a sample, oldest first.
Eigen::VectorXd flatten_steps(const SequenceSample& sample);

/// Examples a variant learns from. One-year takes every (feeder, year) step
/// of many-to-many samples once; three-year takes one flattened window per
/// sample with its final-year target.
std::vector<FnnExample> fnn_examples(FnnVariant variant, const std::vector<SequenceSample>& samples);

/// Final-year forecast for a sample.
double fnn_forecast(const FnnModel& model, const SequenceSample& sample);

struct FnnGradient {
    Eigen::VectorXd grad;  // flat, in parameter order
    double loss = 0.0;
};

/// Mean-absolute-error gradient over the indexed examples.
FnnGradient fnn_gradients(const FnnModel& model, const std::vector<FnnExample>& examples,
                          const std::vector<std::size_t>& indices);

Eigen::VectorXd flatten(const FnnModel& model);
void unflatten(FnnModel& model, const Eigen::VectorXd& flat);

struct FnnTrainResult {
    FnnModel model;
    std::vector<double> loss_history;
};

FnnTrainResult fnn_train(const FnnModel& model, const std::vector<FnnExample>& examples,
                         const TrainHyperparams& hyper);

}  // namespace ltlf::baselines
