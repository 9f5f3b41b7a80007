#include <cmath>

#include <Eigen/QR>

#include "ltlf/baselines.hpp"
#include "ltlf/error.hpp"

namespace ltlf::baselines {

Ar2Model fit_ar2(std::span<const double> series) {
    if (series.size() < 5) throw DomainError("AR(2) fit needs at least 5 observations");
    for (double v : series) {
        if (!std::isfinite(v)) throw DomainError("AR(2) series contains a non-finite value");
    }

    const Eigen::Index rows = static_cast<Eigen::Index>(series.size()) - 2;
    Eigen::MatrixXd design(rows, 3);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto t = static_cast<std::size_t>(r + 2);
        design(r, 0) = 1.0;
        design(r, 1) = series[t - 1];
        design(r, 2) = series[t - 2];
        y(r) = series[t];
    }

    Ar2Model model;
    Eigen::VectorXd beta;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() == 3) {
        beta = qr.solve(y);
    } else {
        constexpr double ridge = 1e-8;
        const Eigen::MatrixXd gram = design.transpose() * design + ridge * Eigen::MatrixXd::Identity(3, 3);
        beta = gram.ldlt().solve(design.transpose() * y);
        model.ridge_fallback = true;
    }
    if (!beta.allFinite()) throw FitError("AR(2) fit produced non-finite coefficients");

    model.intercept = beta(0);
    model.phi1 = beta(1);
    model.phi2 = beta(2);
    return model;
}

std::vector<double> forecast_ar2(const Ar2Model& model, double older, double latest, int horizon) {
    if (horizon < 1) throw DomainError("AR(2) horizon must be at least 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(horizon));
    for (int h = 0; h < horizon; ++h) {
        const double next = model.intercept + model.phi1 * latest + model.phi2 * older;
        out.push_back(next);
        older = latest;
        latest = next;
    }
    return out;
}

}  // namespace ltlf::baselines
