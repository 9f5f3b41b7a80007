#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ltlf::featlab {

/// Per-column min/max seen when fitting.
struct NormalizationStats {
    std::vector<double> min;
    std::vector<double> max;

    std::size_t columns() const { return min.size(); }
    bool degenerate(std::size_t col) const { return max[col] == min[col]; }

    /// Maps one value of column `col` into the fitted range. Degenerate
    /// columns map to 0. Out-of-range values are not clamped.
    double apply(std::size_t col, double raw) const;
    double invert(std::size_t col, double normalized) const;
};

NormalizationStats fit_normalizer(const Eigen::MatrixXd& features);

Eigen::MatrixXd apply_normalizer(const NormalizationStats& stats, const Eigen::MatrixXd& features);

/// Inverse affine map; degenerate columns return the fitted constant.
Eigen::MatrixXd invert_normalizer(const NormalizationStats& stats, const Eigen::MatrixXd& normalized);

}  // namespace ltlf::featlab
