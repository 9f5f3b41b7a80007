#pragma once

#include <Eigen/Dense>

namespace ltlf::featlab {

/// Fitted principal axes.
///
/// Column j of `components` is the j-th eigenvector of XᵀX for the
/// mean-shifted fitting data, ordered by descending eigenvalue. Each column's
/// largest-magnitude entry is positive.
struct PcaTransform {
    Eigen::VectorXd column_means;
    Eigen::MatrixXd components;
    Eigen::VectorXd eigenvalues;
    int selected_count = 0;

    int input_width() const { return static_cast<int>(column_means.size()); }
};

/// Fits on the rows of `features`; selected_count starts at k.
PcaTransform fit_pca(const Eigen::MatrixXd& features);

/// Share of total eigenvalue mass held by the first `t` components.
double proportion_variance_explained(const PcaTransform& transform, int t);

/// Smallest t whose PVE reaches `threshold` (in (0, 1]).
int components_for_pve(const PcaTransform& transform, double threshold);

/// Mean-shifts, rotates, and keeps the first selected_count columns.
Eigen::MatrixXd project_pca(const PcaTransform& transform, const Eigen::MatrixXd& features);

}  // namespace ltlf::featlab
