#include "ltlf/featlab/pca.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ltlf/error.hpp"

namespace ltlf::featlab {

PcaTransform fit_pca(const Eigen::MatrixXd& features) {
    if (features.rows() < 2) throw DomainError("PCA needs at least two rows");
    if (features.cols() < 1) throw DomainError("PCA needs at least one column");

    const Eigen::Index k = features.cols();
    PcaTransform t;
    t.column_means = features.colwise().mean().transpose();
    const Eigen::MatrixXd centered = features.rowwise() - t.column_means.transpose();
    const Eigen::MatrixXd scatter = centered.transpose() * centered;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scatter);
    if (solver.info() != Eigen::Success) throw DomainError("eigendecomposition failed");

    Eigen::MatrixXd vecs = solver.eigenvectors();
    Eigen::VectorXd vals = solver.eigenvalues();
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::Index arg;
        vecs.col(j).cwiseAbs().maxCoeff(&arg);
        if (vecs(arg, j) < 0.0) vecs.col(j) = -vecs.col(j);
        // XᵀX is positive semidefinite; negatives are round-off
        if (vals(j) < 0.0) vals(j) = 0.0;
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (vals(a) != vals(b)) return vals(a) > vals(b);
        for (Eigen::Index i = 0; i < k; ++i) {
            if (vecs(i, a) != vecs(i, b)) return vecs(i, a) > vecs(i, b);
        }
        return false;
    });

    t.components.resize(k, k);
    t.eigenvalues.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        t.components.col(j) = vecs.col(order[static_cast<std::size_t>(j)]);
        t.eigenvalues(j) = vals(order[static_cast<std::size_t>(j)]);
    }
    t.selected_count = static_cast<int>(k);
    return t;
}

double proportion_variance_explained(const PcaTransform& transform, int t) {
    const int k = static_cast<int>(transform.eigenvalues.size());
    if (t < 1 || t > k) throw DomainError("component count outside [1, k]");
    const double total = transform.eigenvalues.sum();
    if (!(total > 0.0)) throw DomainError("all eigenvalues are zero (constant data)");
    if (t == k) return 1.0;
    return transform.eigenvalues.head(t).sum() / total;
}

int components_for_pve(const PcaTransform& transform, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw DomainError("PVE threshold must lie in (0, 1]");
    const int k = static_cast<int>(transform.eigenvalues.size());
    for (int t = 1; t < k; ++t) {
        if (proportion_variance_explained(transform, t) >= threshold) return t;
    }
    return k;
}

Eigen::MatrixXd project_pca(const PcaTransform& transform, const Eigen::MatrixXd& features) {
    if (features.cols() != transform.column_means.size()) {
        throw ShapeError("PCA input has " + std::to_string(features.cols()) + " columns, expected " +
                         std::to_string(transform.column_means.size()));
    }
    const Eigen::MatrixXd centered = features.rowwise() - transform.column_means.transpose();
    return centered * transform.components.leftCols(transform.selected_count);
}

}  // namespace ltlf::featlab
