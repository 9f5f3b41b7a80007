#include "ltlf/featlab/normalize.hpp"

#include "ltlf/error.hpp"

namespace ltlf::featlab {

double NormalizationStats::apply(std::size_t col, double raw) const {
    if (degenerate(col)) return 0.0;
    return (raw - min[col]) / (max[col] - min[col]);
}

double NormalizationStats::invert(std::size_t col, double normalized) const {
    if (degenerate(col)) return min[col];
    return min[col] + normalized * (max[col] - min[col]);
}

NormalizationStats fit_normalizer(const Eigen::MatrixXd& features) {
    if (features.rows() == 0 || features.cols() == 0) throw DomainError("cannot fit a normalizer on an empty matrix");
    NormalizationStats stats;
    for (Eigen::Index c = 0; c < features.cols(); ++c) {
        stats.min.push_back(features.col(c).minCoeff());
        stats.max.push_back(features.col(c).maxCoeff());
    }
    return stats;
}

Eigen::MatrixXd apply_normalizer(const NormalizationStats& stats, const Eigen::MatrixXd& features) {
    if (static_cast<std::size_t>(features.cols()) != stats.columns()) {
        throw ShapeError("matrix has " + std::to_string(features.cols()) + " columns, normalizer expects " +
                         std::to_string(stats.columns()));
    }
    Eigen::MatrixXd out(features.rows(), features.cols());
    for (Eigen::Index c = 0; c < features.cols(); ++c) {
        for (Eigen::Index r = 0; r < features.rows(); ++r) {
            out(r, c) = stats.apply(static_cast<std::size_t>(c), features(r, c));
        }
    }
    return out;
}

Eigen::MatrixXd invert_normalizer(const NormalizationStats& stats, const Eigen::MatrixXd& normalized) {
    if (static_cast<std::size_t>(normalized.cols()) != stats.columns()) {
        throw ShapeError("normalized matrix column count does not match the normalizer");
    }
    Eigen::MatrixXd out(normalized.rows(), normalized.cols());
    for (Eigen::Index c = 0; c < normalized.cols(); ++c) {
        for (Eigen::Index r = 0; r < normalized.rows(); ++r) {
            out(r, c) = stats.invert(static_cast<std::size_t>(c), normalized(r, c));
        }
    }
    return out;
}

}  // namespace ltlf::featlab
