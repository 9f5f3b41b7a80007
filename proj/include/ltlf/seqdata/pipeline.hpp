#pragma once

#include <string>
#include <vector>

#include "ltlf/featlab/normalize.hpp"
#include "ltlf/featlab/pca.hpp"
#include "ltlf/sample.hpp"
#include "ltlf/seqdata/samples.hpp"

namespace ltlf::seqdata {

struct PipelineOptions {
    double pve_threshold = 0.95;
    /// Forces this many principal components when positive.
    int fixed_components = 0;
};

/// Fitted feature transform from raw step vectors to network inputs.
///
/// Network input layout: previous-year peak, residential share, commercial
/// share, principal components..., temperature, temperature change,
/// large-customer change, [DER], [EV]. Every non-PCA column is min-max
/// normalized; the economic columns are min-max normalized and then
/// projected. Targets share the previous-year-peak scaling.
struct FeaturePipeline {
    std::vector<std::string> econ_names;
    RawLayout layout;
    featlab::NormalizationStats econ_stats;
    featlab::PcaTransform pca;  // empty when there are no economic columns
    featlab::NormalizationStats step_stats;

    int component_count() const { return layout.econ_count == 0 ? 0 : pca.selected_count; }
    int input_width() const { return static_cast<int>(step_stats.columns()) + component_count(); }

    Eigen::VectorXd transform_step(const Eigen::VectorXd& raw) const;
    /// Normalizes steps and targets.
    SequenceSample transform(const SequenceSample& raw) const;
    double normalize_peak(double amperes) const { return step_stats.apply(0, amperes); }
    double denormalize_peak(double normalized) const { return step_stats.invert(0, normalized); }
};

/// Fits on training samples only. Economic scaling and PCA use one row per
/// distinct forecast year; the remaining columns use every training step.
FeaturePipeline fit_pipeline(const std::vector<SequenceSample>& raw_train, const RawLayout& layout,
                             std::vector<std::string> econ_names, const PipelineOptions& options);

std::vector<SequenceSample> transform_all(const FeaturePipeline& pipeline,
                                          const std::vector<SequenceSample>& raw);

}  // namespace ltlf::seqdata
