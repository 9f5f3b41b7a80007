#include "ltlf/seqdata/pipeline.hpp"

#include <map>

#include "ltlf/error.hpp"

namespace ltlf::seqdata {

namespace {

// Raw indices of the columns that bypass PCA, in network-input order.
std::vector<std::size_t> direct_columns(const RawLayout& layout) {
    std::vector<std::size_t> cols{RawLayout::prev_peak, RawLayout::prev_residential,
                                  RawLayout::prev_commercial, layout.temperature(),
                                  layout.temperature_change(), layout.large_customer()};
    if (layout.der) cols.push_back(layout.der_index());
    if (layout.ev) cols.push_back(layout.ev_index());
    return cols;
}

}  // namespace

FeaturePipeline fit_pipeline(const std::vector<SequenceSample>& raw_train, const RawLayout& layout,
                             std::vector<std::string> econ_names, const PipelineOptions& options) {
    if (raw_train.empty()) throw DomainError("cannot fit the feature pipeline without training samples");
    if (econ_names.size() != layout.econ_count) throw ShapeError("economic column names do not match layout");

    FeaturePipeline p;
    p.econ_names = std::move(econ_names);
    p.layout = layout;

    const auto direct = direct_columns(layout);
    std::size_t n_rows = 0;
    for (const auto& s : raw_train) n_rows += s.steps.size();
    Eigen::MatrixXd direct_rows(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(direct.size()));
    std::map<int, Eigen::VectorXd> econ_by_year;

    Eigen::Index r = 0;
    for (const auto& s : raw_train) {
        for (std::size_t t = 0; t < s.steps.size(); ++t) {
            const auto& x = s.steps[t];
            if (static_cast<std::size_t>(x.size()) != layout.width()) throw ShapeError("raw step width mismatch");
            for (std::size_t c = 0; c < direct.size(); ++c) {
                direct_rows(r, static_cast<Eigen::Index>(c)) = x(static_cast<Eigen::Index>(direct[c]));
            }
            ++r;
            if (layout.econ_count > 0) {
                econ_by_year.emplace(s.forecast_years.at(t),
                                     x.segment(static_cast<Eigen::Index>(layout.econ_begin()),
                                               static_cast<Eigen::Index>(layout.econ_count)));
            }
        }
    }
    p.step_stats = featlab::fit_normalizer(direct_rows);

    if (layout.econ_count > 0) {
        Eigen::MatrixXd econ(static_cast<Eigen::Index>(econ_by_year.size()),
                             static_cast<Eigen::Index>(layout.econ_count));
        Eigen::Index row = 0;
        for (const auto& [year, v] : econ_by_year) econ.row(row++) = v.transpose();
        p.econ_stats = featlab::fit_normalizer(econ);
        p.pca = featlab::fit_pca(featlab::apply_normalizer(p.econ_stats, econ));
        const int k = static_cast<int>(layout.econ_count);
        if (options.fixed_components > 0) {
            if (options.fixed_components > k) throw DomainError("more components requested than economic columns");
            p.pca.selected_count = options.fixed_components;
        } else if (p.pca.eigenvalues.sum() > 0.0) {
            p.pca.selected_count = featlab::components_for_pve(p.pca, options.pve_threshold);
        } else {
            p.pca.selected_count = 1;
        }
    }
    return p;
}

Eigen::VectorXd FeaturePipeline::transform_step(const Eigen::VectorXd& raw) const {
    if (static_cast<std::size_t>(raw.size()) != layout.width()) throw ShapeError("raw step width mismatch");
    const auto direct = direct_columns(layout);
    Eigen::VectorXd out(input_width());

    Eigen::Index o = 0;
    for (std::size_t c = 0; c < 3; ++c) out(o++) = step_stats.apply(c, raw(static_cast<Eigen::Index>(direct[c])));
    if (layout.econ_count > 0) {
        Eigen::MatrixXd econ(1, static_cast<Eigen::Index>(layout.econ_count));
        for (std::size_t e = 0; e < layout.econ_count; ++e) {
            econ(0, static_cast<Eigen::Index>(e)) =
                econ_stats.apply(e, raw(static_cast<Eigen::Index>(layout.econ_begin() + e)));
        }
        const Eigen::MatrixXd projected = featlab::project_pca(pca, econ);
        for (Eigen::Index j = 0; j < projected.cols(); ++j) out(o++) = projected(0, j);
    }
    for (std::size_t c = 3; c < direct.size(); ++c) {
        out(o++) = step_stats.apply(c, raw(static_cast<Eigen::Index>(direct[c])));
    }
    return out;
}

SequenceSample FeaturePipeline::transform(const SequenceSample& raw) const {
    SequenceSample out = raw;
    for (auto& step : out.steps) step = transform_step(step);
    for (auto& target : out.targets) target = normalize_peak(target);
    return out;
}

std::vector<SequenceSample> transform_all(const FeaturePipeline& pipeline,
                                          const std::vector<SequenceSample>& raw) {
    std::vector<SequenceSample> out;
    out.reserve(raw.size());
    for (const auto& s : raw) out.push_back(pipeline.transform(s));
    return out;
}

}  // namespace ltlf::seqdata
