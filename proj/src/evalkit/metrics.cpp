#include <cmath>
#include <numeric>

#include "ltlf/error.hpp"
#include "ltlf/evalkit.hpp"

namespace ltlf::evalkit {

std::vector<double> absolute_percentage_errors(std::span<const double> actuals,
                                               std::span<const double> forecasts) {
    if (actuals.size() != forecasts.size()) throw ShapeError("actual and forecast lengths differ");
    if (actuals.empty()) throw DomainError("MAPE over zero records");
    std::vector<double> errors;
    errors.reserve(actuals.size());
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        if (actuals[i] == 0.0) throw DomainError("MAPE is undefined for a zero actual peak");
        errors.push_back(std::abs((actuals[i] - forecasts[i]) / actuals[i]) * 100.0);
    }
    return errors;
}

double mape(std::span<const double> actuals, std::span<const double> forecasts) {
    const auto errors = absolute_percentage_errors(actuals, forecasts);
    return std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
}

double cumulative_within(std::span<const double> errors, double threshold) {
    if (errors.empty()) throw DomainError("cumulative percentage over zero records");
    std::size_t hits = 0;
    for (double e : errors) hits += e <= threshold ? 1 : 0;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(errors.size());
}

std::size_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

Histogram error_histogram(std::span<const double> errors, double bin_width) {
    if (!(bin_width > 0.0)) throw DomainError("histogram bin width must be positive");
    Histogram h;
    h.bin_width = bin_width;
    h.empty = errors.empty();
    if (h.empty) return h;

    double max_error = 0.0;
    for (double e : errors) {
        if (!(e >= 0.0) || !std::isfinite(e)) throw DomainError("histogram errors must be finite and nonnegative");
        max_error = std::max(max_error, e);
    }
    h.counts.assign(static_cast<std::size_t>(std::floor(max_error / bin_width)) + 1, 0);
    for (double e : errors) {
        auto bin = static_cast<std::size_t>(std::floor(e / bin_width));
        if (bin >= h.counts.size()) bin = h.counts.size() - 1;
        ++h.counts[bin];
    }
    return h;
}

}  // namespace ltlf::evalkit
