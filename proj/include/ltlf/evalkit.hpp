#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace ltlf::evalkit {

/// Per-record |A - F| / A * 100. Throws DomainError on a zero actual.
std::vector<double> absolute_percentage_errors(std::span<const double> actuals,
                                               std::span<const double> forecasts);

/// Mean absolute percentage error, in percent.
double mape(std::span<const double> actuals, std::span<const double> forecasts);

/// Percentage of records whose error is at most `threshold` percent.
double cumulative_within(std::span<const double> errors, double threshold = 10.0);

/// Half-open bins [i*w, (i+1)*w) from 0 through the largest error.
struct Histogram {
    double bin_width = 2.0;
    std::vector<std::size_t> counts;
    bool empty = true;

    double lower_edge(std::size_t bin) const { return bin_width * static_cast<double>(bin); }
    std::size_t total() const;
};

Histogram error_histogram(std::span<const double> errors, double bin_width);

struct EvalReport {
    std::string label;
    std::string season;
    std::vector<double> errors;  // per-record absolute percentage error
    double mape = 0.0;
    double cumulative_within_10pct = 0.0;
    Histogram histogram;
    std::optional<double> training_time_seconds;
};

EvalReport make_report(std::string label, std::string season, std::span<const double> actuals,
                       std::span<const double> forecasts, double bin_width = 2.0,
                       std::optional<double> training_time_seconds = std::nullopt);

/// Aligned-column text; the leading `key: value` lines are machine readable.
std::string to_text(const EvalReport& report);
nlohmann::json to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& doc);
/// Reads either the JSON or the text form.
EvalReport parse_report(const std::string& content);

/// Model x season MAPE grid, rows in first-seen order.
std::string compare_reports(const std::vector<EvalReport>& reports);

}  // namespace ltlf::evalkit
