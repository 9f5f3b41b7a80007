#include <cstdio>
#include <map>
#include <sstream>

#include "ltlf/error.hpp"
#include "ltlf/evalkit.hpp"

namespace ltlf::evalkit {

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

EvalReport make_report(std::string label, std::string season, std::span<const double> actuals,
                       std::span<const double> forecasts, double bin_width,
                       std::optional<double> training_time_seconds) {
    EvalReport r;
    r.label = std::move(label);
    r.season = std::move(season);
    r.errors = absolute_percentage_errors(actuals, forecasts);
    r.mape = mape(actuals, forecasts);
    r.cumulative_within_10pct = cumulative_within(r.errors, 10.0);
    r.histogram = error_histogram(r.errors, bin_width);
    r.training_time_seconds = training_time_seconds;
    return r;
}

std::string to_text(const EvalReport& r) {
    std::ostringstream out;
    out << "model: " << r.label << '\n';
    out << "season: " << r.season << '\n';
    out << "records: " << r.errors.size() << '\n';
    out << "mape_pct: " << fixed(r.mape, 4) << '\n';
    out << "cumulative_within_10pct: " << fixed(r.cumulative_within_10pct, 2) << '\n';
    if (r.training_time_seconds) out << "training_time_s: " << fixed(*r.training_time_seconds, 3) << '\n';
    out << '\n' << pad("bin_pct", 16) << lpad("count", 8) << '\n';
    for (std::size_t b = 0; b < r.histogram.counts.size(); ++b) {
        const std::string range = "[" + fixed(r.histogram.lower_edge(b), 1) + "," +
                                  fixed(r.histogram.lower_edge(b + 1), 1) + ")";
        out << pad(range, 16) << lpad(std::to_string(r.histogram.counts[b]), 8) << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const EvalReport& r) {
    nlohmann::json doc;
    doc["model"] = r.label;
    doc["season"] = r.season;
    doc["records"] = r.errors.size();
    doc["mape_pct"] = r.mape;
    doc["cumulative_within_10pct"] = r.cumulative_within_10pct;
    doc["errors_pct"] = r.errors;
    doc["histogram"] = {{"bin_width", r.histogram.bin_width}, {"counts", r.histogram.counts},
                        {"empty", r.histogram.empty}};
    if (r.training_time_seconds) doc["training_time_s"] = *r.training_time_seconds;
    return doc;
}

EvalReport report_from_json(const nlohmann::json& doc) {
    EvalReport r;
    r.label = doc.at("model").get<std::string>();
    r.season = doc.at("season").get<std::string>();
    r.mape = doc.at("mape_pct").get<double>();
    r.cumulative_within_10pct = doc.at("cumulative_within_10pct").get<double>();
    r.errors = doc.value("errors_pct", std::vector<double>{});
    if (doc.contains("histogram")) {
        const auto& h = doc["histogram"];
        r.histogram.bin_width = h.at("bin_width").get<double>();
        r.histogram.counts = h.at("counts").get<std::vector<std::size_t>>();
        r.histogram.empty = h.at("empty").get<bool>();
    }
    if (doc.contains("training_time_s")) r.training_time_seconds = doc["training_time_s"].get<double>();
    return r;
}

EvalReport parse_report(const std::string& content) {
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        return report_from_json(nlohmann::json::parse(content));
    }
    EvalReport r;
    std::istringstream in(content);
    std::string line;
    bool have_mape = false;
    while (std::getline(in, line) && !line.empty()) {
        const auto colon = line.find(": ");
        if (colon == std::string::npos) continue;
        const std::string key = line.substr(0, colon);
        const std::string value = line.substr(colon + 2);
        if (key == "model") r.label = value;
        else if (key == "season") r.season = value;
        else if (key == "mape_pct") r.mape = std::stod(value), have_mape = true;
        else if (key == "cumulative_within_10pct") r.cumulative_within_10pct = std::stod(value);
        else if (key == "training_time_s") r.training_time_seconds = std::stod(value);
    }
    if (r.label.empty() || !have_mape) throw IoError("not an evaluation report");
    return r;
}

std::string compare_reports(const std::vector<EvalReport>& reports) {
    std::vector<std::string> labels;
    std::map<std::string, std::map<std::string, double>> grid;
    for (const auto& r : reports) {
        if (!grid.contains(r.label)) labels.push_back(r.label);
        grid[r.label][r.season] = r.mape;
    }
    std::size_t width = 5;
    for (const auto& l : labels) width = std::max(width, l.size());
    width += 2;

    std::ostringstream out;
    out << pad("Model", width) << lpad("Summer MAPE (%)", 17) << lpad("Winter MAPE (%)", 17) << '\n';
    for (const auto& l : labels) {
        out << pad(l, width);
        for (const char* season : {"summer", "winter"}) {
            auto it = grid[l].find(season);
            out << lpad(it == grid[l].end() ? "-" : fixed(it->second, 2), 17);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ltlf::evalkit
