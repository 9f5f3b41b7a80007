#include "ltlf/seqdata/samples.hpp"

#include <set>

#include "ltlf/error.hpp"

namespace ltlf {

std::string to_string(Season season) { return season == Season::summer ? "summer" : "winter"; }

Season parse_season(const std::string& text) {
    if (text == "summer") return Season::summer;
    if (text == "winter") return Season::winter;
    throw DomainError("unknown season: " + text);
}

}  // namespace ltlf

namespace ltlf::seqdata {

RawLayout infer_layout(const FeederTable& feeders, const RegionalHistory& regional) {
    RawLayout layout;
    layout.econ_count = regional.econ_names.size();
    bool first = true;
    for (const auto& [id, hist] : feeders) {
        for (const auto& [year, rec] : hist) {
            if (first) {
                layout.der = rec.der_growth.has_value();
                layout.ev = rec.ev_growth.has_value();
                first = false;
            } else if (rec.der_growth.has_value() != layout.der || rec.ev_growth.has_value() != layout.ev) {
                throw ConsistencyError("optional DER/EV features must be present on all rows or none (feeder " +
                                       id + ", year " + std::to_string(year) + ")");
            }
        }
    }
    return layout;
}

StepOutcome raw_step_features(const std::map<int, FeederYearRecord>& history,
                              const RegionalHistory& regional, int year, const RawLayout& layout) {
    auto prev = history.find(year - 1);
    if (prev == history.end()) return {std::nullopt, "no feeder data for " + std::to_string(year - 1)};
    auto cur = history.find(year);
    if (cur == history.end()) return {std::nullopt, "no feeder data for " + std::to_string(year)};
    auto reg = regional.years.find(year);
    if (reg == regional.years.end()) return {std::nullopt, "no regional data for " + std::to_string(year)};
    if (!reg->second.temperature_change) {
        return {std::nullopt, "no temperature change for " + std::to_string(year)};
    }
    if (reg->second.econ.size() != layout.econ_count) {
        throw ShapeError("regional year " + std::to_string(year) + " has the wrong number of economic columns");
    }

    Eigen::VectorXd x(static_cast<Eigen::Index>(layout.width()));
    auto at = [&](std::size_t i) -> double& { return x(static_cast<Eigen::Index>(i)); };
    at(RawLayout::prev_peak) = prev->second.peak_demand;
    at(RawLayout::prev_residential) = prev->second.residential_pct;
    at(RawLayout::prev_commercial) = prev->second.commercial_pct;
    for (std::size_t e = 0; e < layout.econ_count; ++e) at(layout.econ_begin() + e) = reg->second.econ[e];
    at(layout.temperature()) = reg->second.temperature;
    at(layout.temperature_change()) = *reg->second.temperature_change;
    at(layout.large_customer()) = cur->second.large_customer_net_change;
    if (layout.der) at(layout.der_index()) = cur->second.der_growth.value_or(0.0);
    if (layout.ev) at(layout.ev_index()) = cur->second.ev_growth.value_or(0.0);
    return {std::move(x), {}};
}

BuildResult build_sequence_samples(const FeederTable& feeders, const RegionalHistory& regional,
                                   seqnet::SeqConfig config, int n_steps,
                                   std::span<const TransferEvent> transfer_log) {
    if (n_steps < 1) throw DomainError("n_steps must be positive");
    const RawLayout layout = infer_layout(feeders, regional);

    std::map<std::string, std::set<int>> transfer_years;
    for (const auto& ev : transfer_log) {
        for (const auto& id : ev.feeder_ids) transfer_years[id].insert(ev.year);
    }

    BuildResult out;
    int next_id = 1;
    for (const auto& [feeder_id, history] : feeders) {
        if (history.empty()) continue;
        const int first_year = history.begin()->first + 1;
        const int last_year = history.rbegin()->first;
        for (int start = first_year; start + n_steps - 1 <= last_year; ++start) {
            const int end = start + n_steps - 1;
            SequenceSample s;
            s.feeder_id = feeder_id;
            std::string reason;

            auto tr = transfer_years.find(feeder_id);
            if (tr != transfer_years.end()) {
                // a transfer effective in year e splits (e-1, e)
                auto it = tr->second.upper_bound(start - 1);
                if (it != tr->second.end() && *it <= end) {
                    reason = "crosses transfer in " + std::to_string(*it);
                }
            }

            for (int year = start; year <= end && reason.empty(); ++year) {
                StepOutcome step = raw_step_features(history, regional, year, layout);
                if (!step.step) {
                    reason = step.reason;
                    break;
                }
                s.forecast_years.push_back(year);
                s.steps.push_back(std::move(*step.step));
                s.targets.push_back(history.at(year).peak_demand);
            }
            if (!reason.empty()) {
                out.skipped.push_back("feeder " + feeder_id + " window " + std::to_string(start) + "-" +
                                      std::to_string(end) + ": " + reason);
                continue;
            }
            s.record_id = next_id++;
            out.samples.push_back(to_config(s, config));
        }
    }
    return out;
}

SequenceSample to_config(const SequenceSample& sample, seqnet::SeqConfig config) {
    if (config == seqnet::SeqConfig::many_to_many || sample.targets.size() <= 1) return sample;
    SequenceSample out = sample;
    out.targets = {sample.targets.back()};
    return out;
}

void validate_sample(const SequenceSample& sample, seqnet::SeqConfig config, int n_steps, int width) {
    const std::string tag = "sample " + std::to_string(sample.record_id);
    if (static_cast<int>(sample.steps.size()) != n_steps ||
        static_cast<int>(sample.forecast_years.size()) != n_steps) {
        throw ShapeError(tag + ": step count differs from n_steps");
    }
    for (std::size_t t = 1; t < sample.forecast_years.size(); ++t) {
        if (sample.forecast_years[t] != sample.forecast_years[t - 1] + 1) {
            throw ConsistencyError(tag + ": forecast years are not consecutive");
        }
    }
    for (const auto& step : sample.steps) {
        if (step.size() != width) throw ShapeError(tag + ": step width differs from input width");
    }
    const std::size_t expected = config == seqnet::SeqConfig::many_to_one ? 1 : static_cast<std::size_t>(n_steps);
    if (sample.targets.size() != expected) throw ShapeError(tag + ": target count does not match configuration");
}

}  // namespace ltlf::seqdata
