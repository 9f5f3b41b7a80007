#include "ltlf/seqdata/forecast.hpp"

#include <algorithm>

#include "ltlf/error.hpp"

namespace ltlf::seqdata {

double normalize_temperature_scenario(std::span<const double> history, double margin, Season season) {
    if (history.empty()) throw DomainError("temperature history is empty");
    const double extreme = season == Season::summer ? *std::max_element(history.begin(), history.end())
                                                    : *std::min_element(history.begin(), history.end());
    return extreme + margin;
}

ChainResult chain_forecast(const seqnet::NetworkParams& net, const FeaturePipeline& pipeline,
                           const std::map<int, FeederYearRecord>& history, const RegionalHistory& regional,
                           const Scenario& scenario, int horizon) {
    if (horizon < 0) throw DomainError("horizon must be nonnegative");
    ChainResult result;
    if (horizon == 0) return result;
    if (history.empty()) throw DomainError("feeder history is empty");

    const int n = net.n_steps;
    const int last = history.rbegin()->first;
    for (int year = last - n + 1; year <= last; ++year) {
        if (!history.contains(year)) {
            throw DomainError("history must cover " + std::to_string(n) + " consecutive years ending at " +
                              std::to_string(last));
        }
    }
    if (pipeline.input_width() != net.input_width) throw ShapeError("pipeline and network input widths differ");

    std::map<int, FeederYearRecord> extended = history;
    RegionalHistory reg = regional;
    // drop regional rows beyond the last actual feeder year; the scenario replaces them
    for (auto it = reg.years.upper_bound(last); it != reg.years.end();) it = reg.years.erase(it);
    if (!reg.years.contains(last)) throw DomainError("regional history does not reach " + std::to_string(last));

    const FeederYearRecord& base = history.at(last);
    std::vector<double> econ = reg.years.at(last).econ;
    for (int year = last + 1; year <= last + horizon; ++year) {
        if (auto it = scenario.econ.find(year); it != scenario.econ.end()) econ = it->second;
        if (econ.size() != pipeline.layout.econ_count) throw ShapeError("scenario economic row has the wrong width");
        RegionalYearRecord r;
        r.year = year;
        r.econ = econ;
        r.temperature = scenario.temperature;
        reg.years[year] = std::move(r);
    }
    reg.update_temperature_changes();

    for (int year = last + 1; year <= last + horizon; ++year) {
        FeederYearRecord rec = base;
        rec.year = year;
        auto lc = scenario.large_customer_change.find(year);
        rec.large_customer_net_change = lc == scenario.large_customer_change.end() ? 0.0 : lc->second;
        extended[year] = rec;  // peak filled in once forecast

        SequenceSample window;
        window.feeder_id = base.feeder_id;
        for (int y = year - n + 1; y <= year; ++y) {
            StepOutcome step = raw_step_features(extended, reg, y, pipeline.layout);
            if (!step.step) throw DomainError("cannot build forecast window: " + step.reason);
            window.forecast_years.push_back(y);
            window.steps.push_back(std::move(*step.step));
        }

        SequenceSample input = pipeline.transform(window);
        const std::vector<double> out = seqnet::forward_sequence(net, input.steps);
        const double peak = pipeline.denormalize_peak(out.back());

        extended[year].peak_demand = peak;
        result.years.push_back(year);
        result.forecasts.push_back(peak);
        result.windows.push_back(std::move(window));
    }
    return result;
}

}  // namespace ltlf::seqdata
