#include <fstream>
#include <set>

#include "ltlf/cli.hpp"
#include "ltlf/error.hpp"
#include "ltlf/io/csv.hpp"

namespace ltlf::cli {

using nlohmann::json;

namespace {

json synth_to_json(const synthgrid::SynthConfig& s) {
    return json{{"n_feeders", s.n_feeders},
                {"years", s.years},
                {"first_year", s.first_year},
                {"seed", s.seed},
                {"gdp_mean", s.gdp_mean},
                {"gdp_sd", s.gdp_sd},
                {"employment_mean", s.employment_mean},
                {"employment_sd", s.employment_sd},
                {"population_mean", s.population_mean},
                {"population_sd", s.population_sd},
                {"migration_mean", s.migration_mean},
                {"migration_sd", s.migration_sd},
                {"factor_persistence", s.factor_persistence},
                {"idiosyncratic_share", s.idiosyncratic_share},
                {"temperature_mean", s.temperature_mean},
                {"temperature_sd", s.temperature_sd},
                {"base_peak_min", s.base_peak_min},
                {"base_peak_max", s.base_peak_max},
                {"residential_min", s.residential_min},
                {"residential_max", s.residential_max},
                {"commercial_max", s.commercial_max},
                {"growth_sensitivity_min", s.growth_sensitivity_min},
                {"growth_sensitivity_max", s.growth_sensitivity_max},
                {"temperature_sensitivity_min", s.temperature_sensitivity_min},
                {"temperature_sensitivity_max", s.temperature_sensitivity_max},
                {"composition_drift", s.composition_drift},
                {"noise", s.noise},
                {"large_customer_probability", s.large_customer_probability},
                {"large_customer_max_fraction", s.large_customer_max_fraction},
                {"lag_weights", s.lag_weights},
                {"local_trend_max", s.local_trend_max},
                {"local_trend_min", s.local_trend_min},
                {"transfer_fraction", s.transfer_fraction},
                {"transfer_min_fraction", s.transfer_min_fraction},
                {"transfer_max_fraction", s.transfer_max_fraction},
                {"multi_feeder_probability", s.multi_feeder_probability}};
}

template <typename T>
void take(const json& doc, const char* key, T& field) {
    if (auto it = doc.find(key); it != doc.end()) field = it->get<T>();
}

synthgrid::SynthConfig synth_from_json(synthgrid::SynthConfig s, const json& doc) {
    const json known = synth_to_json(s);
    for (const auto& [key, value] : doc.items()) {
        if (!known.contains(key)) throw DomainError("unknown synth setting: " + key);
    }
    take(doc, "n_feeders", s.n_feeders);
    take(doc, "years", s.years);
    take(doc, "first_year", s.first_year);
    take(doc, "seed", s.seed);
    take(doc, "gdp_mean", s.gdp_mean);
    take(doc, "gdp_sd", s.gdp_sd);
    take(doc, "employment_mean", s.employment_mean);
    take(doc, "employment_sd", s.employment_sd);
    take(doc, "population_mean", s.population_mean);
    take(doc, "population_sd", s.population_sd);
    take(doc, "migration_mean", s.migration_mean);
    take(doc, "migration_sd", s.migration_sd);
    take(doc, "factor_persistence", s.factor_persistence);
    take(doc, "idiosyncratic_share", s.idiosyncratic_share);
    take(doc, "temperature_mean", s.temperature_mean);
    take(doc, "temperature_sd", s.temperature_sd);
    take(doc, "base_peak_min", s.base_peak_min);
    take(doc, "base_peak_max", s.base_peak_max);
    take(doc, "residential_min", s.residential_min);
    take(doc, "residential_max", s.residential_max);
    take(doc, "commercial_max", s.commercial_max);
    take(doc, "growth_sensitivity_min", s.growth_sensitivity_min);
    take(doc, "growth_sensitivity_max", s.growth_sensitivity_max);
    take(doc, "temperature_sensitivity_min", s.temperature_sensitivity_min);
    take(doc, "temperature_sensitivity_max", s.temperature_sensitivity_max);
    take(doc, "composition_drift", s.composition_drift);
    take(doc, "noise", s.noise);
    take(doc, "large_customer_probability", s.large_customer_probability);
    take(doc, "large_customer_max_fraction", s.large_customer_max_fraction);
    take(doc, "lag_weights", s.lag_weights);
    take(doc, "local_trend_max", s.local_trend_max);
    take(doc, "local_trend_min", s.local_trend_min);
    take(doc, "transfer_fraction", s.transfer_fraction);
    take(doc, "transfer_min_fraction", s.transfer_min_fraction);
    take(doc, "transfer_max_fraction", s.transfer_max_fraction);
    take(doc, "multi_feeder_probability", s.multi_feeder_probability);
    return s;
}

json optional_bool(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void RunConfig::validate() const {
    if (!(pve > 0.0 && pve <= 1.0)) throw DomainError("pve must lie in (0, 1]");
    if (!(split_ratio > 0.0 && split_ratio < 1.0)) throw DomainError("split_ratio must lie in (0, 1)");
    if (n_steps < 1) throw DomainError("n_steps must be positive");
    if (hidden_width < 1) throw DomainError("hidden_width must be positive");
    if (dense_widths.empty()) throw DomainError("dense_widths needs at least one layer");
    if (training.epochs < 0) throw DomainError("epochs must be nonnegative");
    if (training.batch_size < 1) throw DomainError("batch_size must be positive");
    if (!(training.learning_rate > 0.0)) throw DomainError("learning_rate must be positive");
    if (strategy != "grid" && strategy != "random") throw DomainError("strategy must be grid or random");
    if (workers < 1) throw DomainError("workers must be positive");
    if (!(validation_split >= 0.0 && validation_split < 1.0)) throw DomainError("validation_split must lie in [0, 1)");
    if (horizon < 0) throw DomainError("horizon must be nonnegative");
    if (!(bin_width > 0.0)) throw DomainError("bin_width must be positive");
    synth.validate();
}

json to_json(const RunConfig& c) {
    return json{{"feeder_years", c.feeder_years},
                {"regional_years", c.regional_years},
                {"transfer_log", c.transfer_log},
                {"dataset", c.dataset},
                {"model", c.model},
                {"scenario", c.scenario},
                {"season", to_string(c.season)},
                {"out", c.out},
                {"econ_columns", c.econ_columns},
                {"der", optional_bool(c.der)},
                {"ev", optional_bool(c.ev)},
                {"pve", c.pve},
                {"fixed_components", c.fixed_components},
                {"virtual_feeders", c.virtual_feeders},
                {"split_ratio", c.split_ratio},
                {"split_seed", c.split_seed},
                {"cell", std::string(seqnet::to_string(c.cell))},
                {"mode", std::string(seqnet::to_string(c.mode))},
                {"n_steps", c.n_steps},
                {"hidden_width", c.hidden_width},
                {"dense_widths", c.dense_widths},
                {"epochs", c.training.epochs},
                {"batch_size", c.training.batch_size},
                {"learning_rate", c.training.learning_rate},
                {"optimizer", std::string(to_string(c.training.optimizer))},
                {"clip_norm", c.training.clip_norm},
                {"seed", c.seed},
                {"strategy", c.strategy},
                {"trials", c.trials},
                {"workers", c.workers},
                {"validation_split", c.validation_split},
                {"search_space", c.search_space},
                {"temp_margin", c.temp_margin},
                {"horizon", c.horizon},
                {"event_margin", c.event_margin},
                {"feeders", c.feeders},
                {"bin_width", c.bin_width},
                {"synth", synth_to_json(c.synth)},
                {"winter_temperature_mean", c.winter_temperature_mean},
                {"winter_temperature_sd", c.winter_temperature_sd}};
}

RunConfig apply_json(RunConfig c, const json& doc) {
    if (!doc.is_object()) throw DomainError("run configuration must be a JSON object");
    const json known = to_json(c);
    for (const auto& [key, value] : doc.items()) {
        if (!known.contains(key)) throw DomainError("unknown configuration key: " + key);
    }
    try {
        take(doc, "feeder_years", c.feeder_years);
        take(doc, "regional_years", c.regional_years);
        take(doc, "transfer_log", c.transfer_log);
        take(doc, "dataset", c.dataset);
        take(doc, "model", c.model);
        take(doc, "scenario", c.scenario);
        if (doc.contains("season")) c.season = parse_season(doc["season"].get<std::string>());
        take(doc, "out", c.out);
        take(doc, "econ_columns", c.econ_columns);
        if (doc.contains("der")) c.der = doc["der"].is_null() ? std::nullopt : std::optional<bool>(doc["der"].get<bool>());
        if (doc.contains("ev")) c.ev = doc["ev"].is_null() ? std::nullopt : std::optional<bool>(doc["ev"].get<bool>());
        take(doc, "pve", c.pve);
        take(doc, "fixed_components", c.fixed_components);
        take(doc, "virtual_feeders", c.virtual_feeders);
        take(doc, "split_ratio", c.split_ratio);
        take(doc, "split_seed", c.split_seed);
        if (doc.contains("cell")) c.cell = seqnet::parse_cell_kind(doc["cell"].get<std::string>());
        if (doc.contains("mode")) c.mode = seqnet::parse_seq_config(doc["mode"].get<std::string>());
        take(doc, "n_steps", c.n_steps);
        take(doc, "hidden_width", c.hidden_width);
        take(doc, "dense_widths", c.dense_widths);
        take(doc, "epochs", c.training.epochs);
        take(doc, "batch_size", c.training.batch_size);
        take(doc, "learning_rate", c.training.learning_rate);
        if (doc.contains("optimizer")) c.training.optimizer = parse_optimizer(doc["optimizer"].get<std::string>());
        take(doc, "clip_norm", c.training.clip_norm);
        take(doc, "seed", c.seed);
        take(doc, "strategy", c.strategy);
        take(doc, "trials", c.trials);
        take(doc, "workers", c.workers);
        take(doc, "validation_split", c.validation_split);
        if (doc.contains("search_space")) c.search_space = doc["search_space"];
        take(doc, "temp_margin", c.temp_margin);
        take(doc, "horizon", c.horizon);
        take(doc, "event_margin", c.event_margin);
        take(doc, "feeders", c.feeders);
        take(doc, "bin_width", c.bin_width);
        if (doc.contains("synth")) c.synth = synth_from_json(c.synth, doc["synth"]);
        take(doc, "winter_temperature_mean", c.winter_temperature_mean);
        take(doc, "winter_temperature_sd", c.winter_temperature_sd);
    } catch (const json::exception& e) {
        throw DomainError(std::string("bad configuration value: ") + e.what());
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    json doc;
    try {
        doc = json::parse(io::read_file(path));
    } catch (const json::parse_error& e) {
        throw IoError(path + ": not valid JSON (" + e.what() + ")");
    }
    return apply_json(RunConfig{}, doc);
}

}  // namespace ltlf::cli
