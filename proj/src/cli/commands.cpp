#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "ltlf/cli.hpp"
#include "ltlf/error.hpp"
#include "ltlf/experiments.hpp"
#include "ltlf/featlab/virtual_feeder.hpp"
#include "ltlf/io/csv.hpp"
#include "ltlf/io/datasets.hpp"
#include "ltlf/io/model_doc.hpp"
#include "ltlf/seqdata/forecast.hpp"
#include "ltlf/seqdata/split.hpp"
#include "ltlf/tuner.hpp"

namespace ltlf::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : Error {
    using Error::Error;
};

std::string sha256_hex(const std::string& content) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(content.data(), content.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

/// State of one command run; records what goes into the manifest.
struct Run {
    std::string command;
    RunConfig cfg;
    std::ostream& out;
    std::ostream& err;
    json inputs = json::array();
    std::vector<std::string> outputs;

    std::string read_input(const std::string& path) {
        std::string content = io::read_file(path);
        inputs.push_back({{"path", path}, {"sha256", sha256_hex(content)}});
        return content;
    }

    void note_input(const std::string& path) { read_input(path); }

    fs::path out_path(const std::string& name) {
        fs::create_directories(cfg.out);
        outputs.push_back(name);
        return fs::path(cfg.out) / name;
    }

    void write_manifest() {
        json m{{"command", command},
               {"config", to_json(cfg)},
               {"seeds", {{"seed", cfg.seed}, {"split_seed", cfg.split_seed}, {"synth_seed", cfg.synth.seed}}},
               {"inputs", inputs},
               {"outputs", outputs}};
        fs::create_directories(cfg.out);
        io::write_file((fs::path(cfg.out) / "manifest.json").string(), m.dump(2) + "\n");
    }
};

std::string require_path(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string("missing required input ") + flag);
    return value;
}

std::string slug(const std::string& label) {
    std::string s;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!s.empty() && s.back() != '_') {
            s += '_';
        }
    }
    while (!s.empty() && s.back() == '_') s.pop_back();
    return s;
}

// ---- input loading ---------------------------------------------------------

FeederTable load_feeders(Run& run) {
    const std::string path = require_path(run.cfg.feeder_years, "--feeder-years");
    run.note_input(path);
    FeederTable table = io::read_feeder_years(path, run.cfg.season);
    bool has_der = false, has_ev = false;
    for (const auto& [id, hist] : table) {
        for (const auto& [y, rec] : hist) {
            has_der |= rec.der_growth.has_value();
            has_ev |= rec.ev_growth.has_value();
        }
    }
    if (run.cfg.der.value_or(false) && !has_der) throw IoError(path + ": configured der_growth column is missing");
    if (run.cfg.ev.value_or(false) && !has_ev) throw IoError(path + ": configured ev_growth column is missing");
    const bool drop_der = run.cfg.der.has_value() && !*run.cfg.der;
    const bool drop_ev = run.cfg.ev.has_value() && !*run.cfg.ev;
    for (auto& [id, hist] : table) {
        for (auto& [y, rec] : hist) {
            if (drop_der) rec.der_growth.reset();
            if (drop_ev) rec.ev_growth.reset();
        }
    }
    return table;
}

RegionalHistory load_regional(Run& run, const std::vector<std::string>& econ_columns) {
    const std::string path = require_path(run.cfg.regional_years, "--regional-years");
    run.note_input(path);
    return io::read_regional_years(path, run.cfg.season, econ_columns);
}

std::vector<TransferEvent> load_transfers(Run& run) {
    if (run.cfg.transfer_log.empty()) return {};
    run.note_input(run.cfg.transfer_log);
    return io::read_transfer_log(run.cfg.transfer_log);
}

seqdata::EngineeredDataset engineer_inputs(Run& run) {
    const auto feeders = load_feeders(run);
    const auto regional = load_regional(run, run.cfg.econ_columns);
    const auto transfers = load_transfers(run);
    seqdata::EngineerOptions opts;
    opts.n_steps = run.cfg.n_steps;
    opts.split_ratio = run.cfg.split_ratio;
    opts.split_seed = run.cfg.split_seed;
    opts.use_virtual_feeders = run.cfg.virtual_feeders;
    opts.pipeline.pve_threshold = run.cfg.pve;
    opts.pipeline.fixed_components = run.cfg.fixed_components;
    return seqdata::engineer(feeders, regional, transfers, run.cfg.season, opts);
}

/// The dataset named by --dataset, or one engineered from the CSV inputs.
seqdata::EngineeredDataset load_dataset(Run& run) {
    if (!run.cfg.dataset.empty()) {
        const std::string content = run.read_input(run.cfg.dataset);
        json doc;
        try {
            doc = json::parse(content);
        } catch (const json::parse_error& e) {
            throw IoError(run.cfg.dataset + ": not valid JSON (" + e.what() + ")");
        }
        auto ds = io::dataset_from_json(doc);
        run.cfg.season = ds.season;
        return ds;
    }
    if (run.cfg.feeder_years.empty()) throw UsageError("give --dataset or --feeder-years/--regional-years");
    return engineer_inputs(run);
}

void write_report(Run& run, const evalkit::EvalReport& report, const std::string& stem) {
    io::write_file(run.out_path(stem + ".txt").string(), evalkit::to_text(report));
    io::write_file(run.out_path(stem + ".json").string(), evalkit::to_json(report).dump(2) + "\n");
    run.out << report.label << " (" << report.season << "): MAPE " << std::fixed << std::setprecision(3)
            << report.mape << "% over " << report.errors.size() << " records\n";
}

evalkit::EvalReport report_for(const Run& run, const std::string& label, const seqdata::EngineeredDataset& ds,
                               const experiments::Forecasts& f, std::optional<double> seconds = std::nullopt) {
    return evalkit::make_report(label, to_string(ds.season), f.actuals, f.forecasts, run.cfg.bin_width, seconds);
}

// ---- commands --------------------------------------------------------------

void cmd_synth(Run& run) {
    auto summer_cfg = run.cfg.synth;
    summer_cfg.season = Season::summer;
    auto winter_cfg = summer_cfg;
    winter_cfg.season = Season::winter;
    winter_cfg.temperature_mean = run.cfg.winter_temperature_mean;
    winter_cfg.temperature_sd = run.cfg.winter_temperature_sd;

    std::map<Season, FeederTable> feeders;
    std::map<Season, RegionalHistory> regional;
    std::vector<TransferEvent> log;
    for (const auto& c : {summer_cfg, winter_cfg}) {
        auto grid = synthgrid::generate_synthetic_grid(c);
        // same events in both seasons; magnitudes follow each season's peaks
        const auto plan = synthgrid::plan_transfers(c, grid.feeders);
        auto injected = synthgrid::inject_load_transfers(grid.feeders, plan.events, plan.magnitudes);
        feeders[c.season] = std::move(injected.feeders);
        regional[c.season] = std::move(grid.regional);
        if (c.season == Season::summer) log = std::move(injected.log);
    }
    io::write_feeder_years(run.out_path("feeder_years.csv").string(), feeders);
    io::write_regional_years(run.out_path("regional_years.csv").string(), regional);
    io::write_transfer_log(run.out_path("transfer_log.csv").string(), log);
    run.out << "wrote " << summer_cfg.n_feeders << " feeders x " << summer_cfg.years << " years, " << log.size()
            << " transfer events to " << run.cfg.out << "\n";
}

void cmd_engineer(Run& run) {
    const auto ds = engineer_inputs(run);
    io::write_file(run.out_path("dataset.json").string(), io::dataset_to_json(ds).dump(1) + "\n");
    run.out << to_string(ds.season) << ": " << ds.train.size() << " train / " << ds.test.size() << " test records";
    if (ds.pipeline.layout.econ_count > 0) {
        const int t = ds.pipeline.component_count();
        run.out << ", " << t << " principal components (PVE " << std::fixed << std::setprecision(1)
                << 100.0 * featlab::proportion_variance_explained(ds.pipeline.pca, t) << "%)";
    }
    run.out << ", " << ds.virtual_groups.size() << " virtual feeders, " << ds.skipped.size()
            << " skipped windows\n";
    for (const auto& s : ds.skipped) run.err << "skipped " << s << "\n";
}

void cmd_train(Run& run) {
    const auto ds = load_dataset(run);
    experiments::NetworkDesign design{run.cfg.cell, run.cfg.mode, run.cfg.hidden_width, run.cfg.dense_widths};
    const auto result = experiments::run_network(ds, design, run.cfg.training, run.cfg.seed);

    io::ModelDocument doc;
    doc.network = result.params;
    doc.pipeline = ds.pipeline;
    doc.season = ds.season;
    doc.training = run.cfg.training;
    doc.training->seed = run.cfg.seed;
    io::save_model(run.out_path("model.json").string(), doc);

    const auto label = experiments::network_label(run.cfg.cell, run.cfg.mode);
    write_report(run, report_for(run, label, ds, result.test, result.training_seconds), "report");
    if (!result.loss_history.empty()) {
        run.out << "final training loss " << std::setprecision(6) << result.loss_history.back() << " after "
                << result.loss_history.size() << " epochs, " << std::setprecision(2) << result.training_seconds
                << " s\n";
    }
}

void cmd_evaluate(Run& run) {
    const std::string which = require_path(run.cfg.model, "--model");
    const auto ds = load_dataset(run);
    experiments::Forecasts f;
    std::string label;
    if (which == "bottom-up") {
        label = "Bottom-up";
        f = experiments::bottom_up_forecasts(ds.test, ds.pipeline.layout);
        if (f.fallbacks) run.err << "warning: " << f.fallbacks << " bottom-up forecasts are not positive\n";
    } else if (which == "ar2") {
        label = "AR(2)";
        f = experiments::ar2_forecasts(ds, ds.test);
        if (f.fallbacks) run.err << "note: " << f.fallbacks << " records had under 5 prior years; used previous peak\n";
    } else if (which == "fnn-1y" || which == "fnn-3y") {
        const bool one = which == "fnn-1y";
        label = one ? "FNN one-year" : "FNN three-year";
        f = experiments::run_fnn(ds, one ? baselines::FnnVariant::one_year : baselines::FnnVariant::three_year,
                                 run.cfg.training, run.cfg.seed)
                .test;
    } else {
        const std::string content = run.read_input(which);
        const auto doc = io::model_from_json(json::parse(content));
        if (doc.season != ds.season) {
            run.err << "warning: model was trained for " << to_string(doc.season) << ", dataset is "
                    << to_string(ds.season) << "\n";
        }
        label = experiments::network_label(doc.network.cell_kind, doc.network.config);
        f = experiments::network_forecasts(doc.network, doc.pipeline, ds.test);
    }
    write_report(run, report_for(run, label, ds, f), "report_" + slug(label));
}

tuner::SearchSpace search_space(const RunConfig& cfg) {
    if (cfg.search_space.is_null() || cfg.search_space.empty()) {
        return tuner::SearchSpace::from_json(json{{"hidden_layers", {1, 2, 3}}, {"neurons", {10, 15, 20}}});
    }
    return tuner::SearchSpace::from_json(cfg.search_space);
}

void cmd_tune(Run& run) {
    auto ds = load_dataset(run);
    if (run.cfg.validation_split > 0.0) {
        // score on a slice of the training split instead of the test split
        auto inner = seqdata::split_dataset(ds.train, 1.0 - run.cfg.validation_split, run.cfg.split_seed + 1);
        ds.train = std::move(inner.train);
        ds.test = std::move(inner.test);
    }
    const auto space = search_space(run.cfg);
    const RunConfig& cfg = run.cfg;
    auto scorer = [&](const tuner::Combination& c, std::uint64_t seed) {
        experiments::NetworkDesign design;
        design.cell = seqnet::parse_cell_kind(c.get_string("cell", std::string(seqnet::to_string(cfg.cell))));
        design.mode = seqnet::parse_seq_config(c.get_string("mode", std::string(seqnet::to_string(cfg.mode))));
        // "neurons" sizes the recurrent layer and every dense layer
        const bool sized = c.find("neurons") != nullptr;
        const int neurons = static_cast<int>(c.get_int("neurons", cfg.hidden_width));
        const auto layers = static_cast<std::size_t>(
            c.get_int("hidden_layers", static_cast<long long>(cfg.dense_widths.size())));
        design.hidden_width = neurons;
        design.dense_widths = sized ? std::vector<int>(layers, neurons) : cfg.dense_widths;
        design.dense_widths.resize(layers, sized ? neurons : cfg.dense_widths.back());
        TrainHyperparams hyper = cfg.training;
        hyper.learning_rate = c.get_double("learning_rate", hyper.learning_rate);
        hyper.epochs = static_cast<int>(c.get_int("epochs", hyper.epochs));
        hyper.batch_size = static_cast<int>(c.get_int("batch_size", hyper.batch_size));
        const auto r = experiments::run_network(ds, design, hyper, seed);
        return tuner::TrialScore{r.test.mape(), r.params.parameter_count()};
    };
    const auto result = cfg.strategy == "grid"
                            ? tuner::grid_search(space, scorer, cfg.seed, cfg.workers)
                            : tuner::random_search(space, cfg.trials, scorer, cfg.seed, cfg.workers);
    io::write_file(run.out_path("scoreboard.json").string(), tuner::scoreboard_json(result).dump(2) + "\n");
    std::size_t failed = 0;
    for (const auto& t : result.scoreboard) failed += t.failed;
    const auto& best = result.best_trial();
    run.out << result.scoreboard.size() << " trials (" << failed << " failed); best " << best.combination.describe()
            << " MAPE " << std::fixed << std::setprecision(3) << best.result.score << "% with "
            << best.result.parameter_count << " parameters\n";
}

json read_scenario_doc(Run& run) {
    if (run.cfg.scenario.empty()) return json::object();
    const std::string content = run.read_input(run.cfg.scenario);
    try {
        return json::parse(content);
    } catch (const json::parse_error& e) {
        throw IoError(run.cfg.scenario + ": not valid JSON (" + e.what() + ")");
    }
}

seqdata::Scenario scenario_for(const json& doc, const std::string& feeder_id, double temperature) {
    seqdata::Scenario sc;
    sc.temperature = doc.value("temperature", temperature);
    if (doc.contains("econ")) {
        for (const auto& [year, row] : doc["econ"].items()) sc.econ[std::stoi(year)] = row.get<std::vector<double>>();
    }
    if (doc.contains("large_customer_change") && doc["large_customer_change"].contains(feeder_id)) {
        for (const auto& [year, v] : doc["large_customer_change"][feeder_id].items()) {
            sc.large_customer_change[std::stoi(year)] = v.get<double>();
        }
    }
    return sc;
}

void cmd_forecast(Run& run) {
    const std::string model_path = require_path(run.cfg.model, "--model");
    const auto doc = io::model_from_json(json::parse(run.read_input(model_path)));
    if (doc.season != run.cfg.season) {
        run.err << "warning: model was trained for " << to_string(doc.season) << ", forecasting "
                << to_string(run.cfg.season) << "\n";
    }
    FeederTable feeders = load_feeders(run);
    const auto regional = load_regional(run, doc.pipeline.econ_names);
    const auto transfers = load_transfers(run);
    if (run.cfg.virtual_feeders && !transfers.empty()) feeders = featlab::resolve_virtual_feeders(feeders, transfers).table;

    std::vector<double> temps;
    for (const auto& [y, r] : regional.years) temps.push_back(r.temperature);
    const double temperature = seqdata::normalize_temperature_scenario(temps, run.cfg.temp_margin, run.cfg.season);

    const json scenario = read_scenario_doc(run);
    io::CsvTable table;
    table.header = {"feeder_id", "year", "forecast_A"};
    std::size_t done = 0;
    for (const auto& [id, hist] : feeders) {
        if (!run.cfg.feeders.empty() &&
            std::find(run.cfg.feeders.begin(), run.cfg.feeders.end(), id) == run.cfg.feeders.end()) {
            continue;
        }
        try {
            const auto chain = seqdata::chain_forecast(doc.network, doc.pipeline, hist, regional,
                                                       scenario_for(scenario, id, temperature), run.cfg.horizon);
            for (std::size_t i = 0; i < chain.years.size(); ++i) {
                table.rows.push_back({id, std::to_string(chain.years[i]),
                                      io::format_number(chain.forecasts[i] + run.cfg.event_margin)});
            }
            ++done;
        } catch (const DomainError& e) {
            run.err << "skipped feeder " << id << ": " << e.what() << "\n";
        }
    }
    io::write_csv(run.out_path("forecast.csv").string(), table);
    run.out << "forecast " << done << " feeders for " << run.cfg.horizon << " years at " << std::fixed
            << std::setprecision(1) << temperature << " C\n";
}

void cmd_compare(Run& run, const std::vector<std::string>& files, bool write) {
    if (files.empty()) throw UsageError("compare needs at least one report file");
    std::vector<evalkit::EvalReport> reports;
    for (const auto& f : files) reports.push_back(evalkit::parse_report(run.read_input(f)));
    const std::string grid = evalkit::compare_reports(reports);
    run.out << grid;
    if (write) io::write_file(run.out_path("comparison.txt").string(), grid);
}

// ---- flag plumbing ---------------------------------------------------------

/// Flag values; unset ones leave the configuration alone.
struct Flags {
    std::string config;
    std::optional<std::string> season, cell, mode, out, feeder_years, regional_years, transfer_log, dataset, model,
        scenario, strategy, optimizer;
    std::optional<int> epochs, batch_size, hidden, horizon, n_feeders, years, workers, components;
    std::optional<std::uint64_t> seed, split_seed;
    std::optional<double> pve, temp_margin, lr, event_margin, transfer_fraction, validation_split;
    std::optional<std::size_t> trials;
    std::vector<std::string> feeders;
    std::vector<std::string> reports;
    bool no_virtual = false;
};

RunConfig resolve(const Flags& f) {
    RunConfig c = f.config.empty() ? RunConfig{} : load_run_config(f.config);
    if (f.season) c.season = parse_season(*f.season);
    if (f.cell) c.cell = seqnet::parse_cell_kind(*f.cell);
    if (f.mode) c.mode = seqnet::parse_seq_config(*f.mode);
    if (f.out) c.out = *f.out;
    if (f.feeder_years) c.feeder_years = *f.feeder_years;
    if (f.regional_years) c.regional_years = *f.regional_years;
    if (f.transfer_log) c.transfer_log = *f.transfer_log;
    if (f.dataset) c.dataset = *f.dataset;
    if (f.model) c.model = *f.model;
    if (f.scenario) c.scenario = *f.scenario;
    if (f.strategy) c.strategy = *f.strategy;
    if (f.optimizer) c.training.optimizer = parse_optimizer(*f.optimizer);
    if (f.epochs) c.training.epochs = *f.epochs;
    if (f.batch_size) c.training.batch_size = *f.batch_size;
    if (f.hidden) c.hidden_width = *f.hidden;
    if (f.horizon) c.horizon = *f.horizon;
    if (f.n_feeders) c.synth.n_feeders = *f.n_feeders;
    if (f.years) c.synth.years = *f.years;
    if (f.workers) c.workers = *f.workers;
    if (f.components) c.fixed_components = *f.components;
    if (f.seed) {
        c.seed = *f.seed;
        c.synth.seed = *f.seed;
    }
    if (f.split_seed) c.split_seed = *f.split_seed;
    if (f.pve) c.pve = *f.pve;
    if (f.temp_margin) c.temp_margin = *f.temp_margin;
    if (f.lr) c.training.learning_rate = *f.lr;
    if (f.event_margin) c.event_margin = *f.event_margin;
    if (f.transfer_fraction) c.synth.transfer_fraction = *f.transfer_fraction;
    if (f.validation_split) c.validation_split = *f.validation_split;
    if (f.trials) c.trials = *f.trials;
    if (!f.feeders.empty()) c.feeders = f.feeders;
    if (f.no_virtual) c.virtual_feeders = false;
    c.validate();
    return c;
}

void add_common(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
    app->add_option("--out", f.out, "output directory");
    app->add_option("--seed", f.seed, "random seed");
}

void add_inputs(CLI::App* app, Flags& f) {
    app->add_option("--feeder-years", f.feeder_years, "feeder-year CSV");
    app->add_option("--regional-years", f.regional_years, "regional-year CSV");
    app->add_option("--transfer-log", f.transfer_log, "transfer log CSV");
    app->add_option("--season", f.season, "summer or winter")->check(CLI::IsMember({"summer", "winter"}));
}

void add_dataset(CLI::App* app, Flags& f) {
    add_inputs(app, f);
    app->add_option("--dataset", f.dataset, "engineered dataset JSON");
    app->add_option("--pve", f.pve, "variance share kept by PCA");
    app->add_option("--split-seed", f.split_seed, "train/test split seed");
    app->add_flag("--no-virtual", f.no_virtual, "keep feeders touched by transfers as recorded");
}

void add_training(CLI::App* app, Flags& f) {
    app->add_option("--cell", f.cell, "lstm or gru")->check(CLI::IsMember({"lstm", "gru"}));
    app->add_option("--mode", f.mode, "many-to-one or many-to-many")
        ->check(CLI::IsMember({"many-to-one", "many-to-many", "many_to_one", "many_to_many"}));
    app->add_option("--epochs", f.epochs, "training epochs")->check(CLI::NonNegativeNumber);
    app->add_option("--batch-size", f.batch_size, "mini-batch size")->check(CLI::PositiveNumber);
    app->add_option("--lr", f.lr, "learning rate")->check(CLI::PositiveNumber);
    app->add_option("--optimizer", f.optimizer, "adam or sgd")->check(CLI::IsMember({"adam", "sgd"}));
    app->add_option("--hidden", f.hidden, "recurrent hidden width")->check(CLI::PositiveNumber);
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Long-term feeder peak demand forecasting with recurrent networks", "ltlf"};
    app.require_subcommand(1);
    Flags f;

    auto* synth = app.add_subcommand("synth", "write a synthetic feeder grid as CSV");
    add_common(synth, f);
    synth->add_option("--feeders", f.n_feeders, "number of feeders")->check(CLI::PositiveNumber);
    synth->add_option("--years", f.years, "years of history")->check(CLI::PositiveNumber);
    synth->add_option("--transfer-fraction", f.transfer_fraction, "share of feeders touched by transfers")
        ->check(CLI::Range(0.0, 1.0));

    auto* eng = app.add_subcommand("engineer", "virtual feeders, normalization and PCA into a dataset");
    add_common(eng, f);
    add_dataset(eng, f);
    eng->add_option("--components", f.components, "fixed number of principal components");

    auto* train = app.add_subcommand("train", "fit one network and report on the test split");
    add_common(train, f);
    add_dataset(train, f);
    add_training(train, f);

    auto* tune = app.add_subcommand("tune", "grid or random search over architectures");
    add_common(tune, f);
    add_dataset(tune, f);
    add_training(tune, f);
    tune->add_option("--strategy", f.strategy, "grid or random")->check(CLI::IsMember({"grid", "random"}));
    tune->add_option("--trials", f.trials, "random search trial count")->check(CLI::PositiveNumber);
    tune->add_option("--workers", f.workers, "concurrent trials")->check(CLI::PositiveNumber);
    tune->add_option("--validation-split", f.validation_split, "score on this share of the training split");

    auto* eval = app.add_subcommand("evaluate", "score a saved model or a baseline");
    add_common(eval, f);
    add_dataset(eval, f);
    add_training(eval, f);
    eval->add_option("--model", f.model, "model.json, bottom-up, ar2, fnn-1y or fnn-3y")->required();

    auto* fc = app.add_subcommand("forecast", "chain multi-year forecasts under a temperature scenario");
    add_common(fc, f);
    add_inputs(fc, f);
    fc->add_option("--model", f.model, "model.json")->required();
    fc->add_option("--temp-margin", f.temp_margin, "degrees added to the historical extreme");
    fc->add_option("--horizon", f.horizon, "years to forecast")->check(CLI::NonNegativeNumber);
    fc->add_option("--event-margin", f.event_margin, "amperes added to every forecast");
    fc->add_option("--scenario", f.scenario, "JSON with future economic rows and large-customer changes");
    fc->add_option("--feeder", f.feeders, "restrict to these feeder ids");
    fc->add_flag("--no-virtual", f.no_virtual, "ignore the transfer log");

    auto* cmp = app.add_subcommand("compare", "merge reports into one MAPE grid");
    cmp->add_option("reports", f.reports, "report files (.txt or .json)")->required()->check(CLI::ExistingFile);
    cmp->add_option("--out", f.out, "also write comparison.txt here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        if (app.get_subcommands().empty()) {
            err << app.help();
        } else {
            err << app.get_subcommands().front()->help();
        }
        return 2;
    }

    auto* sub = app.get_subcommands().front();
    Run run{sub->get_name(), resolve(f), out, err, json::array(), {}};
    if (sub == synth) cmd_synth(run);
    if (sub == eng) cmd_engineer(run);
    if (sub == train) cmd_train(run);
    if (sub == tune) cmd_tune(run);
    if (sub == eval) cmd_evaluate(run);
    if (sub == fc) cmd_forecast(run);
    if (sub == cmp) {
        cmd_compare(run, f.reports, f.out.has_value());
        return 0;
    }
    run.write_manifest();
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return execute(args, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ltlf::cli
