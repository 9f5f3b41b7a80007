#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ltlf/optim.hpp"
#include "ltlf/records.hpp"
#include "ltlf/seqnet/network.hpp"
#include "ltlf/synthgrid.hpp"

namespace ltlf::cli {

/// Settings shared by every subcommand. Loaded from a JSON file and then
/// overridden by flags; keys mirror the field names.
struct RunConfig {
    // inputs
    std::string feeder_years;
    std::string regional_years;
    std::string transfer_log;
    std::string dataset;
    std::string model;
    std::string scenario;

    Season season = Season::summer;
    std::string out = ".";

    // feature schema
    std::vector<std::string> econ_columns;  // empty: every non-key regional column
    std::optional<bool> der;                // unset: use the column when present
    std::optional<bool> ev;
    double pve = 0.95;
    int fixed_components = 0;
    bool virtual_feeders = true;
    double split_ratio = 0.8;
    std::uint64_t split_seed = 0;

    // model
    seqnet::CellKind cell = seqnet::CellKind::lstm;
    seqnet::SeqConfig mode = seqnet::SeqConfig::many_to_one;
    int n_steps = 3;
    int hidden_width = 6;
    std::vector<int> dense_widths{6};

    TrainHyperparams training;
    std::uint64_t seed = 0;  // weight init and batch order

    // tune
    std::string strategy = "grid";
    std::size_t trials = 10;
    int workers = 1;
    double validation_split = 0.0;  // 0: score on the test split
    nlohmann::json search_space;

    // forecast
    double temp_margin = 1.0;
    int horizon = 3;
    double event_margin = 0.0;
    std::vector<std::string> feeders;

    double bin_width = 2.0;

    synthgrid::SynthConfig synth{.transfer_fraction = 0.3};
    // winter regional temperatures for `synth`; summer uses synth.temperature_*
    double winter_temperature_mean = -25.0;
    double winter_temperature_sd = 3.0;

    void validate() const;
};

nlohmann::json to_json(const RunConfig& config);
/// Starts from `base` and applies every key present in `doc`. Unknown keys
/// are rejected.
RunConfig apply_json(RunConfig base, const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

/// Runs one command line. Returns 0 on success, 2 on usage errors, 3 on
/// I/O errors and 1 on any other failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltlf::cli
