#include "ltlf/experiments.hpp"

#include <chrono>

#include "ltlf/error.hpp"
#include "ltlf/seqnet/trainer.hpp"

namespace ltlf::experiments {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Forecasts network_forecasts(const seqnet::NetworkParams& net, const seqdata::FeaturePipeline& pipeline,
                            const std::vector<SequenceSample>& raw) {
    Forecasts f;
    for (const auto& s : raw) {
        const SequenceSample input = pipeline.transform(s);
        const std::vector<double> out = seqnet::forward_sequence(net, input.steps);
        f.actuals.push_back(s.targets.back());
        f.forecasts.push_back(pipeline.denormalize_peak(out.back()));
    }
    return f;
}

Forecasts bottom_up_forecasts(const std::vector<SequenceSample>& raw, const seqdata::RawLayout& layout) {
    Forecasts f;
    const auto lc = static_cast<Eigen::Index>(layout.large_customer());
    for (const auto& s : raw) {
        const auto& last = s.steps.back();
        const auto b = baselines::bottom_up_forecast(last(seqdata::RawLayout::prev_peak), last(lc));
        f.fallbacks += b.implausible;
        f.actuals.push_back(s.targets.back());
        f.forecasts.push_back(b.amperes);
    }
    return f;
}

Forecasts ar2_forecasts(const seqdata::EngineeredDataset& ds, const std::vector<SequenceSample>& raw) {
    Forecasts f;
    for (const auto& s : raw) {
        const int target_year = s.forecast_years.back();
        auto it = ds.histories.find(s.feeder_id);
        if (it == ds.histories.end()) throw ConsistencyError("no peak history for feeder " + s.feeder_id);
        std::vector<double> series;
        for (int y = target_year - 1; it->second.contains(y); --y) series.insert(series.begin(), it->second.at(y));
        double forecast = s.steps.back()(seqdata::RawLayout::prev_peak);
        if (series.size() >= 5) {
            const auto model = baselines::fit_ar2(series);
            forecast = baselines::forecast_ar2(model, series[series.size() - 2], series.back(), 1)[0];
        } else {
            ++f.fallbacks;
        }
        f.actuals.push_back(s.targets.back());
        f.forecasts.push_back(forecast);
    }
    return f;
}

NetworkRun run_network(const seqdata::EngineeredDataset& ds, const NetworkDesign& design, TrainHyperparams hyper,
                       std::uint64_t seed) {
    seqnet::Architecture arch;
    arch.cell_kind = design.cell;
    arch.config = design.mode;
    arch.n_steps = ds.n_steps;
    arch.input_width = ds.pipeline.input_width();
    arch.hidden_width = design.hidden_width;
    arch.dense_widths = design.dense_widths;
    const auto init = seqnet::init_network(arch, seed);
    hyper.seed = seed;
    hyper.batch_size = std::min<int>(hyper.batch_size, static_cast<int>(ds.train.size()));

    const auto train_set = ds.prepared(ds.train, design.mode);
    const auto start = std::chrono::steady_clock::now();
    auto trained = seqnet::train(init, train_set, hyper);
    NetworkRun run;
    run.training_seconds = seconds_since(start);
    run.params = std::move(trained.params);
    run.loss_history = std::move(trained.loss_history);
    run.test = network_forecasts(run.params, ds.pipeline, ds.test);
    return run;
}

FnnRun run_fnn(const seqdata::EngineeredDataset& ds, baselines::FnnVariant variant, TrainHyperparams hyper,
               std::uint64_t seed) {
    const int width = ds.pipeline.input_width();
    const auto init = baselines::init_fnn(variant, width, ds.n_steps, seed);
    const auto examples = baselines::fnn_examples(variant, ds.prepared(ds.train, seqnet::SeqConfig::many_to_many));
    hyper.seed = seed;
    hyper.batch_size = std::min<int>(hyper.batch_size, static_cast<int>(examples.size()));

    const auto start = std::chrono::steady_clock::now();
    auto trained = baselines::fnn_train(init, examples, hyper);
    FnnRun run;
    run.training_seconds = seconds_since(start);
    run.model = std::move(trained.model);
    run.loss_history = std::move(trained.loss_history);
    for (const auto& raw : ds.test) {
        const SequenceSample input = ds.pipeline.transform(raw);
        run.test.actuals.push_back(raw.targets.back());
        run.test.forecasts.push_back(ds.pipeline.denormalize_peak(baselines::fnn_forecast(run.model, input)));
    }
    return run;
}

std::string network_label(seqnet::CellKind cell, seqnet::SeqConfig mode) {
    return std::string(cell == seqnet::CellKind::lstm ? "LSTM " : "GRU ") + std::string(seqnet::to_string(mode));
}

}  // namespace ltlf::experiments
