#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ltlf/records.hpp"
#include "ltlf/sample.hpp"
#include "ltlf/seqnet/network.hpp"

namespace ltlf::seqdata {

/// Column layout of an unnormalized step vector:
///   previous-year peak, previous-year residential share, previous-year
///   commercial share, economic columns..., temperature, temperature change,
///   large-customer net change, [DER growth], [EV growth].
/// Everything after the composition comes from the forecast year.
struct RawLayout {
    std::size_t econ_count = 0;
    bool der = false;
    bool ev = false;

    static constexpr std::size_t prev_peak = 0;
    static constexpr std::size_t prev_residential = 1;
    static constexpr std::size_t prev_commercial = 2;
    std::size_t econ_begin() const { return 3; }
    std::size_t temperature() const { return 3 + econ_count; }
    std::size_t temperature_change() const { return 4 + econ_count; }
    std::size_t large_customer() const { return 5 + econ_count; }
    std::size_t der_index() const { return 6 + econ_count; }
    std::size_t ev_index() const { return 6 + econ_count + (der ? 1 : 0); }
    std::size_t width() const { return 6 + econ_count + (der ? 1 : 0) + (ev ? 1 : 0); }
};

/// Layout matching the optional features present in `feeders`. Throws
/// ConsistencyError if an optional feature is present on some rows only.
RawLayout infer_layout(const FeederTable& feeders, const RegionalHistory& regional);

/// Raw step vector for forecast year `year`, or the reason it cannot be built.
struct StepOutcome {
    std::optional<Eigen::VectorXd> step;
    std::string reason;
};

StepOutcome raw_step_features(const std::map<int, FeederYearRecord>& history,
                              const RegionalHistory& regional, int year, const RawLayout& layout);

struct BuildResult {
    std::vector<SequenceSample> samples;  // unnormalized, targets in amperes
    std::vector<std::string> skipped;     // one line per skipped window
};

/// One sample per feeder per run of `n_steps` consecutive forecast years
/// (stride 1). Windows that hit a data gap are skipped and reported. When
/// `transfer_log` is given, windows of a logged feeder that straddle one of
/// its transfer years are skipped as well.
BuildResult build_sequence_samples(const FeederTable& feeders, const RegionalHistory& regional,
                                   seqnet::SeqConfig config, int n_steps,
                                   std::span<const TransferEvent> transfer_log = {});

/// Many-to-one view of a many-to-many sample (keeps the final target).
SequenceSample to_config(const SequenceSample& sample, seqnet::SeqConfig config);

/// Throws ShapeError/ConsistencyError unless the sample satisfies its invariants.
void validate_sample(const SequenceSample& sample, seqnet::SeqConfig config, int n_steps, int width);

}  // namespace ltlf::seqdata
