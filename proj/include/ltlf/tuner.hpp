#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace ltlf::tuner {

using ParamValue = std::variant<long long, double, std::string>;

std::string to_string(const ParamValue& v);

struct SearchDimension {
    std::string name;
    std::vector<ParamValue> values;
};

/// One point of a search space, in dimension order.
struct Combination {
    std::vector<std::pair<std::string, ParamValue>> entries;

    const ParamValue* find(const std::string& name) const;
    long long get_int(const std::string& name, long long fallback) const;
    double get_double(const std::string& name, double fallback) const;
    std::string get_string(const std::string& name, const std::string& fallback) const;
    std::string describe() const;
};

/// Cartesian product of finite value sets. The last dimension varies fastest.
struct SearchSpace {
    std::vector<SearchDimension> dims;

    void validate() const;
    std::size_t size() const;
    Combination at(std::size_t index) const;

    static SearchSpace from_json(const nlohmann::json& doc);
};

struct TrialScore {
    double score = 0.0;  // lower is better (validation MAPE)
    std::size_t parameter_count = 0;
};

/// Trains and scores one combination. May throw; the trial is then recorded as failed.
using Scorer = std::function<TrialScore(const Combination&, std::uint64_t seed)>;

struct TrialRecord {
    std::size_t trial = 0;
    std::size_t combination_index = 0;
    Combination combination;
    bool failed = false;
    std::string failure;
    TrialScore result;
};

struct SearchResult {
    std::size_t best = 0;  // index into scoreboard
    std::vector<TrialRecord> scoreboard;

    const TrialRecord& best_trial() const { return scoreboard.at(best); }
};

/// Evaluates every combination once. Ties on score go to the smaller
/// parameter count, then the earlier trial. Throws SearchError if every
/// trial fails.
SearchResult grid_search(const SearchSpace& space, const Scorer& scorer, std::uint64_t seed, int workers = 1);

/// Evaluates min(n_trials, |space|) distinct combinations drawn by a seeded shuffle.
SearchResult random_search(const SearchSpace& space, std::size_t n_trials, const Scorer& scorer,
                           std::uint64_t seed, int workers = 1);

nlohmann::json scoreboard_json(const SearchResult& result);

}  // namespace ltlf::tuner
