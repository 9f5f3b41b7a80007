#include "ltlf/tuner.hpp"

#include <atomic>
#include <cstdio>
#include <numeric>
#include <thread>

#include "ltlf/error.hpp"
#include "ltlf/random.hpp"

namespace ltlf::tuner {

std::string to_string(const ParamValue& v) {
    if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", *d);
        return buf;
    }
    return std::get<std::string>(v);
}

const ParamValue* Combination::find(const std::string& name) const {
    for (const auto& [k, v] : entries) {
        if (k == name) return &v;
    }
    return nullptr;
}

long long Combination::get_int(const std::string& name, long long fallback) const {
    const ParamValue* v = find(name);
    if (!v) return fallback;
    if (const auto* i = std::get_if<long long>(v)) return *i;
    throw DomainError("search parameter " + name + " is not an integer");
}

double Combination::get_double(const std::string& name, double fallback) const {
    const ParamValue* v = find(name);
    if (!v) return fallback;
    if (const auto* d = std::get_if<double>(v)) return *d;
    if (const auto* i = std::get_if<long long>(v)) return static_cast<double>(*i);
    throw DomainError("search parameter " + name + " is not numeric");
}

std::string Combination::get_string(const std::string& name, const std::string& fallback) const {
    const ParamValue* v = find(name);
    return v ? to_string(*v) : fallback;
}

std::string Combination::describe() const {
    std::string s;
    for (const auto& [k, v] : entries) {
        if (!s.empty()) s += ' ';
        s += k + '=' + to_string(v);
    }
    return s;
}

void SearchSpace::validate() const {
    if (dims.empty()) throw DomainError("search space has no dimensions");
    for (const auto& d : dims) {
        if (d.values.empty()) throw DomainError("search dimension " + d.name + " has no values");
    }
}

std::size_t SearchSpace::size() const {
    std::size_t n = 1;
    for (const auto& d : dims) n *= d.values.size();
    return dims.empty() ? 0 : n;
}

Combination SearchSpace::at(std::size_t index) const {
    Combination c;
    c.entries.resize(dims.size());
    for (std::size_t d = dims.size(); d-- > 0;) {
        const auto& values = dims[d].values;
        c.entries[d] = {dims[d].name, values[index % values.size()]};
        index /= values.size();
    }
    return c;
}

SearchSpace SearchSpace::from_json(const nlohmann::json& doc) {
    SearchSpace space;
    for (const auto& [name, values] : doc.items()) {
        SearchDimension dim{name, {}};
        for (const auto& v : values) {
            if (v.is_number_integer()) dim.values.emplace_back(v.get<long long>());
            else if (v.is_number()) dim.values.emplace_back(v.get<double>());
            else if (v.is_string()) dim.values.emplace_back(v.get<std::string>());
            else throw DomainError("search value for " + name + " must be a number or string");
        }
        space.dims.push_back(std::move(dim));
    }
    return space;
}

namespace {

SearchResult run_trials(const SearchSpace& space, const std::vector<std::size_t>& combos,
                        const Scorer& scorer, std::uint64_t seed, int workers) {
    SearchResult result;
    result.scoreboard.resize(combos.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t t = next++; t < combos.size(); t = next++) {
            TrialRecord& rec = result.scoreboard[t];
            rec.trial = t;
            rec.combination_index = combos[t];
            rec.combination = space.at(combos[t]);
            try {
                rec.result = scorer(rec.combination, derive_seed(seed, combos[t]));
            } catch (const std::exception& e) {
                rec.failed = true;
                rec.failure = e.what();
            }
        }
    };

    const int n_workers = std::max(1, std::min<int>(workers, static_cast<int>(combos.size())));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    bool found = false;
    for (std::size_t t = 0; t < result.scoreboard.size(); ++t) {
        const auto& rec = result.scoreboard[t];
        if (rec.failed) continue;
        if (!found) {
            result.best = t;
            found = true;
            continue;
        }
        const auto& best = result.scoreboard[result.best].result;
        if (rec.result.score < best.score ||
            (rec.result.score == best.score && rec.result.parameter_count < best.parameter_count)) {
            result.best = t;
        }
    }
    if (!found) throw SearchError("every search trial failed");
    return result;
}

}  // namespace

SearchResult grid_search(const SearchSpace& space, const Scorer& scorer, std::uint64_t seed, int workers) {
    space.validate();
    std::vector<std::size_t> combos(space.size());
    std::iota(combos.begin(), combos.end(), std::size_t{0});
    return run_trials(space, combos, scorer, seed, workers);
}

SearchResult random_search(const SearchSpace& space, std::size_t n_trials, const Scorer& scorer,
                           std::uint64_t seed, int workers) {
    space.validate();
    if (n_trials < 1) throw DomainError("random search needs at least one trial");
    std::vector<std::size_t> combos(space.size());
    std::iota(combos.begin(), combos.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(combos));
    combos.resize(std::min(n_trials, combos.size()));
    return run_trials(space, combos, scorer, seed, workers);
}

nlohmann::json scoreboard_json(const SearchResult& result) {
    nlohmann::json board = nlohmann::json::array();
    for (const auto& rec : result.scoreboard) {
        nlohmann::json row;
        row["trial"] = rec.trial;
        row["combination_index"] = rec.combination_index;
        nlohmann::json params = nlohmann::json::object();
        for (const auto& [k, v] : rec.combination.entries) {
            std::visit([&](const auto& x) { params[k] = x; }, v);
        }
        row["params"] = params;
        if (rec.failed) {
            row["failed"] = true;
            row["failure"] = rec.failure;
        } else {
            row["score"] = rec.result.score;
            row["parameter_count"] = rec.result.parameter_count;
        }
        board.push_back(row);
    }
    return {{"best_trial", result.best}, {"trials", board}};
}

}  // namespace ltlf::tuner
