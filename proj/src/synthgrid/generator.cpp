#include <algorithm>
#include <cmath>

#include "ltlf/error.hpp"
#include "ltlf/random.hpp"
#include "ltlf/synthgrid.hpp"

namespace ltlf::synthgrid {

void SynthConfig::validate() const {
    if (n_feeders < 1) throw DomainError("n_feeders must be at least 1");
    if (years < 5) throw DomainError("years must be at least n_steps + 2");
    for (double sd : {gdp_sd, employment_sd, population_sd, migration_sd, temperature_sd, noise,
                      composition_drift}) {
        if (sd < 0.0) throw DomainError("volatilities must be nonnegative");
    }
    if (local_trend_max < local_trend_min) throw DomainError("invalid local trend range");
    if (lag_weights.empty()) throw DomainError("lag_weights must not be empty");
    if (base_peak_min <= 0.0 || base_peak_max < base_peak_min) throw DomainError("invalid base peak range");
    if (transfer_fraction < 0.0 || transfer_fraction > 1.0) throw DomainError("transfer_fraction outside [0,1]");
    if (!(transfer_max_fraction < 1.0)) throw DomainError("transfer magnitude must stay below the donor peak");
}

namespace {

constexpr std::uint64_t kRegionalStream = 0;
constexpr std::uint64_t kTemperatureStream = 1;
constexpr std::uint64_t kFeederStreamBase = 1000;

struct EconYear {
    double gdp, employment, population, migration;
};

// Correlated drivers: one AR(1) common factor plus column noise.
std::vector<EconYear> econ_path(const SynthConfig& c, int total_years) {
    Rng rng(derive_seed(c.seed, kRegionalStream));
    const double common = std::sqrt(std::max(0.0, 1.0 - c.idiosyncratic_share));
    const double own = std::sqrt(std::max(0.0, c.idiosyncratic_share));
    const double innov = std::sqrt(std::max(0.0, 1.0 - c.factor_persistence * c.factor_persistence));

    std::vector<EconYear> out;
    double factor = rng.normal();
    for (int i = 0; i < total_years; ++i) {
        factor = c.factor_persistence * factor + innov * rng.normal();
        EconYear e;
        e.gdp = c.gdp_mean + c.gdp_sd * (common * factor + own * rng.normal());
        e.employment = c.employment_mean + c.employment_sd * (common * factor + own * rng.normal());
        e.population = c.population_mean + c.population_sd * (common * factor + own * rng.normal());
        e.migration = c.migration_mean + c.migration_sd * (common * factor + own * rng.normal());
        out.push_back(e);
    }
    return out;
}

}  // namespace

SynthGrid generate_synthetic_grid(const SynthConfig& c) {
    c.validate();
    const int lags = static_cast<int>(c.lag_weights.size()) - 1;
    // warm-up years feed the lagged growth of the first emitted years
    const int total = c.years + lags;
    const auto econ = econ_path(c, total);

    SynthGrid grid;
    grid.regional.econ_names = {"gdp_growth", "employment_growth", "population_growth", "net_migration"};
    Rng temp_rng(derive_seed(c.seed, kTemperatureStream + (c.season == Season::winter ? 7 : 0)));
    std::vector<double> temperature(static_cast<std::size_t>(c.years));
    for (int y = 0; y < c.years; ++y) {
        temperature[static_cast<std::size_t>(y)] = c.temperature_mean + c.temperature_sd * temp_rng.normal();
        const EconYear& e = econ[static_cast<std::size_t>(y + lags)];
        RegionalYearRecord r;
        r.year = c.first_year + y;
        r.econ = {e.gdp, e.employment, e.population, e.migration};
        r.temperature = temperature[static_cast<std::size_t>(y)];
        grid.regional.years.emplace(r.year, std::move(r));
    }
    grid.regional.update_temperature_changes();

    // summer peaks rise with heat, winter peaks rise with cold
    const double temp_sign = c.season == Season::summer ? 1.0 : -1.0;

    for (int f = 0; f < c.n_feeders; ++f) {
        Rng rng(derive_seed(c.seed, kFeederStreamBase + static_cast<std::uint64_t>(f)));
        FeederTruth truth;
        truth.feeder_id = std::to_string(1001 + f);
        truth.base_peak = rng.uniform(c.base_peak_min, c.base_peak_max);
        truth.growth_sensitivity = rng.uniform(c.growth_sensitivity_min, c.growth_sensitivity_max);
        truth.temperature_sensitivity = rng.uniform(c.temperature_sensitivity_min, c.temperature_sensitivity_max);

        double res = rng.uniform(c.residential_min, c.residential_max);
        double com = std::min(c.commercial_max, 1.0 - res) * rng.uniform();
        // season-specific streams so summer and winter peaks are not copies
        Rng season_rng(derive_seed(derive_seed(c.seed, kFeederStreamBase + static_cast<std::uint64_t>(f)),
                                   c.season == Season::summer ? 1 : 2));

        if (c.local_trend_max > c.local_trend_min) {
            Rng trend_rng(derive_seed(derive_seed(c.seed, kFeederStreamBase + static_cast<std::uint64_t>(f)), 3));
            truth.local_trend = trend_rng.uniform(c.local_trend_min, c.local_trend_max);
        } else {
            truth.local_trend = c.local_trend_min;
        }

        double base = truth.base_peak;
        auto& history = grid.feeders[truth.feeder_id];
        for (int y = 0; y < c.years; ++y) {
            double drift = 0.0;
            for (int l = 0; l <= lags; ++l) {
                const EconYear& e = econ[static_cast<std::size_t>(y + lags - l)];
                const double driver = res * e.population + com * e.gdp + (1.0 - res - com) * e.employment;
                drift += c.lag_weights[static_cast<std::size_t>(l)] * driver;
            }
            double lc = 0.0;
            if (y > 0) {
                if (rng.uniform() < c.large_customer_probability) {
                    lc = std::round(rng.uniform(-0.5, 1.0) * c.large_customer_max_fraction * base);
                }
                base = base * (1.0 + (truth.growth_sensitivity * drift + truth.local_trend) / 100.0) + lc;
                base = std::max(base, 0.2 * truth.base_peak);
            }

            res = std::clamp(res + c.composition_drift * rng.normal(), 0.0, 1.0);
            com = std::clamp(com + c.composition_drift * rng.normal(), 0.0, 1.0 - res);

            const double t_dev = temperature[static_cast<std::size_t>(y)] - c.temperature_mean;
            double peak = base * (1.0 + temp_sign * truth.temperature_sensitivity * t_dev) *
                          (1.0 + c.noise * season_rng.normal());
            peak = std::max(peak, 1.0);

            FeederYearRecord rec;
            rec.feeder_id = truth.feeder_id;
            rec.year = c.first_year + y;
            rec.peak_demand = peak;
            rec.residential_pct = res;
            rec.commercial_pct = com;
            rec.industrial_pct = 1.0 - res - com;
            rec.large_customer_net_change = lc;
            history.emplace(rec.year, std::move(rec));
        }
        grid.truth.push_back(truth);
    }
    return grid;
}

}  // namespace ltlf::synthgrid
