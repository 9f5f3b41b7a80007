#pragma once

#include <Eigen/Dense>

#include "ltlf/records.hpp"

namespace testing_support {

inline ltlf::FeederYearRecord feeder_year(const std::string& id, int year, double peak, double r, double c,
                                          double lc) {
    ltlf::FeederYearRecord rec;
    rec.feeder_id = id;
    rec.year = year;
    rec.peak_demand = peak;
    rec.residential_pct = r;
    rec.commercial_pct = c;
    rec.industrial_pct = 1.0 - r - c;
    rec.large_customer_net_change = lc;
    return rec;
}

/// Feeder 1001 for 2008-2012 with the regional rows of the same years. The
/// two economic columns already hold principal-component scores.
struct SummerExample {
    ltlf::FeederTable feeders;
    ltlf::RegionalHistory regional;
};

inline SummerExample summer_example() {
    SummerExample ex;
    auto& f = ex.feeders["1001"];
    f[2008] = feeder_year("1001", 2008, 433, 0.665, 0.102, 0);
    f[2009] = feeder_year("1001", 2009, 502, 0.631, 0.111, 42);
    f[2010] = feeder_year("1001", 2010, 554, 0.630, 0.113, 34);
    f[2011] = feeder_year("1001", 2011, 550, 0.594, 0.127, 0);
    f[2012] = feeder_year("1001", 2012, 521, 0.590, 0.130, -21);

    ex.regional.econ_names = {"ep1", "ep2"};
    const struct {
        int year;
        double e1, e2, temp;
    } rows[] = {{2008, 0.10, 0.20, 32.6}, {2009, -0.64, 0.44, 33.3}, {2010, -0.16, 0.31, 32.0},
                {2011, 0.33, -0.31, 35.4}, {2012, -0.06, -0.17, 33.2}};
    for (const auto& r : rows) {
        ltlf::RegionalYearRecord rec;
        rec.year = r.year;
        rec.econ = {r.e1, r.e2};
        rec.temperature = r.temp;
        ex.regional.years[r.year] = rec;
    }
    ex.regional.update_temperature_changes();
    return ex;
}

// GDP growth, employment growth, population growth, net migration.
inline Eigen::MatrixXd regional_economy() {
    Eigen::MatrixXd m(10, 4);
    m << 14.2, 4.9, 2.9, 17.6,
         9.1, 2.7, 2.2, 12.4,
         -2.5, -0.5, 2.2, 12.9,
         2.2, 1.3, 2.6, 18.0,
         3.2, 2.0, 1.0, 4.0,
         3.5, 3.4, 2.7, 14.3,
         2.3, 2.6, 2.6, 19.1,
         3.9, 3.2, 3.4, 22,
         -0.2, 1.3, 3.0, 24.9,
         -3.2, -2.6, 0.3, -6.5;
    return m;
}

inline Eigen::MatrixXd reference_components() {
    Eigen::MatrixXd m(10, 2);
    m << -0.64, 0.44, -0.16, 0.31, 0.33, -0.31, -0.06, -0.17, 0.38, 0.32,
         -0.19, 0.02, -0.17, -0.12, -0.44, -0.18, -0.19, -0.42, 1.14, 0.11;
    return m;
}

}  // namespace testing_support
