#include <gtest/gtest.h>

#include <random>

#include "ltlf/error.hpp"
#include "ltlf/evalkit.hpp"

using namespace ltlf;
using namespace ltlf::evalkit;

TEST(Mape, HandExamples) {
    const std::vector<double> a{550, 521}, f{539, 547};
    EXPECT_NEAR(mape(a, f), 3.495, 5e-4);
    EXPECT_NEAR(mape(a, f), (11.0 / 550 + 26.0 / 521) / 2 * 100, 1e-12);
    EXPECT_EQ(mape(a, a), 0.0);
    EXPECT_DOUBLE_EQ(mape(std::vector<double>{100}, std::vector<double>{90}), 10.0);
}

TEST(Mape, RejectsZeroActualAndBadLengths) {
    EXPECT_THROW(mape(std::vector<double>{0, 1}, std::vector<double>{1, 1}), DomainError);
    EXPECT_THROW(mape(std::vector<double>{}, std::vector<double>{}), DomainError);
    EXPECT_THROW(mape(std::vector<double>{1, 2}, std::vector<double>{1}), ShapeError);
}

TEST(Mape, ScaleInvariantAndNonnegative) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(50, 900), k(0.01, 100);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(7), f(7), a2(7), f2(7);
        const double scale = k(gen);
        for (int i = 0; i < 7; ++i) {
            a[i] = u(gen), f[i] = u(gen);
            a2[i] = a[i] * scale, f2[i] = f[i] * scale;
        }
        EXPECT_NEAR(mape(a, f), mape(a2, f2), 1e-9);
        EXPECT_GT(mape(a, f), 0.0);
    }
}

TEST(Cumulative, ShareWithinThreshold) {
    const std::vector<double> e{5, 8, 12, 20};
    EXPECT_DOUBLE_EQ(cumulative_within(e, 10), 50.0);
    EXPECT_DOUBLE_EQ(cumulative_within(std::vector<double>{0, 0, 0}, 10), 100.0);
    EXPECT_DOUBLE_EQ(cumulative_within(e, 1), 0.0);
    EXPECT_DOUBLE_EQ(cumulative_within(std::vector<double>{10.0}, 10), 100.0);
    double prev = 0;
    for (double t = 0; t <= 25; t += 0.5) {
        const double c = cumulative_within(e, t);
        EXPECT_GE(c, prev);
        prev = c;
    }
}

TEST(Histogram, HalfOpenBins) {
    const auto h = error_histogram(std::vector<double>{1, 3, 3, 9}, 2.0);
    EXPECT_EQ(h.counts, (std::vector<std::size_t>{1, 2, 0, 0, 1}));
    EXPECT_FALSE(h.empty);
    const auto edge = error_histogram(std::vector<double>{2.0, 4.0}, 2.0);
    EXPECT_EQ(edge.counts, (std::vector<std::size_t>{0, 1, 1}));
    const auto none = error_histogram(std::vector<double>{}, 2.0);
    EXPECT_TRUE(none.empty);
    EXPECT_EQ(none.total(), 0u);
    EXPECT_THROW(error_histogram(std::vector<double>{1}, 0.0), DomainError);
}

TEST(Histogram, CountsConserveRecords) {
    std::mt19937_64 gen(2);
    std::exponential_distribution<double> d(0.2);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> e(1 + trial * 7);
        for (auto& v : e) v = d(gen);
        EXPECT_EQ(error_histogram(e, 0.5 + trial * 0.1).total(), e.size());
    }
}

TEST(Report, TextAndJsonRoundTrip) {
    const std::vector<double> a{550, 521, 330}, f{539, 547, 331};
    const auto r = make_report("LSTM many-to-one", "summer", a, f, 2.0, 12.5);
    EXPECT_DOUBLE_EQ(r.mape, mape(a, f));
    EXPECT_EQ(r.histogram.total(), 3u);
    const auto from_text = parse_report(to_text(r));
    EXPECT_EQ(from_text.label, r.label);
    EXPECT_EQ(from_text.season, "summer");
    EXPECT_NEAR(from_text.mape, r.mape, 5e-5);
    const auto from_json = parse_report(to_json(r).dump());
    EXPECT_EQ(from_json.mape, r.mape);
    EXPECT_EQ(from_json.errors, r.errors);
    EXPECT_EQ(*from_json.training_time_seconds, 12.5);
    EXPECT_THROW(parse_report("hello"), IoError);
}

TEST(Report, ComparisonGridHasOneRowPerModel) {
    const std::vector<double> a{100, 200}, f1{90, 210}, f2{100, 200};
    const std::vector<EvalReport> reports{make_report("GRU", "summer", a, f1), make_report("GRU", "winter", a, f2),
                                          make_report("AR(2)", "summer", a, f2)};
    const std::string grid = compare_reports(reports);
    EXPECT_NE(grid.find("Summer MAPE (%)"), std::string::npos);
    EXPECT_NE(grid.find("Winter MAPE (%)"), std::string::npos);
    EXPECT_LT(grid.find("GRU"), grid.find("AR(2)"));
    EXPECT_NE(grid.find("7.50"), std::string::npos);
}
