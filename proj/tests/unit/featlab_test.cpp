#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ltlf/error.hpp"
#include "ltlf/featlab/composition.hpp"
#include "ltlf/featlab/normalize.hpp"
#include "ltlf/featlab/pca.hpp"
#include "ltlf/featlab/virtual_feeder.hpp"
#include "support/fixtures.hpp"

using namespace ltlf;
using namespace ltlf::featlab;

namespace {

FeederYearRecord record(const std::string& id, int year, double peak, double r, double c, double lc = 0.0) {
    FeederYearRecord rec;
    rec.feeder_id = id;
    rec.year = year;
    rec.peak_demand = peak;
    rec.residential_pct = r;
    rec.commercial_pct = c;
    rec.industrial_pct = 1.0 - r - c;
    rec.large_customer_net_change = lc;
    return rec;
}

}  // namespace

TEST(LoadComposition, IndustrialIsTheResidual) {
    const double peak = 540.0;
    const std::vector<double> res{0.594 * peak * 0.5, 0.594 * peak * 0.5};
    const std::vector<double> com{0.127 * peak};
    const auto c = load_composition(peak, res, com);
    EXPECT_NEAR(c.residential, 0.594, 1e-12);
    EXPECT_NEAR(c.commercial, 0.127, 1e-12);
    EXPECT_NEAR(c.industrial, 0.279, 5e-5);
    EXPECT_DOUBLE_EQ(c.residential + c.commercial + c.industrial, 1.0);
}

TEST(LoadComposition, PureResidentialAndAllIndustrial) {
    const std::vector<double> all{200.0, 100.0};
    const auto pure = load_composition(300.0, all, {});
    EXPECT_DOUBLE_EQ(pure.residential, 1.0);
    EXPECT_DOUBLE_EQ(pure.commercial, 0.0);
    EXPECT_DOUBLE_EQ(pure.industrial, 0.0);
    const auto ind = load_composition(300.0, {}, {});
    EXPECT_EQ(ind.residential, 0.0);
    EXPECT_EQ(ind.industrial, 1.0);
}

TEST(LoadComposition, RejectsBadInputs) {
    EXPECT_THROW(load_composition(0.0, {}, {}), DomainError);
    const std::vector<double> too_much{250.0, 100.0};
    EXPECT_THROW(load_composition(300.0, too_much, {}), ConsistencyError);
}

TEST(VirtualFeeder, PeakIsMeanAndSharesArePeakWeighted) {
    const std::vector<FeederYearRecord> m{record("1001", 2008, 433, 0.665, 0.102, 42),
                                          record("1321", 2008, 317, 0.942, 0.058, 0)};
    const auto v = build_virtual_feeder(m);
    EXPECT_DOUBLE_EQ(v.peak_demand, 375.0);
    EXPECT_NEAR(v.residential_pct, 0.7821, 5e-5);
    EXPECT_NEAR(v.commercial_pct, (0.102 * 433 + 0.058 * 317) / 750.0, 1e-12);
    EXPECT_NEAR(v.residential_pct + v.commercial_pct + v.industrial_pct, 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(v.large_customer_net_change, 21.0);
    EXPECT_EQ(v.feeder_id, "1001+1321");
    EXPECT_EQ(v.year, 2008);
}

TEST(VirtualFeeder, IdenticalMembersReproduceTheMember) {
    auto a = record("7", 2010, 410.5, 0.61, 0.22, -3.0);
    a.der_growth = 0.4;
    auto b = a;
    b.feeder_id = "8";
    const auto v = build_virtual_feeder(std::vector<FeederYearRecord>{a, b});
    EXPECT_DOUBLE_EQ(v.peak_demand, a.peak_demand);
    EXPECT_NEAR(v.residential_pct, a.residential_pct, 1e-15);
    EXPECT_NEAR(v.commercial_pct, a.commercial_pct, 1e-15);
    EXPECT_DOUBLE_EQ(v.large_customer_net_change, a.large_customer_net_change);
    EXPECT_DOUBLE_EQ(*v.der_growth, 0.4);
}

TEST(VirtualFeeder, PermutationInvariantAndWithinMemberRange) {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> peak(100, 700), share(0.0, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<FeederYearRecord> m;
        const int p = 2 + trial % 4;
        for (int i = 0; i < p; ++i) m.push_back(record(std::to_string(100 + i), 2012, peak(gen), share(gen), share(gen)));
        const auto v = build_virtual_feeder(m);
        std::shuffle(m.begin(), m.end(), gen);
        const auto w = build_virtual_feeder(m);
        EXPECT_EQ(v.peak_demand, w.peak_demand);
        EXPECT_EQ(v.residential_pct, w.residential_pct);
        EXPECT_EQ(v.commercial_pct, w.commercial_pct);
        auto [rlo, rhi] = std::minmax_element(m.begin(), m.end(), [](auto& a, auto& b) { return a.residential_pct < b.residential_pct; });
        auto [plo, phi] = std::minmax_element(m.begin(), m.end(), [](auto& a, auto& b) { return a.peak_demand < b.peak_demand; });
        EXPECT_GE(v.residential_pct, rlo->residential_pct - 1e-12);
        EXPECT_LE(v.residential_pct, rhi->residential_pct + 1e-12);
        EXPECT_GE(v.peak_demand, plo->peak_demand - 1e-9);
        EXPECT_LE(v.peak_demand, phi->peak_demand + 1e-9);
    }
}

TEST(VirtualFeeder, RejectsSingleMemberAndMixedYears) {
    EXPECT_THROW(build_virtual_feeder(std::vector<FeederYearRecord>{record("1", 2010, 1, 0.5, 0.1)}), DomainError);
    EXPECT_THROW(build_virtual_feeder(std::vector<FeederYearRecord>{record("1", 2010, 1, 0.5, 0.1),
                                                                    record("2", 2011, 1, 0.5, 0.1)}),
                 ConsistencyError);
}

TEST(VirtualFeeder, ResolveMergesConnectedFeedersOnSharedYears) {
    FeederTable t;
    for (int y = 2005; y <= 2010; ++y) {
        t["A"][y] = record("A", y, 300 + y - 2005, 0.5, 0.2);
        if (y >= 2006) t["B"][y] = record("B", y, 200, 0.8, 0.1);
        t["C"][y] = record("C", y, 100, 0.3, 0.3);
        t["D"][y] = record("D", y, 150, 0.3, 0.3);
    }
    const std::vector<TransferEvent> events{{2008, {"A", "B"}}, {2009, {"C", "A"}}};
    const auto resolved = resolve_virtual_feeders(t, events);
    ASSERT_EQ(resolved.groups.size(), 1u);
    EXPECT_EQ(resolved.groups[0], (std::vector<std::string>{"A", "B", "C"}));
    ASSERT_TRUE(resolved.table.contains("A+B+C"));
    ASSERT_TRUE(resolved.table.contains("D"));
    EXPECT_FALSE(resolved.table.contains("A"));
    const auto& v = resolved.table.at("A+B+C");
    EXPECT_EQ(v.size(), 5u);  // 2006..2010, B has no 2005
    EXPECT_DOUBLE_EQ(v.at(2006).peak_demand, (301.0 + 200.0 + 100.0) / 3.0);

    const std::vector<TransferEvent> unknown{{2008, {"A", "Z"}}};
    EXPECT_THROW(resolve_virtual_feeders(t, unknown), ConsistencyError);
}

TEST(Normalizer, FitsColumnExtremes) {
    Eigen::MatrixXd m(3, 2);
    m << -2.5, 1, 9.1, 1, 14.2, 1;
    const auto s = fit_normalizer(m);
    EXPECT_EQ(s.min[0], -2.5);
    EXPECT_EQ(s.max[0], 14.2);
    EXPECT_FALSE(s.degenerate(0));
    EXPECT_TRUE(s.degenerate(1));
    const auto single = fit_normalizer(m.topRows(1));
    EXPECT_TRUE(single.degenerate(0) && single.degenerate(1));
    EXPECT_THROW(fit_normalizer(Eigen::MatrixXd(0, 2)), DomainError);
}

TEST(Normalizer, MapsIntoFittedRange) {
    Eigen::MatrixXd fit(2, 1);
    fit << 0, 10;
    const auto s = fit_normalizer(fit);
    EXPECT_DOUBLE_EQ(s.apply(0, 5.0), 0.5);
    EXPECT_DOUBLE_EQ(s.apply(0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(s.apply(0, 10.0), 1.0);
    EXPECT_DOUBLE_EQ(s.apply(0, 15.0), 1.5);

    Eigen::MatrixXd gdp(3, 1);
    gdp << -2.5, 9.1, 14.2;
    const auto g = fit_normalizer(gdp);
    EXPECT_NEAR(apply_normalizer(g, gdp)(1, 0), 0.6946, 5e-5);
    EXPECT_THROW(apply_normalizer(g, Eigen::MatrixXd::Zero(2, 2)), ShapeError);
}

TEST(Normalizer, DegenerateColumnMapsToZeroAndInverseRecoversRaw) {
    std::mt19937_64 gen(4);
    std::normal_distribution<double> d(3.0, 7.0);
    Eigen::MatrixXd m(20, 3);
    for (int r = 0; r < 20; ++r) m.row(r) << d(gen), d(gen), 4.25;
    const auto s = fit_normalizer(m);
    const auto n = apply_normalizer(s, m);
    EXPECT_EQ(n.col(2).cwiseAbs().maxCoeff(), 0.0);
    const auto back = invert_normalizer(s, n);
    EXPECT_LT((back - m).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pca, RankOneDataHasOneNonzeroEigenvalue) {
    Eigen::MatrixXd m(6, 3);
    const Eigen::RowVector3d dir(1.0, -2.0, 0.5);
    for (int r = 0; r < 6; ++r) m.row(r) = Eigen::RowVector3d(4, 1, -3) + (r - 2.5) * dir;
    const auto p = fit_pca(m);
    EXPECT_GT(p.eigenvalues(0), 0.0);
    EXPECT_LT(p.eigenvalues(1), 1e-10);
    EXPECT_LT(p.eigenvalues(2), 1e-10);
    EXPECT_DOUBLE_EQ(proportion_variance_explained(p, 1), 1.0);
}

TEST(Pca, ReproducesReferenceRegionalComponentsAfterMinMaxScaling) {
    const Eigen::MatrixXd raw = testing_support::regional_economy();
    const auto stats = fit_normalizer(raw);
    const Eigen::MatrixXd x = apply_normalizer(stats, raw);
    auto p = fit_pca(x);
    EXPECT_NEAR(proportion_variance_explained(p, 2), 0.971, 0.02);
    EXPECT_EQ(components_for_pve(p, 0.95), 2);
    p.selected_count = 2;
    const Eigen::MatrixXd t = project_pca(p, x);
    const Eigen::MatrixXd want = testing_support::reference_components();
    for (int c = 0; c < 2; ++c) {
        const double same = (t.col(c) - want.col(c)).cwiseAbs().maxCoeff();
        const double flipped = (t.col(c) + want.col(c)).cwiseAbs().maxCoeff();
        EXPECT_LE(std::min(same, flipped), 0.02) << "component " << c;
    }
    const Eigen::RowVectorXd first = project_pca(p, x.topRows(1)).row(0);
    EXPECT_NEAR(std::abs(first(0)), 0.64, 0.02);
    EXPECT_NEAR(std::abs(first(1)), 0.44, 0.02);
}

TEST(Pca, ReconstructsGramMatrixAndIsOrthonormal) {
    std::mt19937_64 gen(6);
    std::normal_distribution<double> d(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + trial % 6;
        Eigen::MatrixXd m(15, k);
        for (int r = 0; r < 15; ++r) {
            for (int c = 0; c < k; ++c) m(r, c) = d(gen) * (c + 1);
        }
        const auto p = fit_pca(m);
        const Eigen::MatrixXd centered = m.rowwise() - m.colwise().mean();
        const Eigen::MatrixXd gram = centered.transpose() * centered;
        const Eigen::MatrixXd rebuilt = p.components * p.eigenvalues.asDiagonal() * p.components.transpose();
        EXPECT_LT((gram - rebuilt).cwiseAbs().maxCoeff(), 1e-8);
        EXPECT_LT((p.components.transpose() * p.components - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-8);
        for (int i = 1; i < k; ++i) EXPECT_GE(p.eigenvalues(i - 1), p.eigenvalues(i));
        for (int c = 0; c < k; ++c) {
            Eigen::Index arg;
            p.components.col(c).cwiseAbs().maxCoeff(&arg);
            EXPECT_GT(p.components(arg, c), 0.0);
        }
        double prev = 0.0;
        for (int t = 1; t <= k; ++t) {
            const double pve = proportion_variance_explained(p, t);
            EXPECT_GE(pve, prev);
            prev = pve;
        }
        EXPECT_EQ(proportion_variance_explained(p, k), 1.0);
    }
}

TEST(Pca, ProjectionsAreCenteredAndUncorrelated) {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> d(0, 1);
    Eigen::MatrixXd m(40, 4);
    for (int r = 0; r < 40; ++r) {
        const double z = d(gen);
        m.row(r) << z + d(gen) * 0.1, 2 * z, d(gen), z - d(gen);
    }
    const auto p = fit_pca(m);
    const Eigen::MatrixXd mean_row = m.colwise().mean();
    EXPECT_LT(project_pca(p, mean_row).cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::MatrixXd t = project_pca(p, m);
    const Eigen::MatrixXd cov = t.transpose() * t / 39.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i != j) EXPECT_LT(std::abs(cov(i, j)), 1e-8);
        }
    }
    EXPECT_THROW(project_pca(p, Eigen::MatrixXd::Zero(2, 3)), ShapeError);
}

TEST(Pca, SimpleEigenvalueRatioAndErrors) {
    PcaTransform p;
    p.column_means = Eigen::VectorXd::Zero(2);
    p.components = Eigen::MatrixXd::Identity(2, 2);
    p.eigenvalues = Eigen::Vector2d(3.0, 1.0);
    p.selected_count = 2;
    EXPECT_DOUBLE_EQ(proportion_variance_explained(p, 1), 0.75);
    EXPECT_THROW(proportion_variance_explained(p, 0), DomainError);
    p.eigenvalues.setZero();
    EXPECT_THROW(proportion_variance_explained(p, 1), DomainError);
    EXPECT_THROW(fit_pca(Eigen::MatrixXd::Ones(1, 3)), DomainError);
}
