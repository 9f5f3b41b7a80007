#include <gtest/gtest.h>

#include <random>

#include "ltlf/error.hpp"
#include "ltlf/seqnet/backprop.hpp"
#include "ltlf/seqnet/trainer.hpp"
#include "support/helpers.hpp"

using namespace ltlf::seqnet;
namespace ts = testing_support;

namespace {

struct Case {
    CellKind cell;
    SeqConfig config;
};

NetworkParams random_net(const Case& c, std::mt19937_64& gen, int width, int hidden, std::vector<int> dense) {
    Architecture a;
    a.cell_kind = c.cell;
    a.config = c.config;
    a.input_width = width;
    a.hidden_width = hidden;
    a.dense_widths = std::move(dense);
    auto net = init_network(a, gen());
    ts::randomize(net, gen, 0.5, 1.0);
    return net;
}

double loss_at(NetworkParams net, const oracle::Vec& theta, const std::vector<ltlf::SequenceSample>& batch) {
    unflatten(net, Eigen::Map<const Vector>(theta.data(), static_cast<Eigen::Index>(theta.size())));
    return batch_loss(net, batch);
}

}  // namespace

class GradientCheck : public ::testing::TestWithParam<Case> {};

TEST_P(GradientCheck, AgreesWithCentralDifferences) {
    const Case c = GetParam();
    std::mt19937_64 gen(1000 + static_cast<int>(c.cell) * 10 + static_cast<int>(c.config));
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int width = 3 + trial % 4;
        const int hidden = 2 + trial % 4;
        const auto net = random_net(c, gen, width, hidden, trial % 3 == 0 ? std::vector<int>{5, 3} : std::vector<int>{4});
        const int targets = c.config == SeqConfig::many_to_one ? 1 : 3;
        // Targets sit well away from outputs so no residual is near the |r| kink.
        const auto batch = ts::random_samples(gen, 4, 3, width, targets, 5.0);
        const auto analytic = compute_gradients(net, batch);
        EXPECT_NEAR(analytic.loss, batch_loss(net, batch), 1e-12);
        const Vector flat = flatten(net);
        const oracle::Vec theta(flat.data(), flat.data() + flat.size());
        const auto numeric = oracle::central_differences(
            theta, [&](const oracle::Vec& t) { return loss_at(net, t, batch); }, 1e-5);
        const Vector g = flatten(analytic.grads);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            worst = std::max(worst, oracle::relative_error(g(i), numeric[static_cast<std::size_t>(i)], 1e-5));
        }
    }
    EXPECT_LT(worst, 1e-4);
}

INSTANTIATE_TEST_SUITE_P(AllCellsAndConfigs, GradientCheck,
                         ::testing::Values(Case{CellKind::lstm, SeqConfig::many_to_one},
                                           Case{CellKind::lstm, SeqConfig::many_to_many},
                                           Case{CellKind::gru, SeqConfig::many_to_one},
                                           Case{CellKind::gru, SeqConfig::many_to_many}),
                         [](const auto& info) {
                             return std::string(to_string(info.param.cell)) + "_" +
                                    (info.param.config == SeqConfig::many_to_one ? "ManyToOne" : "ManyToMany");
                         });

TEST(Gradients, ZeroWhenEveryResidualIsZero) {
    std::mt19937_64 gen(42);
    for (auto cell : {CellKind::lstm, CellKind::gru}) {
        const auto net = random_net({cell, SeqConfig::many_to_many}, gen, 4, 3, {4});
        auto batch = ts::random_samples(gen, 3, 3, 4, 3, 0.0);
        for (auto& s : batch) s.targets = forward_sequence(net, s.steps);
        const auto result = compute_gradients(net, batch);
        EXPECT_EQ(result.loss, 0.0);
        EXPECT_EQ(flatten(result.grads).cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(Gradients, ManyToManyIsMeanOfPerStepGradients) {
    // Step i of a many-to-many run equals the single output of a many-to-one
    // run truncated to i steps, so each step's loss can be differentiated
    // separately and the results averaged.
    std::mt19937_64 gen(43);
    for (auto cell : {CellKind::lstm, CellKind::gru}) {
        const auto net = random_net({cell, SeqConfig::many_to_many}, gen, 4, 3, {5});
        const auto batch = ts::random_samples(gen, 1, 3, 4, 3, 4.0);
        const Vector full = flatten(compute_gradients(net, batch).grads);

        Vector mean = Vector::Zero(full.size());
        for (int i = 1; i <= 3; ++i) {
            auto truncated = net;
            truncated.config = SeqConfig::many_to_one;
            truncated.n_steps = i;
            ltlf::SequenceSample s = batch[0];
            s.steps.resize(i);
            s.forecast_years.resize(i);
            s.targets = {batch[0].targets[i - 1]};
            mean += flatten(compute_gradients(truncated, {s}).grads) / 3.0;
        }
        EXPECT_LT((full - mean).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Gradients, RejectsEmptyBatchAndWrongTargetCount) {
    std::mt19937_64 gen(44);
    const auto net = random_net({CellKind::lstm, SeqConfig::many_to_one}, gen, 4, 3, {4});
    EXPECT_THROW(compute_gradients(net, std::vector<ltlf::SequenceSample>{}), ltlf::DomainError);
    auto batch = ts::random_samples(gen, 2, 3, 4, 3, 0.0);
    EXPECT_THROW(compute_gradients(net, batch), ltlf::ShapeError);
}

TEST(Gradients, NonFiniteInputIsReported) {
    std::mt19937_64 gen(45);
    const auto net = random_net({CellKind::gru, SeqConfig::many_to_one}, gen, 4, 3, {4});
    auto batch = ts::random_samples(gen, 1, 3, 4, 1, 0.0);
    batch[0].steps[1](2) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(compute_gradients(net, batch), ltlf::NumericError);
}
