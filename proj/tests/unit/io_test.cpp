#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "ltlf/error.hpp"
#include "ltlf/io/csv.hpp"
#include "ltlf/io/datasets.hpp"
#include "ltlf/io/model_doc.hpp"
#include "ltlf/seqdata/dataset.hpp"
#include "ltlf/seqnet/network.hpp"
#include "ltlf/synthgrid.hpp"
#include "support/fixtures.hpp"
#include "support/helpers.hpp"
#include "support/temp_dir.hpp"

using namespace ltlf;
namespace ts = testing_support;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (!same_bits(a(i), b(i))) return false;
    }
    return true;
}

seqdata::EngineeredDataset small_dataset(std::uint64_t seed) {
    synthgrid::SynthConfig cfg;
    cfg.n_feeders = 12;
    cfg.years = 10;
    cfg.seed = seed;
    cfg.transfer_fraction = 0.3;
    auto grid = synthgrid::generate_synthetic_grid(cfg);
    const auto plan = synthgrid::plan_transfers(cfg, grid.feeders);
    auto injected = synthgrid::inject_load_transfers(grid.feeders, plan.events, plan.magnitudes);
    return seqdata::engineer(injected.feeders, grid.regional, injected.log, Season::summer, {});
}

}  // namespace

TEST(Csv, QuotedFieldsAndEscapedQuotes) {
    const auto t = io::parse_csv("a,b\n\"x,y\",\"say \"\"hi\"\"\"\r\n1,2\n");
    ASSERT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][0], "x,y");
    EXPECT_EQ(t.rows[0][1], "say \"hi\"");
    EXPECT_EQ(t.rows[1][1], "2");
    EXPECT_EQ(io::parse_csv(io::format_csv(t)).rows, t.rows);
}

TEST(Csv, MissingColumnNamesTheFile) {
    const auto t = io::parse_csv("a,b\n1,2\n");
    EXPECT_EQ(t.column("b"), 1);
    EXPECT_EQ(t.column("c"), -1);
    try {
        t.require("c", "feeders.csv");
        FAIL();
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("feeders.csv"), std::string::npos);
    }
}

TEST(Csv, NumbersRoundTripExactly) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(gen) * std::pow(10.0, static_cast<int>(gen() % 20) - 10);
        EXPECT_TRUE(same_bits(io::parse_number(io::format_number(v), "test"), v)) << v;
    }
    EXPECT_EQ(io::format_number(0.1), "0.1");
    EXPECT_THROW(io::parse_number("12abc", "test"), IoError);
    EXPECT_THROW(io::parse_number("", "test"), IoError);
}

TEST(Csv, MissingFileIsIoError) { EXPECT_THROW(io::read_csv("/nonexistent/dir/file.csv"), IoError); }

TEST(Datasets, FeederYearsRoundTripBothSeasons) {
    ts::TempDir dir;
    const auto ex = ts::summer_example();
    FeederTable winter = ex.feeders;
    for (auto& [id, hist] : winter) {
        for (auto& [y, rec] : hist) rec.peak_demand += 10.0;
    }
    io::write_feeder_years(dir / "f.csv", {{Season::summer, ex.feeders}, {Season::winter, winter}});
    const auto s = io::read_feeder_years(dir / "f.csv", Season::summer);
    const auto w = io::read_feeder_years(dir / "f.csv", Season::winter);
    ASSERT_EQ(s.size(), ex.feeders.size());
    for (const auto& [id, hist] : ex.feeders) {
        for (const auto& [y, rec] : hist) {
            const auto& got = s.at(id).at(y);
            EXPECT_TRUE(same_bits(got.peak_demand, rec.peak_demand));
            EXPECT_TRUE(same_bits(got.residential_pct, rec.residential_pct));
            EXPECT_TRUE(same_bits(got.commercial_pct, rec.commercial_pct));
            EXPECT_TRUE(same_bits(got.large_customer_net_change, rec.large_customer_net_change));
            EXPECT_NEAR(got.industrial_pct, rec.industrial_pct, 1e-15);
            EXPECT_DOUBLE_EQ(w.at(id).at(y).peak_demand, rec.peak_demand + 10.0);
        }
    }
}

TEST(Datasets, OptionalGrowthColumnsSurvive) {
    ts::TempDir dir;
    auto ex = ts::summer_example();
    for (auto& [id, hist] : ex.feeders) {
        for (auto& [y, rec] : hist) {
            rec.der_growth = 0.01 * y;
            rec.ev_growth = 0.5;
        }
    }
    io::write_feeder_years(dir / "f.csv", {{Season::summer, ex.feeders}});
    const auto back = io::read_feeder_years(dir / "f.csv", Season::summer);
    EXPECT_DOUBLE_EQ(*back.at("1001").at(2010).der_growth, 20.10);
    EXPECT_DOUBLE_EQ(*back.at("1001").at(2010).ev_growth, 0.5);
}

TEST(Datasets, RegionalYearsRoundTripAndColumnSelection) {
    ts::TempDir dir;
    const auto ex = ts::summer_example();
    io::write_regional_years(dir / "r.csv", {{Season::summer, ex.regional}});
    const auto all = io::read_regional_years(dir / "r.csv", Season::summer);
    EXPECT_EQ(all.econ_names, ex.regional.econ_names);
    for (const auto& [y, rec] : ex.regional.years) {
        EXPECT_EQ(all.years.at(y).econ, rec.econ);
        EXPECT_EQ(all.years.at(y).temperature, rec.temperature);
        EXPECT_EQ(all.years.at(y).temperature_change, rec.temperature_change);
    }
    const auto one = io::read_regional_years(dir / "r.csv", Season::summer, {"ep2"});
    EXPECT_EQ(one.econ_names, std::vector<std::string>{"ep2"});
    EXPECT_DOUBLE_EQ(one.years.at(2009).econ.at(0), 0.44);
    EXPECT_THROW(io::read_regional_years(dir / "r.csv", Season::summer, {"gdp"}), IoError);
}

TEST(Datasets, TransferLogKeepsQuotedIdsInOrder) {
    ts::TempDir dir;
    io::write_file(dir / "t.csv", "year,feeder_ids\n2012,\"B7, A3,C1\"\n2010,\"D2,E5\"\n");
    const auto log = io::read_transfer_log(dir / "t.csv");
    ASSERT_EQ(log.size(), 2u);
    EXPECT_EQ(log[0].year, 2012);
    EXPECT_EQ(log[0].feeder_ids, (std::vector<std::string>{"B7", "A3", "C1"}));
    io::write_transfer_log(dir / "t2.csv", log);
    EXPECT_EQ(io::read_transfer_log(dir / "t2.csv")[0].feeder_ids, log[0].feeder_ids);
}

TEST(Datasets, TransferLogRejectsSingleFeederEvents) {
    ts::TempDir dir;
    io::write_file(dir / "t.csv", "year,feeder_ids\n2012,B7\n");
    EXPECT_THROW(io::read_transfer_log(dir / "t.csv"), Error);
}

TEST(Datasets, EngineeredDatasetRoundTripIsBitwise) {
    const auto ds = small_dataset(5);
    ASSERT_FALSE(ds.train.empty());
    const std::string text = io::dataset_to_json(ds).dump();
    const auto back = io::dataset_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(io::dataset_to_json(back).dump(), text);
    EXPECT_EQ(back.virtual_groups, ds.virtual_groups);
    EXPECT_EQ(back.histories, ds.histories);

    const auto a = ds.prepared(ds.test, seqnet::SeqConfig::many_to_many);
    const auto b = back.prepared(back.test, seqnet::SeqConfig::many_to_many);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t t = 0; t < a[i].steps.size(); ++t) EXPECT_TRUE(same_bits(a[i].steps[t], b[i].steps[t]));
        for (std::size_t t = 0; t < a[i].targets.size(); ++t) EXPECT_TRUE(same_bits(a[i].targets[t], b[i].targets[t]));
    }
}

TEST(ModelDocument, SaveLoadIsLosslessForBothCells) {
    ts::TempDir dir;
    const auto ds = small_dataset(9);
    for (auto cell : {seqnet::CellKind::lstm, seqnet::CellKind::gru}) {
        seqnet::Architecture arch;
        arch.cell_kind = cell;
        arch.config = seqnet::SeqConfig::many_to_many;
        arch.input_width = ds.pipeline.input_width();
        arch.dense_widths = {7, 5};
        io::ModelDocument doc;
        doc.network = seqnet::init_network(arch, 11);
        std::mt19937_64 gen(2);
        ts::randomize(doc.network, gen, 0.7, 0.3);
        doc.pipeline = ds.pipeline;
        doc.season = Season::winter;
        doc.training = TrainHyperparams{};
        doc.training->seed = 42;

        io::save_model(dir / "m.json", doc);
        const auto back = io::load_model(dir / "m.json");
        EXPECT_EQ(back.network.cell_kind, cell);
        EXPECT_EQ(back.network.config, seqnet::SeqConfig::many_to_many);
        EXPECT_EQ(back.season, Season::winter);
        ASSERT_TRUE(back.training.has_value());
        EXPECT_EQ(back.training->seed, 42u);
        EXPECT_TRUE(same_bits(seqnet::flatten(back.network), seqnet::flatten(doc.network)));

        for (const auto& s : ds.prepared(ds.test, seqnet::SeqConfig::many_to_many)) {
            const auto want = seqnet::forward_sequence(doc.network, s.steps);
            const auto got = seqnet::forward_sequence(back.network, s.steps);
            ASSERT_EQ(got.size(), want.size());
            for (std::size_t t = 0; t < got.size(); ++t) EXPECT_TRUE(same_bits(got[t], want[t]));
        }
    }
}

TEST(ModelDocument, WeightsAreWrittenRowMajor) {
    seqnet::Architecture arch;
    arch.cell_kind = seqnet::CellKind::gru;
    arch.input_width = 2;
    arch.hidden_width = 2;
    arch.dense_widths = {2};
    auto net = seqnet::init_network(arch, 1);
    auto& w = net.dense_hidden[0].weight;
    w << 1, 2, 3, 4;
    const auto j = io::network_to_json(net);
    const auto dumped = j.dump();
    EXPECT_NE(dumped.find("[1.0,2.0,3.0,4.0]"), std::string::npos) << dumped;
}

TEST(ModelDocument, RejectsMalformedDocuments) {
    ts::TempDir dir;
    io::write_file(dir / "bad.json", "{\"network\": 3}");
    EXPECT_THROW(io::load_model(dir / "bad.json"), Error);
    io::write_file(dir / "broken.json", "{not json");
    EXPECT_THROW(io::load_model(dir / "broken.json"), IoError);
    EXPECT_THROW(io::load_model(dir / "missing.json"), IoError);
}
