#include "ltlf/io/datasets.hpp"

#include <set>

#include "ltlf/error.hpp"
#include "ltlf/io/csv.hpp"

namespace ltlf::io {

namespace {

int parse_int(const std::string& text, const std::string& context) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw IoError(context + ": not an integer: '" + text + "'");
    }
}

bool season_matches(const CsvTable& t, const std::vector<std::string>& row, Season season) {
    const int c = t.column("season");
    return c < 0 || row[static_cast<std::size_t>(c)] == to_string(season);
}

const std::set<std::string> kRegionalReserved{"year", "season", "temperature_C"};

}  // namespace

FeederTable read_feeder_years(const std::string& path, Season season) {
    const CsvTable t = read_csv(path);
    const auto c_id = t.require("feeder_id", path);
    const auto c_year = t.require("year", path);
    const auto c_peak = t.require("peak_demand_A", path);
    const auto c_res = t.require("residential_pct", path);
    const auto c_com = t.require("commercial_pct", path);
    const auto c_lc = t.require("large_customer_net_change_A", path);
    const int c_der = t.column("der_growth");
    const int c_ev = t.column("ev_growth");

    FeederTable table;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        if (!season_matches(t, row, season)) continue;
        const std::string ctx = path + " row " + std::to_string(r + 2);
        FeederYearRecord rec;
        rec.feeder_id = row[c_id];
        rec.year = parse_int(row[c_year], ctx);
        rec.peak_demand = parse_number(row[c_peak], ctx);
        rec.residential_pct = parse_number(row[c_res], ctx);
        rec.commercial_pct = parse_number(row[c_com], ctx);
        rec.industrial_pct = 1.0 - rec.residential_pct - rec.commercial_pct;
        rec.large_customer_net_change = parse_number(row[c_lc], ctx);
        if (c_der >= 0) rec.der_growth = parse_number(row[static_cast<std::size_t>(c_der)], ctx);
        if (c_ev >= 0) rec.ev_growth = parse_number(row[static_cast<std::size_t>(c_ev)], ctx);
        rec.validate();
        if (!table[rec.feeder_id].emplace(rec.year, rec).second) {
            throw IoError(ctx + ": duplicate feeder-year " + rec.feeder_id + "/" + std::to_string(rec.year));
        }
    }
    return table;
}

void write_feeder_years(const std::string& path, const std::map<Season, FeederTable>& seasons) {
    CsvTable t;
    t.header = {"feeder_id", "year", "season", "peak_demand_A", "residential_pct", "commercial_pct",
                "large_customer_net_change_A"};
    bool der = false, ev = false;
    for (const auto& [season, table] : seasons) {
        for (const auto& [id, hist] : table) {
            for (const auto& [year, rec] : hist) {
                der = der || rec.der_growth.has_value();
                ev = ev || rec.ev_growth.has_value();
            }
        }
    }
    if (der) t.header.push_back("der_growth");
    if (ev) t.header.push_back("ev_growth");
    for (const auto& [season, table] : seasons) {
        for (const auto& [id, hist] : table) {
            for (const auto& [year, rec] : hist) {
                std::vector<std::string> row{rec.feeder_id,
                                             std::to_string(year),
                                             to_string(season),
                                             format_number(rec.peak_demand),
                                             format_number(rec.residential_pct),
                                             format_number(rec.commercial_pct),
                                             format_number(rec.large_customer_net_change)};
                if (der) row.push_back(format_number(rec.der_growth.value_or(0.0)));
                if (ev) row.push_back(format_number(rec.ev_growth.value_or(0.0)));
                t.rows.push_back(std::move(row));
            }
        }
    }
    write_csv(path, t);
}

RegionalHistory read_regional_years(const std::string& path, Season season,
                                    const std::vector<std::string>& econ_columns) {
    const CsvTable t = read_csv(path);
    const auto c_year = t.require("year", path);
    const auto c_temp = t.require("temperature_C", path);

    RegionalHistory h;
    std::vector<std::size_t> econ_idx;
    if (econ_columns.empty()) {
        for (std::size_t c = 0; c < t.header.size(); ++c) {
            if (!kRegionalReserved.contains(t.header[c])) {
                h.econ_names.push_back(t.header[c]);
                econ_idx.push_back(c);
            }
        }
    } else {
        for (const auto& name : econ_columns) {
            econ_idx.push_back(t.require(name, path));
            h.econ_names.push_back(name);
        }
    }

    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        if (!season_matches(t, row, season)) continue;
        const std::string ctx = path + " row " + std::to_string(r + 2);
        RegionalYearRecord rec;
        rec.year = parse_int(row[c_year], ctx);
        for (std::size_t c : econ_idx) rec.econ.push_back(parse_number(row[c], ctx));
        rec.temperature = parse_number(row[c_temp], ctx);
        if (!h.years.emplace(rec.year, rec).second) {
            throw IoError(ctx + ": duplicate regional year " + std::to_string(rec.year));
        }
    }
    h.update_temperature_changes();
    return h;
}

void write_regional_years(const std::string& path, const std::map<Season, RegionalHistory>& seasons) {
    CsvTable t;
    t.header = {"year", "season"};
    if (!seasons.empty()) {
        for (const auto& n : seasons.begin()->second.econ_names) t.header.push_back(n);
    }
    t.header.push_back("temperature_C");
    for (const auto& [season, hist] : seasons) {
        for (const auto& [year, rec] : hist.years) {
            std::vector<std::string> row{std::to_string(year), to_string(season)};
            for (double v : rec.econ) row.push_back(format_number(v));
            row.push_back(format_number(rec.temperature));
            t.rows.push_back(std::move(row));
        }
    }
    write_csv(path, t);
}

std::vector<TransferEvent> read_transfer_log(const std::string& path) {
    const CsvTable t = read_csv(path);
    const auto c_year = t.require("year", path);
    const auto c_ids = t.require("feeder_ids", path);
    std::vector<TransferEvent> events;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string ctx = path + " row " + std::to_string(r + 2);
        TransferEvent ev;
        ev.year = parse_int(t.rows[r][c_year], ctx);
        const std::string& ids = t.rows[r][c_ids];
        std::size_t start = 0;
        while (start <= ids.size()) {
            const std::size_t comma = ids.find(',', start);
            std::string id = ids.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            id.erase(0, id.find_first_not_of(' '));
            id.erase(id.find_last_not_of(' ') + 1);
            if (!id.empty()) ev.feeder_ids.push_back(id);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        try {
            ev.validate();
        } catch (const DomainError& e) {
            throw IoError(ctx + ": " + e.what());
        }
        events.push_back(std::move(ev));
    }
    return events;
}

void write_transfer_log(const std::string& path, const std::vector<TransferEvent>& events) {
    CsvTable t;
    t.header = {"year", "feeder_ids"};
    for (const auto& ev : events) {
        std::string ids;
        for (const auto& id : ev.feeder_ids) ids += (ids.empty() ? "" : ",") + id;
        t.rows.push_back({std::to_string(ev.year), ids});
    }
    write_csv(path, t);
}

// ---- JSON ------------------------------------------------------------------

namespace {

nlohmann::json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vec_from(const nlohmann::json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

nlohmann::json stats_json(const featlab::NormalizationStats& s) { return {{"min", s.min}, {"max", s.max}}; }

featlab::NormalizationStats stats_from(const nlohmann::json& j) {
    featlab::NormalizationStats s;
    s.min = j.at("min").get<std::vector<double>>();
    s.max = j.at("max").get<std::vector<double>>();
    if (s.min.size() != s.max.size()) throw IoError("normalization stats min/max lengths differ");
    return s;
}

}  // namespace

nlohmann::json sample_to_json(const SequenceSample& s) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& x : s.steps) steps.push_back(vec_json(x));
    return {{"record_id", s.record_id}, {"feeder_id", s.feeder_id}, {"years", s.forecast_years},
            {"steps", steps},           {"targets", s.targets}};
}

SequenceSample sample_from_json(const nlohmann::json& j) {
    SequenceSample s;
    s.record_id = j.at("record_id").get<int>();
    s.feeder_id = j.at("feeder_id").get<std::string>();
    s.forecast_years = j.at("years").get<std::vector<int>>();
    for (const auto& x : j.at("steps")) s.steps.push_back(vec_from(x));
    s.targets = j.at("targets").get<std::vector<double>>();
    return s;
}

nlohmann::json pipeline_to_json(const seqdata::FeaturePipeline& p) {
    nlohmann::json j;
    j["econ_names"] = p.econ_names;
    j["layout"] = {{"econ_count", p.layout.econ_count}, {"der", p.layout.der}, {"ev", p.layout.ev}};
    j["step_stats"] = stats_json(p.step_stats);
    if (p.layout.econ_count > 0) {
        j["econ_stats"] = stats_json(p.econ_stats);
        const auto& c = p.pca.components;
        std::vector<double> rows;
        for (Eigen::Index r = 0; r < c.rows(); ++r) {
            for (Eigen::Index col = 0; col < c.cols(); ++col) rows.push_back(c(r, col));
        }
        j["pca"] = {{"column_means", vec_json(p.pca.column_means)},
                    {"components", {{"shape", {c.rows(), c.cols()}}, {"values", rows}}},
                    {"eigenvalues", vec_json(p.pca.eigenvalues)},
                    {"selected_count", p.pca.selected_count}};
    }
    return j;
}

seqdata::FeaturePipeline pipeline_from_json(const nlohmann::json& j) {
    seqdata::FeaturePipeline p;
    p.econ_names = j.at("econ_names").get<std::vector<std::string>>();
    const auto& l = j.at("layout");
    p.layout.econ_count = l.at("econ_count").get<std::size_t>();
    p.layout.der = l.at("der").get<bool>();
    p.layout.ev = l.at("ev").get<bool>();
    p.step_stats = stats_from(j.at("step_stats"));
    if (p.layout.econ_count > 0) {
        p.econ_stats = stats_from(j.at("econ_stats"));
        const auto& pca = j.at("pca");
        p.pca.column_means = vec_from(pca.at("column_means"));
        const auto shape = pca.at("components").at("shape").get<std::vector<Eigen::Index>>();
        const auto values = pca.at("components").at("values").get<std::vector<double>>();
        if (shape.size() != 2 || static_cast<std::size_t>(shape[0] * shape[1]) != values.size()) {
            throw IoError("PCA component matrix shape does not match its values");
        }
        p.pca.components.resize(shape[0], shape[1]);
        for (Eigen::Index r = 0; r < shape[0]; ++r) {
            for (Eigen::Index c = 0; c < shape[1]; ++c) {
                p.pca.components(r, c) = values[static_cast<std::size_t>(r * shape[1] + c)];
            }
        }
        p.pca.eigenvalues = vec_from(pca.at("eigenvalues"));
        p.pca.selected_count = pca.at("selected_count").get<int>();
    }
    return p;
}

nlohmann::json dataset_to_json(const seqdata::EngineeredDataset& ds) {
    nlohmann::json j;
    j["format"] = "ltlf-dataset";
    j["version"] = 1;
    j["season"] = to_string(ds.season);
    j["n_steps"] = ds.n_steps;
    j["split"] = {{"ratio", ds.split_ratio}, {"seed", ds.split_seed}};
    j["virtual_feeders"] = ds.virtual_feeders;
    j["virtual_groups"] = ds.virtual_groups;
    j["pipeline"] = pipeline_to_json(ds.pipeline);
    nlohmann::json train = nlohmann::json::array();
    for (const auto& s : ds.train) train.push_back(sample_to_json(s));
    nlohmann::json test = nlohmann::json::array();
    for (const auto& s : ds.test) test.push_back(sample_to_json(s));
    j["train"] = std::move(train);
    j["test"] = std::move(test);
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [id, years] : ds.histories) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [year, peak] : years) rows.push_back({year, peak});
        hist[id] = std::move(rows);
    }
    j["histories"] = std::move(hist);
    j["skipped"] = ds.skipped;
    return j;
}

seqdata::EngineeredDataset dataset_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "ltlf-dataset") throw IoError("not an engineered dataset document");
    seqdata::EngineeredDataset ds;
    ds.season = parse_season(j.at("season").get<std::string>());
    ds.n_steps = j.at("n_steps").get<int>();
    ds.split_ratio = j.at("split").at("ratio").get<double>();
    ds.split_seed = j.at("split").at("seed").get<std::uint64_t>();
    ds.virtual_feeders = j.at("virtual_feeders").get<bool>();
    ds.virtual_groups = j.at("virtual_groups").get<std::vector<std::vector<std::string>>>();
    ds.pipeline = pipeline_from_json(j.at("pipeline"));
    for (const auto& s : j.at("train")) ds.train.push_back(sample_from_json(s));
    for (const auto& s : j.at("test")) ds.test.push_back(sample_from_json(s));
    for (const auto& [id, rows] : j.at("histories").items()) {
        for (const auto& row : rows) ds.histories[id][row.at(0).get<int>()] = row.at(1).get<double>();
    }
    ds.skipped = j.value("skipped", std::vector<std::string>{});
    return ds;
}

}  // namespace ltlf::io
