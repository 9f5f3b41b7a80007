#include "ltlf/io/model_doc.hpp"

#include "ltlf/error.hpp"
#include "ltlf/io/csv.hpp"
#include "ltlf/io/datasets.hpp"

namespace ltlf::io {

namespace {

using seqnet::Matrix;
using seqnet::Vector;

nlohmann::json matrix_json(const Matrix& m) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) values.push_back(m(r, c));
    }
    return {{"shape", {m.rows(), m.cols()}}, {"values", values}};
}

nlohmann::json vector_json(const Vector& v) {
    return {{"shape", {v.size()}}, {"values", std::vector<double>(v.data(), v.data() + v.size())}};
}

Matrix matrix_from(const nlohmann::json& j, const std::string& name) {
    const auto shape = j.at("shape").get<std::vector<Eigen::Index>>();
    const auto values = j.at("values").get<std::vector<double>>();
    if (shape.size() != 2 || static_cast<std::size_t>(shape[0] * shape[1]) != values.size()) {
        throw IoError("block " + name + ": shape does not match values");
    }
    Matrix m(shape[0], shape[1]);
    for (Eigen::Index r = 0; r < shape[0]; ++r) {
        for (Eigen::Index c = 0; c < shape[1]; ++c) m(r, c) = values[static_cast<std::size_t>(r * shape[1] + c)];
    }
    return m;
}

Vector vector_from(const nlohmann::json& j, const std::string& name) {
    const auto shape = j.at("shape").get<std::vector<Eigen::Index>>();
    const auto values = j.at("values").get<std::vector<double>>();
    if (shape.size() != 1 || static_cast<std::size_t>(shape[0]) != values.size()) {
        throw IoError("block " + name + ": shape does not match values");
    }
    return Eigen::Map<const Vector>(values.data(), shape[0]);
}

nlohmann::json dense_json(const seqnet::DenseParams& d) {
    return {{"weight", matrix_json(d.weight)}, {"bias", vector_json(d.bias)},
            {"activation", std::string(seqnet::to_string(d.activation))}};
}

seqnet::DenseParams dense_from(const nlohmann::json& j, const std::string& name) {
    return {matrix_from(j.at("weight"), name + ".weight"), vector_from(j.at("bias"), name + ".bias"),
            seqnet::parse_activation(j.at("activation").get<std::string>())};
}

}  // namespace

nlohmann::json network_to_json(const seqnet::NetworkParams& net) {
    nlohmann::json j;
    std::vector<int> dense_widths;
    for (const auto& d : net.dense_hidden) dense_widths.push_back(d.out_width());
    j["architecture"] = {{"cell_kind", std::string(seqnet::to_string(net.cell_kind))},
                         {"config", std::string(seqnet::to_string(net.config))},
                         {"n_steps", net.n_steps},
                         {"input_width", net.input_width},
                         {"hidden_width", net.hidden_width()},
                         {"dense_widths", dense_widths}};
    nlohmann::json rec;
    if (const auto* l = std::get_if<seqnet::LstmCellParams>(&net.recurrent)) {
        rec = {{"w_forget", matrix_json(l->w_forget)}, {"w_input", matrix_json(l->w_input)},
               {"w_cand", matrix_json(l->w_cand)},     {"w_output", matrix_json(l->w_output)},
               {"b_forget", vector_json(l->b_forget)}, {"b_input", vector_json(l->b_input)},
               {"b_cand", vector_json(l->b_cand)},     {"b_output", vector_json(l->b_output)}};
    } else {
        const auto& g = std::get<seqnet::GruCellParams>(net.recurrent);
        rec = {{"w_reset", matrix_json(g.w_reset)}, {"w_update", matrix_json(g.w_update)},
               {"w_cand", matrix_json(g.w_cand)},   {"b_reset", vector_json(g.b_reset)},
               {"b_update", vector_json(g.b_update)}, {"b_cand", vector_json(g.b_cand)}};
    }
    j["recurrent"] = std::move(rec);
    nlohmann::json dense = nlohmann::json::array();
    for (const auto& d : net.dense_hidden) dense.push_back(dense_json(d));
    j["dense_hidden"] = std::move(dense);
    j["dense_out"] = dense_json(net.dense_out);
    return j;
}

seqnet::NetworkParams network_from_json(const nlohmann::json& j) {
    seqnet::NetworkParams net;
    const auto& a = j.at("architecture");
    net.cell_kind = seqnet::parse_cell_kind(a.at("cell_kind").get<std::string>());
    net.config = seqnet::parse_seq_config(a.at("config").get<std::string>());
    net.n_steps = a.at("n_steps").get<int>();
    net.input_width = a.at("input_width").get<int>();

    const auto& r = j.at("recurrent");
    if (net.cell_kind == seqnet::CellKind::lstm) {
        net.recurrent = seqnet::LstmCellParams{
            matrix_from(r.at("w_forget"), "w_forget"), matrix_from(r.at("w_input"), "w_input"),
            matrix_from(r.at("w_cand"), "w_cand"),     matrix_from(r.at("w_output"), "w_output"),
            vector_from(r.at("b_forget"), "b_forget"), vector_from(r.at("b_input"), "b_input"),
            vector_from(r.at("b_cand"), "b_cand"),     vector_from(r.at("b_output"), "b_output")};
    } else {
        net.recurrent = seqnet::GruCellParams{
            matrix_from(r.at("w_reset"), "w_reset"),   matrix_from(r.at("w_update"), "w_update"),
            matrix_from(r.at("w_cand"), "w_cand"),     vector_from(r.at("b_reset"), "b_reset"),
            vector_from(r.at("b_update"), "b_update"), vector_from(r.at("b_cand"), "b_cand")};
    }
    std::size_t i = 0;
    for (const auto& d : j.at("dense_hidden")) net.dense_hidden.push_back(dense_from(d, "dense_hidden[" + std::to_string(i++) + "]"));
    net.dense_out = dense_from(j.at("dense_out"), "dense_out");
    try {
        net.validate();
    } catch (const ShapeError& e) {
        throw IoError(std::string("model document is inconsistent: ") + e.what());
    }
    if (net.hidden_width() != a.at("hidden_width").get<int>()) throw IoError("hidden_width does not match weights");
    return net;
}

nlohmann::json model_to_json(const ModelDocument& doc) {
    nlohmann::json j;
    j["format"] = "ltlf-model";
    j["version"] = 1;
    j["season"] = to_string(doc.season);
    j["network"] = network_to_json(doc.network);
    j["pipeline"] = pipeline_to_json(doc.pipeline);
    if (doc.training) {
        const auto& t = *doc.training;
        j["training"] = {{"epochs", t.epochs},       {"batch_size", t.batch_size},
                         {"learning_rate", t.learning_rate}, {"seed", t.seed},
                         {"optimizer", std::string(to_string(t.optimizer))}, {"clip_norm", t.clip_norm}};
    }
    return j;
}

ModelDocument model_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "ltlf-model") throw IoError("not a model document");
    ModelDocument doc;
    doc.season = parse_season(j.at("season").get<std::string>());
    doc.network = network_from_json(j.at("network"));
    doc.pipeline = pipeline_from_json(j.at("pipeline"));
    if (j.contains("training")) {
        const auto& t = j["training"];
        TrainHyperparams h;
        h.epochs = t.at("epochs").get<int>();
        h.batch_size = t.at("batch_size").get<int>();
        h.learning_rate = t.at("learning_rate").get<double>();
        h.seed = t.at("seed").get<std::uint64_t>();
        h.optimizer = parse_optimizer(t.at("optimizer").get<std::string>());
        h.clip_norm = t.value("clip_norm", 0.0);
        doc.training = h;
    }
    return doc;
}

void save_model(const std::string& path, const ModelDocument& doc) {
    write_file(path, model_to_json(doc).dump(1) + "\n");
}

ModelDocument load_model(const std::string& path) {
    try {
        return model_from_json(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

}  // namespace ltlf::io
