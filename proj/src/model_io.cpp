#include "prae/model_io.hpp"

#include <fstream>
#include <json.hpp>

namespace prae {

namespace {

using nlohmann::json;

json layer_to_json(const DenseLayer& l) {
    json j;
    j["activation"] = activation_name(l.activation);
    j["leaky_slope"] = l.leaky_slope;
    j["in"] = l.in_width();
    j["out"] = l.out_width();
    j["w"] = l.w.a; // row-major, out×in
    j["b"] = l.b;
    return j;
}

DenseLayer layer_from_json(const json& j) {
    DenseLayer l;
    l.activation = activation_from_name(j.at("activation").get<std::string>());
    l.leaky_slope = j.at("leaky_slope").get<double>();
    l.w.rows = j.at("out").get<int>();
    l.w.cols = j.at("in").get<int>();
    l.w.a = j.at("w").get<std::vector<double>>();
    l.b = j.at("b").get<std::vector<double>>();
    require_shape(l.w.a.size() == static_cast<std::size_t>(l.w.rows) * l.w.cols,
                  "model file: weight array size mismatch");
    require_shape(l.b.size() == static_cast<std::size_t>(l.w.rows), "model file: bias size mismatch");
    return l;
}

json config_to_json(const PraeConfig& c) {
    json j;
    j["variant"] = variant_name(c.variant);
    j["lambda"] = c.lambda;
    j["epochs"] = c.epochs;
    j["batch_size"] = c.batch_size;
    j["learning_rate"] = c.learning_rate;
    j["sigma"] = c.sigma;
    j["hidden_widths"] = c.hidden_widths;
    j["latent_dim"] = c.latent_dim;
    j["normalize_recon"] = c.normalize_recon;
    j["seed"] = c.seed;
    j["activation"] = activation_name(c.activation);
    j["leaky_slope"] = c.leaky_slope;
    j["mu_init"] = c.mu_init;
    return j;
}

PraeConfig config_from_json(const json& j) {
    PraeConfig c;
    c.variant = variant_from_name(j.at("variant").get<std::string>());
    c.lambda = j.at("lambda").get<double>();
    c.epochs = j.at("epochs").get<int>();
    c.batch_size = j.at("batch_size").get<int>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.sigma = j.at("sigma").get<double>();
    c.hidden_widths = j.at("hidden_widths").get<std::vector<int>>();
    c.latent_dim = j.at("latent_dim").get<int>();
    c.normalize_recon = j.at("normalize_recon").get<bool>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.activation = activation_from_name(j.at("activation").get<std::string>());
    c.leaky_slope = j.at("leaky_slope").get<double>();
    c.mu_init = j.at("mu_init").get<double>();
    return c;
}

json model_json(const ModelFile& file) {
    const PraeModel& m = file.model;
    json j;
    j["format_version"] = 1;
    j["config"] = config_to_json(m.config);
    json net;
    net["latent_dim"] = m.net.latent_dim;
    net["encoder"] = json::array();
    for (const DenseLayer& l : m.net.encoder) net["encoder"].push_back(layer_to_json(l));
    net["decoder"] = json::array();
    for (const DenseLayer& l : m.net.decoder) net["decoder"].push_back(layer_to_json(l));
    j["net"] = net;
    j["gates"] = {{"mu", m.gates.mu}, {"sigma", m.gates.sigma}};
    j["plain_ae"] = m.plain_ae;
    if (file.standardize) {
        j["standardize"] = {{"mean", file.standardize->mean}, {"stddev", file.standardize->stddev}};
    }
    return j;
}

} // namespace

std::string model_to_json(const ModelFile& file) { return model_json(file).dump(2) + "\n"; }

void save_model(const ModelFile& file, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << model_to_json(file);
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j = json::parse(in);
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error(path + ": unsupported model format version");

    ModelFile file;
    PraeModel& m = file.model;
    m.config = config_from_json(j.at("config"));
    const json& net = j.at("net");
    m.net.latent_dim = net.at("latent_dim").get<int>();
    for (const json& l : net.at("encoder")) m.net.encoder.push_back(layer_from_json(l));
    for (const json& l : net.at("decoder")) m.net.decoder.push_back(layer_from_json(l));
    m.gates.mu = j.at("gates").at("mu").get<std::vector<double>>();
    m.gates.sigma = j.at("gates").at("sigma").get<double>();
    m.plain_ae = j.at("plain_ae").get<bool>();
    if (j.contains("standardize")) {
        StandardizeParams p;
        p.mean = j.at("standardize").at("mean").get<std::vector<double>>();
        p.stddev = j.at("standardize").at("stddev").get<std::vector<double>>();
        file.standardize = std::move(p);
    }
    return file;
}

std::string eval_report_to_json(const EvalReport& report) {
    json j;
    j["auc"] = report.auc;
    j["max_f1"] = report.max_f1;
    j["best_threshold"] = report.best_threshold;
    j["precision"] = report.precision;
    j["recall"] = report.recall;
    if (report.subspace_angle_rad) j["subspace_angle_rad"] = *report.subspace_angle_rad;
    if (report.subspace_log_angle) j["subspace_log_angle"] = *report.subspace_log_angle;
    if (report.val_mse) j["val_mse"] = *report.val_mse;
    return j.dump(2) + "\n";
}

std::string config_hash(const PraeConfig& cfg) {
    std::string dump = config_to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

void save_run_record(const RunRecord& record, const std::string& path) {
    json j;
    j["seed"] = record.seed;
    j["config_hash"] = record.cfg_hash;
    j["wall_clock_sec"] = record.wall_clock_sec;
    if (record.metrics) j["metrics"] = json::parse(eval_report_to_json(*record.metrics));
    json log = json::array();
    for (const TrainLogRow& row : record.training_log)
        log.push_back({{"epoch", row.epoch},
                       {"loss", row.loss},
                       {"mean_gate", row.mean_gate},
                       {"open_count", row.open_count}});
    j["training_log"] = log;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace prae
