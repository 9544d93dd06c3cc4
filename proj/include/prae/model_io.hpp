#pragma once

#include "prae/dataset.hpp"
#include "prae/metrics.hpp"
#include "prae/model.hpp"

#include <optional>
#include <string>

namespace prae {

// JSON on disk; doubles serialized with full round-trip precision, so
// load(save(m)) reproduces every numeric exactly and save→load→save is
// byte-identical.
struct ModelFile {
    PraeModel model;
    std::optional<StandardizeParams> standardize;
};

void save_model(const ModelFile& file, const std::string& path);
ModelFile load_model(const std::string& path);

std::string model_to_json(const ModelFile& file);

std::string eval_report_to_json(const EvalReport& report);

std::string config_hash(const PraeConfig& cfg);

struct RunRecord {
    std::uint64_t seed = 0;
    std::string cfg_hash;
    std::optional<EvalReport> metrics;
    std::vector<TrainLogRow> training_log;
    double wall_clock_sec = 0.0;
};

void save_run_record(const RunRecord& record, const std::string& path);

} // namespace prae
