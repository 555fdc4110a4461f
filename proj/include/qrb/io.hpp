#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrb/channels.hpp"
#include "qrb/metrics.hpp"
#include "qrb/rb_analytic.hpp"
#include "qrb/rb_montecarlo.hpp"

namespace qrb {

struct ExperimentConfig {
    NoiseModel noise;
    std::optional<RBConfig> rb;
    std::string outputs = ".";
    std::vector<std::string> analyses; // of {"spectral","montecarlo","perturbative","bounds"}
};

/// Throws ConfigParseError on malformed JSON or schema violations;
/// NotCPTP and friends propagate from model construction.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
NoiseModel parse_noise_model(const nlohmann::json& j);
Superop parse_channel(const nlohmann::json& j);

nlohmann::json to_json(const FidelityReport& r);
nlohmann::json to_json(const SpectralReport& r);
nlohmann::json to_json(const PerturbSeries& s);
nlohmann::json to_json(const RBRun& run);

std::array<std::string, kCliffordCount> load_word_table(const std::string& path);

void write_text(const std::string& path, const std::string& text);
std::string csv_rb(const RBRun& run);                          // m,mean,stderr
std::string csv_fig1(const std::vector<Fig1Row>& rows);        // 5 columns with q_sample
std::string csv_fig1_bounds(const std::vector<Fig1Row>& rows); // 4-column CLI contract
std::string csv_proctor(const std::vector<ProctorScanRow>& rows);

} // namespace qrb
