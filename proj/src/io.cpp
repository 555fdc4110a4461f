#include "qrb/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qrb {

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Eigen::Vector3d parse_vec3(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigParseError(std::string("expected a 3-vector for ") + what);
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Mat parse_mat(const json& j, int rows, int cols, const char* what) {
    if (!j.is_array() || int(j.size()) != rows)
        throw ConfigParseError(std::string("expected a ") + std::to_string(rows) + "x" +
                               std::to_string(cols) + " matrix for " + what);
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j[std::size_t(i)];
        if (!row.is_array() || int(row.size()) != cols)
            throw ConfigParseError(std::string("bad matrix row in ") + what);
        for (int c = 0; c < cols; ++c) m(i, c) = row[std::size_t(c)].get<double>();
    }
    return m;
}

json eig_list(const std::vector<std::complex<double>>& evs) {
    json out = json::array();
    for (const auto& l : evs) out.push_back({l.real(), l.imag()});
    return out;
}

} // namespace

Superop parse_channel(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigParseError("channel: missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") return Superop::identity();
    if (kind == "pauli") return pauli_channel({parse_vec3(j.at("l"), "pauli l")});
    if (kind == "depolarizing") return depolarizing(j.at("lambda").get<double>());
    if (kind == "rotation")
        return rotation_channel({parse_vec3(j.at("axis"), "rotation axis"),
                                 j.at("angle").get<double>()});
    if (kind == "amplitude_damping") return amplitude_damping(j.at("gamma").get<double>());
    if (kind == "matrix") return Superop(parse_mat(j.at("ptm"), 4, 4, "channel ptm"));
    if (kind == "compose") {
        Mat acc = Mat::Identity(4, 4);
        for (const auto& item : j.at("of")) acc = parse_channel(item).mat() * acc;
        return Superop(acc);
    }
    throw ConfigParseError("channel: unknown kind \"" + kind + "\"");
}

NoiseModel parse_noise_model(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw ConfigParseError("noise model: missing \"type\"");
    const std::string type = j.at("type").get<std::string>();

    if (type == "gate_independent_lr")
        return GateIndependentLR{parse_channel(j.at("L")), parse_channel(j.at("R"))};

    if (type == "pauli_lr")
        return PauliLR{{parse_vec3(j.at("l"), "l")}, {parse_vec3(j.at("s"), "s")}};

    if (type == "per_gate_unitary") {
        PerGateUnitary m;
        m.theta = j.at("theta").get<double>();
        const auto& axes = j.at("axes");
        if (axes.is_array() && axes.size() == 3 && axes[0].is_number()) {
            m.axes.fill(parse_vec3(axes, "axes"));
        } else {
            if (!axes.is_array() || axes.size() != kCliffordCount)
                throw ConfigParseError("per_gate_unitary: axes must be one 3-vector or 24");
            for (int k = 0; k < kCliffordCount; ++k)
                m.axes[std::size_t(k)] = parse_vec3(axes[std::size_t(k)], "axes[k]");
        }
        const auto& scale = j.at("scale");
        if (scale.is_number()) {
            m.scale.fill(scale.get<double>());
        } else {
            if (!scale.is_array() || scale.size() != kCliffordCount)
                throw ConfigParseError("per_gate_unitary: scale must be a number or 24 numbers");
            for (int k = 0; k < kCliffordCount; ++k)
                m.scale[std::size_t(k)] = scale[std::size_t(k)].get<double>();
        }
        return m;
    }

    if (type == "proctor") {
        ProctorPrimitive m = proctor_model(j.at("theta").get<double>());
        if (j.contains("axis")) m.axis = parse_vec3(j.at("axis"), "axis");
        if (j.contains("decomposition")) {
            const auto& words = j.at("decomposition");
            if (!words.is_array() || words.size() != kCliffordCount)
                throw ConfigParseError("proctor: decomposition must list 24 words");
            for (int k = 0; k < kCliffordCount; ++k)
                m.words[std::size_t(k)] = words[std::size_t(k)].get<std::string>();
        }
        return m;
    }

    if (type == "custom") {
        const auto& gates = j.at("gates");
        if (!gates.is_array() || gates.size() != kCliffordCount)
            throw ConfigParseError("custom: need 24 gate matrices");
        CustomGates m;
        for (const auto& g : gates) m.gates.push_back(Superop(parse_mat(g, 4, 4, "custom gate")));
        return m;
    }

    throw ConfigParseError("noise model: unknown type \"" + type + "\"");
}

ExperimentConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("noise"))
        throw ConfigParseError("config: missing \"noise\"");
    ExperimentConfig cfg{parse_noise_model(j.at("noise")), std::nullopt, ".", {}};

    if (j.contains("rb")) {
        const auto& r = j.at("rb");
        RBConfig rb;
        if (r.contains("lengths")) {
            rb.lengths = r.at("lengths").get<std::vector<int>>();
        } else {
            rb = default_rb_config();
        }
        if (r.contains("sequences_per_length"))
            rb.sequences_per_length = r.at("sequences_per_length").get<int>();
        if (r.contains("shots")) {
            const auto& s = r.at("shots");
            if (s.is_string() && s.get<std::string>() == "exact")
                rb.shots = std::nullopt;
            else if (s.is_number_integer())
                rb.shots = s.get<int>();
            else
                throw ConfigParseError("rb.shots must be an integer or \"exact\"");
        }
        if (r.contains("psi0")) rb.psi0 = parse_vec3(r.at("psi0"), "psi0").normalized();
        if (r.contains("seed")) rb.seed = r.at("seed").get<std::uint64_t>();
        if (r.contains("mode")) {
            const std::string mode = r.at("mode").get<std::string>();
            if (mode == "experiment")
                rb.mode = RBMode::Experiment;
            else if (mode == "theory")
                rb.mode = RBMode::Theory;
            else
                throw ConfigParseError("rb.mode must be \"experiment\" or \"theory\"");
        }
        if (r.contains("weighted_fit")) rb.weighted_fit = r.at("weighted_fit").get<bool>();
        cfg.rb = rb;
    }
    if (j.contains("outputs")) cfg.outputs = j.at("outputs").get<std::string>();
    if (j.contains("analyses")) {
        for (const auto& a : j.at("analyses")) {
            const std::string name = a.get<std::string>();
            if (name != "spectral" && name != "montecarlo" && name != "perturbative" &&
                name != "bounds")
                throw ConfigParseError("config: unknown analysis \"" + name + "\"");
            cfg.analyses.push_back(name);
        }
    } else {
        cfg.analyses = {"spectral"};
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigParseError(std::string("config JSON error: ") + e.what());
    }
    return parse_config(j);
}

nlohmann::json to_json(const FidelityReport& r) {
    return json{{"q_per_gate", r.q_per_gate},
                {"q_avg", r.q_avg},
                {"F_avg", r.F_avg},
                {"epsilon", r.epsilon},
                {"d", r.d}};
}

nlohmann::json to_json(const SpectralReport& r) {
    json j{{"p", r.p},          {"q", r.q},
           {"r", r.r},          {"epsilon", r.epsilon},
           {"eigenvalues", eig_list(r.eigenvalues)},
           {"gap", r.gap},      {"imag_warning", r.imag_warning},
           {"gap_warning", r.gap_warning}};
    if (r.alpha) j["alpha"] = *r.alpha;
    if (r.beta) {
        j["beta"] = *r.beta;
        j["beta_flagged"] = r.beta_flagged;
    }
    if (r.x1) j["x1"] = *r.x1;
    if (r.x2) j["x2"] = *r.x2;
    return j;
}

nlohmann::json to_json(const PerturbSeries& s) {
    json coeffs = json::object();
    for (int n = 1; n <= s.valid_to; ++n)
        coeffs["p" + std::to_string(n)] = s.coeffs[std::size_t(n)];
    return json{{"coeffs", coeffs}, {"valid_to", s.valid_to}, {"brackets", s.brackets}};
}

nlohmann::json to_json(const RBRun& run) {
    json per = json::array();
    for (const auto& st : run.per_length)
        per.push_back({{"m", st.m},
                       {"mean", st.mean},
                       {"stderr", st.stderr_},
                       {"enumerated", st.enumerated}});
    json cov = json::array();
    for (int i = 0; i < 3; ++i)
        cov.push_back({run.fit.cov(i, 0), run.fit.cov(i, 1), run.fit.cov(i, 2)});
    json cfg{{"lengths", run.config.lengths},
             {"sequences_per_length", run.config.sequences_per_length},
             {"psi0", {run.config.psi0.x(), run.config.psi0.y(), run.config.psi0.z()}},
             {"seed", run.config.seed},
             {"mode", run.config.mode == RBMode::Theory ? "theory" : "experiment"},
             {"weighted_fit", run.config.weighted_fit},
             {"default_grid", run.config.default_grid}};
    cfg["shots"] = run.config.shots ? json(*run.config.shots) : json("exact");
    return json{{"per_length", per},
                {"fit", {{"a", run.fit.a}, {"p", run.fit.p}, {"b", run.fit.b}}},
                {"fit_cov", cov},
                {"residual_rms", run.fit.residual_rms},
                {"fit_converged", run.fit.converged},
                {"fit_flat", run.fit.flat},
                {"fit_diverged", run.fit_diverged},
                {"config", cfg}};
}

std::array<std::string, kCliffordCount> load_word_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open word table: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigParseError(std::string("word table JSON error: ") + e.what());
    }
    if (!j.is_array() || j.size() != kCliffordCount)
        throw ConfigParseError("word table must be an array of 24 strings");
    std::array<std::string, kCliffordCount> words;
    for (int k = 0; k < kCliffordCount; ++k) words[std::size_t(k)] = j[std::size_t(k)].get<std::string>();
    return words;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

std::string csv_rb(const RBRun& run) {
    std::ostringstream os;
    os << "m,mean,stderr\n";
    for (const auto& st : run.per_length)
        os << st.m << "," << fmt(st.mean) << "," << fmt(st.stderr_) << "\n";
    return os.str();
}

std::string csv_fig1(const std::vector<Fig1Row>& rows) {
    std::ostringstream os;
    os << "beta,p_over_alpha,q_lo,q_hi,q_sample\n";
    for (const auto& r : rows)
        os << fmt(r.beta) << "," << fmt(r.p_over_alpha) << "," << fmt(r.q_lo) << ","
           << fmt(r.q_hi) << "," << fmt(r.q_sample) << "\n";
    return os.str();
}

std::string csv_fig1_bounds(const std::vector<Fig1Row>& rows) {
    std::ostringstream os;
    os << "beta,p_over_alpha,q_over_alpha_min,q_over_alpha_max\n";
    for (const auto& r : rows)
        os << fmt(r.beta) << "," << fmt(r.p_over_alpha) << "," << fmt(r.q_lo) << ","
           << fmt(r.q_hi) << "\n";
    return os.str();
}

std::string csv_proctor(const std::vector<ProctorScanRow>& rows) {
    std::ostringstream os;
    os << "theta,epsilon,r_spectral,r_fitted\n";
    for (const auto& r : rows)
        os << fmt(r.theta) << "," << fmt(r.epsilon) << "," << fmt(r.r_spectral) << ","
           << fmt(r.r_fitted) << "\n";
    return os.str();
}

} // namespace qrb
