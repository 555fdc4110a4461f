#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "qrb/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitModelInvalid = 2;
constexpr int kExitConfigParse = 3;
constexpr int kExitNumeric = 4;

struct CliError {
    int code;
    std::string message;
};

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw qrb::Error("cannot create output directory: " + dir);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

int run_analyze(const std::string& config_path, const std::string& out_override) {
    const qrb::ExperimentConfig cfg = qrb::load_config(config_path);
    const std::string out = out_override.empty() ? cfg.outputs : out_override;
    ensure_dir(out);

    const auto& group = qrb::CliffordGroup::instance();
    const auto noisy = qrb::noisy_gateset(group, cfg.noise);

    qrb::SpectralReport spec = qrb::spectral_report(group.gates(), noisy);
    const qrb::FidelityReport fid = qrb::gateset_report(group.gates(), noisy);

    // The rank-1 geometry applies whenever both sandwich channels are unital.
    const qrb::Superop* L = nullptr;
    const qrb::Superop* R = nullptr;
    qrb::Superop Lp = qrb::Superop::identity(), Rp = qrb::Superop::identity();
    if (const auto* lr = std::get_if<qrb::GateIndependentLR>(&cfg.noise)) {
        Lp = lr->L;
        Rp = lr->R;
        L = &Lp;
        R = &Rp;
    } else if (const auto* plr = std::get_if<qrb::PauliLR>(&cfg.noise)) {
        Lp = qrb::pauli_channel(plr->l);
        Rp = qrb::pauli_channel(plr->s);
        L = &Lp;
        R = &Rp;
    }
    if (L && R && L->is_unital() && R->is_unital()) {
        const qrb::SpectralReport geo = qrb::lgr_geometry(*L, *R);
        spec.alpha = geo.alpha;
        spec.beta = geo.beta;
        spec.x1 = geo.x1;
        spec.x2 = geo.x2;
        spec.beta_flagged = geo.beta_flagged;
    }

    json report;
    report["spectral"] = qrb::to_json(spec);
    report["fidelity"] = qrb::to_json(fid);
    if (spec.r > 1e-15) report["epsilon_over_r"] = spec.epsilon / spec.r;

    std::vector<std::string> notes;
    if (std::abs(spec.p - spec.q) < 1e-12)
        notes.push_back("p == q for this model");
    else if (spec.q < spec.p)
        notes.push_back("q < p: RB decay rate exceeds the fidelity parameter");
    else
        notes.push_back("q > p: fidelity parameter exceeds the RB decay rate");
    if (spec.r < 1e-9 && spec.epsilon > 1e-6)
        notes.push_back("WARNING: r = 0 while epsilon > 0; RB sees a perfect gate set");

    for (const auto& name : cfg.analyses) {
        if (name == "bounds" && spec.alpha) {
            const auto b = qrb::infidelity_bound(*spec.alpha, spec.r, 2);
            json jb{{"general", b.general}, {"satisfied", spec.epsilon >= b.general - 1e-10}};
            if (b.qubit) jb["qubit"] = *b.qubit;
            report["bounds"] = jb;
        } else if (name == "perturbative") {
            if (!std::holds_alternative<qrb::PerGateUnitary>(cfg.noise) &&
                !std::holds_alternative<qrb::ProctorPrimitive>(cfg.noise))
                throw qrb::ConfigParseError(
                    "analysis \"perturbative\" needs a per_gate_unitary or proctor model");
            report["perturbative"] = qrb::to_json(qrb::perturb_series(cfg.noise));
        }
    }
    report["notes"] = notes;

    qrb::write_text(join_path(out, "report.json"), report.dump(2) + "\n");
    for (const auto& n : notes) std::cout << "note: " << n << "\n";
    std::cout << "p = " << spec.p << ", q = " << spec.q << ", r = " << spec.r
              << ", epsilon = " << spec.epsilon << "\n";
    std::cout << "wrote " << join_path(out, "report.json") << "\n";
    return 0;
}

int run_sweep_fig1(int grid, const std::string& out) {
    ensure_dir(out);
    const auto rows = qrb::sweep_fig1(grid);
    qrb::write_text(join_path(out, "fig1.csv"), qrb::csv_fig1_bounds(rows));
    qrb::write_text(join_path(out, "fig1_sample.csv"), qrb::csv_fig1(rows));
    std::cout << "wrote " << join_path(out, "fig1.csv") << " (" << rows.size() << " rows)\n";
    return 0;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int run_proctor_scan(const std::vector<double>& thetas, const std::string& out,
                     std::uint64_t seed) {
    if (thetas.empty()) throw qrb::ConfigParseError("proctor-scan: no theta values given");
    for (double t : thetas)
        if (t <= 0.0 || t > 0.3)
            throw qrb::ConfigParseError("proctor-scan: theta values must lie in (0, 0.3]");
    ensure_dir(out);

    // Falsifiable gate on the decomposition table before anything else.
    qrb::proctor_decomposition_gate(qrb::proctor_model(0.0));

    const auto& group = qrb::CliffordGroup::instance();
    std::vector<qrb::ProctorScanRow> rows;
    std::vector<double> eps, rsp;
    for (double theta : thetas) {
        const qrb::NoiseModel model = qrb::proctor_model(theta);
        const auto noisy = qrb::noisy_gateset(group, model);
        const auto fid = qrb::gateset_report(group.gates(), noisy);
        const auto M = qrb::build_M(group.gates(), noisy);
        const double p = qrb::decay_rate(M).p;

        qrb::RBConfig rb;
        rb.lengths = {1, 2, 3, 5, 8, 12, 18, 27, 40, 60, 85, 100};
        rb.sequences_per_length = 150;
        rb.seed = qrb::substream(seed, std::uint64_t(rows.size()), 0);
        const qrb::RBRun run = qrb::run_rb(rb, group, noisy);

        qrb::ProctorScanRow row;
        row.theta = theta;
        row.epsilon = fid.epsilon;
        row.r_spectral = qrb::rb_number(p, 2);
        row.r_fitted = qrb::rb_number(run.fit.p, 2);
        rows.push_back(row);
        eps.push_back(row.epsilon);
        rsp.push_back(row.r_spectral);
    }
    qrb::write_text(join_path(out, "proctor_scan.csv"), qrb::csv_proctor(rows));
    if (thetas.size() >= 2) {
        std::cout << "log-log slope epsilon: " << loglog_slope(thetas, eps)
                  << " (expect 2), spectral r: " << loglog_slope(thetas, rsp)
                  << " (expect 4)\n";
    }
    std::cout << "wrote " << join_path(out, "proctor_scan.csv") << "\n";
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_override,
                 std::optional<std::uint64_t> seed_override) {
    const qrb::ExperimentConfig cfg = qrb::load_config(config_path);
    if (!cfg.rb) throw qrb::ConfigParseError("simulate: config has no \"rb\" section");
    const std::string out = out_override.empty() ? cfg.outputs : out_override;
    ensure_dir(out);

    qrb::RBConfig rb = *cfg.rb;
    if (seed_override) rb.seed = *seed_override;
    const auto& group = qrb::CliffordGroup::instance();
    const auto noisy = qrb::noisy_gateset(group, cfg.noise);
    const qrb::RBRun run = qrb::run_rb(rb, group, noisy);
    const auto M = qrb::build_M(group.gates(), noisy);
    const auto val = qrb::validate_against_spectrum(run, M);

    json j = qrb::to_json(run);
    j["validation"] = {{"p_fit", val.p_fit},
                       {"p_spectral", val.p_spectral},
                       {"sigma_p", val.sigma_p},
                       {"tolerance", val.tolerance},
                       {"ok", val.ok}};
    qrb::write_text(join_path(out, "rbrun.json"), j.dump(2) + "\n");
    qrb::write_text(join_path(out, "rbrun.csv"), qrb::csv_rb(run));
    std::cout << "fitted p = " << run.fit.p << " (spectral " << val.p_spectral << ")"
              << (run.fit_diverged ? " [fit diverged]" : "") << "\n";
    std::cout << "wrote " << join_path(out, "rbrun.json") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized-benchmarking decay rate vs average gate-set fidelity"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int grid = 101;
    std::vector<double> thetas;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto* analyze = app.add_subcommand("analyze", "spectral + fidelity report for a noise model");
    analyze->add_option("--config", config_path, "experiment config JSON")->required();
    analyze->add_option("--out", out_dir, "output directory (overrides config)");

    auto* sweep = app.add_subcommand("sweep-fig1", "q/alpha band vs beta");
    sweep->add_option("--grid", grid, "number of beta grid points")->check(CLI::Range(2, 1000000));
    sweep->add_option("--out", out_dir, "output directory")->required();

    auto* scan = app.add_subcommand("proctor-scan", "epsilon and r across coherent-noise angles");
    scan->add_option("--theta", thetas, "theta values in (0, 0.3]")->required()->delimiter(',');
    scan->add_option("--out", out_dir, "output directory")->required();
    scan->add_option("--seed", seed, "RB seed");

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo RB protocol run");
    sim->add_option("--config", config_path, "experiment config JSON")->required();
    sim->add_option("--out", out_dir, "output directory (overrides config)");
    sim->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
        seed_set = true;
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(config_path, out_dir);
        if (sweep->parsed()) return run_sweep_fig1(grid, out_dir);
        if (scan->parsed()) return run_proctor_scan(thetas, out_dir, seed);
        if (sim->parsed())
            return run_simulate(config_path, out_dir,
                                seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt);
    } catch (const qrb::ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigParse;
    } catch (const qrb::NotCPTP& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModelInvalid;
    } catch (const qrb::InvalidProbability& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModelInvalid;
    } catch (const qrb::OutOfRange& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModelInvalid;
    } catch (const qrb::ZeroAxis& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModelInvalid;
    } catch (const qrb::ModelTableIncomplete& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModelInvalid;
    } catch (const qrb::DecompositionGateFailed& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModelInvalid;
    } catch (const qrb::NotTracePreserving& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModelInvalid;
    } catch (const qrb::Error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
