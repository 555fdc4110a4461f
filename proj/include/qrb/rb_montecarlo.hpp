#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrb/clifford.hpp"
#include "qrb/fitting.hpp"
#include "qrb/rb_analytic.hpp"
#include "qrb/rng.hpp"
#include "qrb/superop.hpp"

namespace qrb {

enum class RBMode {
    Experiment, // every gate noisy, including the inversion gate
    Theory      // first (inversion) gate ideal, matching F_{m+1} = (psi0|M^m|1)
};

struct RBConfig {
    std::vector<int> lengths;            // strictly increasing, m >= 1
    int sequences_per_length = 100;      // K
    std::optional<int> shots;            // nullopt = exact survival probabilities
    Eigen::Vector3d psi0{0, 0, 1};       // Bloch vector of the fiducial state
    std::uint64_t seed = 0;
    RBMode mode = RBMode::Experiment;
    bool weighted_fit = false;
    bool default_grid = false;           // set when lengths came from defaults
};

/// lengths 1..100 (geometric-ish), K = 100; flagged as defaults in metadata.
RBConfig default_rb_config(std::uint64_t seed = 0);

struct LengthStats {
    int m;
    double mean;
    double stderr_;
    bool enumerated; // all 24^m sequences evaluated exactly
};

struct RBRun {
    std::vector<LengthStats> per_length;
    ExpFit fit;
    bool fit_diverged = false; // residual_rms > 0.1 (reported, not thrown)
    RBConfig config;
};

/// m+1 gate indices in application order; entry 0 is the inversion gate.
std::vector<int> sample_sequence(int m, Rng& rng, const CliffordGroup& group);

/// tr(psi0 * S(psi0)) for the composed noisy sequence.
double survival(const std::vector<int>& seq, const std::vector<Superop>& noisy,
                const Eigen::Vector3d& psi0);

RBRun run_rb(const RBConfig& config, const CliffordGroup& group,
             const std::vector<Superop>& noisy);

struct SpectrumValidation {
    double p_fit, p_spectral, sigma_p, tolerance;
    bool ok;
};

/// |fitted p - spectral p| < max(3 sigma, 1e-3).
SpectrumValidation validate_against_spectrum(const RBRun& run, const MOperator& M);

} // namespace qrb
