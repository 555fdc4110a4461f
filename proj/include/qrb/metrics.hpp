#pragma once

#include <cstdint>
#include <vector>

#include "qrb/superop.hpp"

namespace qrb {

struct FidelityReport {
    std::vector<double> q_per_gate;
    double q_avg = 0.0;
    double F_avg = 0.0;
    double epsilon = 0.0;
    int d = 2;
};

/// Analytic twirl: t(E) B00 + sqrt(D) q(E) B11 with t(E) = (1/d) tr(E(1)),
/// q(E) = Tr(E_u)/D.
Superop twirl_analytic(const Superop& E);

/// q_G = Tr((G^dagger Gt)_u) / D.
double gate_q(const Superop& G, const Superop& Gt);

FidelityReport gateset_report(const std::vector<Superop>& cliffords,
                              const std::vector<Superop>& noisy);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long n = 0;
};

/// Monte-Carlo average gate fidelity over Haar-random pure states,
/// sampled from normalized 2-component complex Gaussians. Deterministic
/// for a given seed.
McEstimate haar_fidelity_mc(const Superop& G, const Superop& Gt, long n_samples,
                            std::uint64_t seed);

/// r = (d-1)(1-p)/d.
double rb_number(double p, int d);

} // namespace qrb
