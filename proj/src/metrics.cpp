#include "qrb/metrics.hpp"

#include <cmath>

#include "qrb/rng.hpp"

namespace qrb {

Superop twirl_analytic(const Superop& E) {
    const double t = E(0, 0); // (1/d) tr(E(1)) in the 1-basis
    const double q = E.unital_block().trace() / double(E.traceless_dim());
    return Superop(t * b0_ptm() + std::sqrt(double(E.traceless_dim())) * q * b1_ptm());
}

double gate_q(const Superop& G, const Superop& Gt) {
    if (G.dim() != Gt.dim()) throw DimensionMismatch("gate_q: dimension mismatch");
    return compose(adjoint(G), Gt).unital_block().trace() / double(G.traceless_dim());
}

FidelityReport gateset_report(const std::vector<Superop>& cliffords,
                              const std::vector<Superop>& noisy) {
    if (cliffords.size() != noisy.size())
        throw LengthMismatch("gateset_report: list lengths differ");
    FidelityReport rep;
    rep.d = 2;
    rep.q_per_gate.reserve(cliffords.size());
    for (std::size_t k = 0; k < cliffords.size(); ++k)
        rep.q_per_gate.push_back(gate_q(cliffords[k], noisy[k]));
    double sum = 0.0;
    for (double q : rep.q_per_gate) sum += q;
    rep.q_avg = sum / double(rep.q_per_gate.size());
    rep.F_avg = ((rep.d - 1) * rep.q_avg + 1.0) / rep.d;
    rep.epsilon = 1.0 - rep.F_avg;
    return rep;
}

McEstimate haar_fidelity_mc(const Superop& G, const Superop& Gt, long n_samples,
                            std::uint64_t seed) {
    if (n_samples < 100) throw Error("haar_fidelity_mc: need n_samples >= 100");
    Rng rng(seed);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // Welford accumulation; the naive sum-of-squares form loses the tiny
    // variance of near-constant samples to cancellation.
    double mean = 0.0, m2 = 0.0;
    for (long i = 0; i < n_samples; ++i) {
        // Haar pure state from a normalized complex Gaussian pair.
        const double a_re = rng.normal(), a_im = rng.normal();
        const double b_re = rng.normal(), b_im = rng.normal();
        const double norm2 = a_re * a_re + a_im * a_im + b_re * b_re + b_im * b_im;
        // Bloch vector of |psi><psi|.
        const double rx = 2.0 * (a_re * b_re + a_im * b_im) / norm2;
        const double ry = 2.0 * (a_re * b_im - a_im * b_re) / norm2;
        const double rz = (a_re * a_re + a_im * a_im - b_re * b_re - b_im * b_im) / norm2;
        Eigen::Vector4d s(1.0, rx, ry, rz);
        s *= inv_sqrt2;
        const double f = (G.mat() * s).dot(Gt.mat() * s);
        const double delta = f - mean;
        mean += delta / double(i + 1);
        m2 += delta * (f - mean);
    }
    McEstimate est;
    est.n = n_samples;
    est.mean = mean;
    est.stderr_ = std::sqrt(std::max(0.0, m2 / double(n_samples)) / double(n_samples));
    return est;
}

double rb_number(double p, int d) {
    return double(d - 1) * (1.0 - p) / double(d);
}

} // namespace qrb
