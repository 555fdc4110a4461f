#include "qrb/rb_montecarlo.hpp"

#include <cmath>

namespace qrb {

namespace {

constexpr long kEnumerationLimit = 14000; // 24^m <= 1.4e4, i.e. m <= 3

Eigen::Vector4d state_vec(const Eigen::Vector3d& bloch) {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s * bloch.x(), s * bloch.y(), s * bloch.z()};
}

double survival_chain(const std::vector<int>& seq, const std::vector<Superop>& noisy,
                      const Superop* first_ideal, const Eigen::Vector3d& psi0) {
    const Eigen::Vector4d s0 = state_vec(psi0);
    Eigen::Vector4d v = s0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Mat& g = (i == 0 && first_ideal) ? first_ideal->mat()
                                               : noisy[std::size_t(seq[i])].mat();
        v = g * v;
    }
    return s0.dot(v);
}

// 24^m, saturating just past the enumeration limit to avoid overflow.
long ipow24(int m) {
    long v = 1;
    for (int i = 0; i < m; ++i) {
        v *= 24;
        if (v > kEnumerationLimit) return kEnumerationLimit + 1;
    }
    return v;
}

} // namespace

RBConfig default_rb_config(std::uint64_t seed) {
    RBConfig c;
    c.lengths = {1, 2, 3, 5, 8, 12, 18, 27, 40, 60, 85, 100};
    c.sequences_per_length = 100;
    c.seed = seed;
    c.default_grid = true;
    return c;
}

std::vector<int> sample_sequence(int m, Rng& rng, const CliffordGroup& group) {
    std::vector<int> seq(std::size_t(m) + 1);
    int composite = 0; // identity
    for (int i = 1; i <= m; ++i) {
        const int g = int(rng.uniform_below(kCliffordCount));
        seq[std::size_t(i)] = g;
        composite = group.compose_idx(g, composite);
    }
    seq[0] = group.inverse(composite);
    return seq;
}

double survival(const std::vector<int>& seq, const std::vector<Superop>& noisy,
                const Eigen::Vector3d& psi0) {
    return survival_chain(seq, noisy, nullptr, psi0);
}

RBRun run_rb(const RBConfig& config, const CliffordGroup& group,
             const std::vector<Superop>& noisy) {
    if (config.lengths.empty() || config.sequences_per_length < 1)
        throw Error("run_rb: invalid config");
    for (std::size_t i = 1; i < config.lengths.size(); ++i)
        if (config.lengths[i] <= config.lengths[i - 1])
            throw Error("run_rb: lengths must be strictly increasing");
    if (config.lengths.front() < 1) throw Error("run_rb: lengths must be >= 1");

    const bool exact = !config.shots.has_value();
    RBRun run;
    run.config = config;

    for (std::size_t li = 0; li < config.lengths.size(); ++li) {
        const int m = config.lengths[li];
        const bool enumerate = exact && ipow24(m) <= kEnumerationLimit;
        double sum = 0.0, sumsq = 0.0;
        long count = 0;

        auto tally = [&](const std::vector<int>& seq, Rng* shot_rng) {
            const Superop* first_ideal =
                config.mode == RBMode::Theory ? &group.gate(seq[0]) : nullptr;
            double f = survival_chain(seq, noisy, first_ideal, config.psi0);
            if (!exact) {
                const double prob = std::clamp(f, 0.0, 1.0);
                const int shots = *config.shots;
                int hits = 0;
                for (int t = 0; t < shots; ++t) hits += shot_rng->uniform() < prob ? 1 : 0;
                f = double(hits) / double(shots);
            }
            sum += f;
            sumsq += f * f;
            ++count;
        };

        if (enumerate) {
            std::vector<int> seq(std::size_t(m) + 1);
            const long total = ipow24(m);
            for (long code = 0; code < total; ++code) {
                long c = code;
                int composite = 0;
                for (int i = 1; i <= m; ++i) {
                    const int g = int(c % 24);
                    c /= 24;
                    seq[std::size_t(i)] = g;
                    composite = group.compose_idx(g, composite);
                }
                seq[0] = group.inverse(composite);
                tally(seq, nullptr);
            }
        } else {
            for (int k = 0; k < config.sequences_per_length; ++k) {
                Rng rng(substream(config.seed, li, std::uint64_t(k)));
                const auto seq = sample_sequence(m, rng, group);
                tally(seq, &rng);
            }
        }

        LengthStats st;
        st.m = m;
        st.enumerated = enumerate;
        st.mean = sum / double(count);
        const double var = std::max(0.0, sumsq / double(count) - st.mean * st.mean);
        st.stderr_ = enumerate ? 0.0 : std::sqrt(var / double(count));
        run.per_length.push_back(st);
    }

    std::vector<double> ms, Fs, ws;
    for (const auto& st : run.per_length) {
        ms.push_back(double(st.m));
        Fs.push_back(st.mean);
        ws.push_back(st.stderr_ > 0 ? 1.0 / (st.stderr_ * st.stderr_) : 1.0);
    }
    run.fit = fit_exponential_decay(ms, Fs, config.weighted_fit ? &ws : nullptr);
    run.fit_diverged = run.fit.residual_rms > 0.1;
    return run;
}

SpectrumValidation validate_against_spectrum(const RBRun& run, const MOperator& M) {
    SpectrumValidation v;
    v.p_fit = run.fit.p;
    v.p_spectral = decay_rate(M).p;
    v.sigma_p = std::sqrt(std::max(0.0, run.fit.cov(1, 1)));
    v.tolerance = std::max(3.0 * v.sigma_p, 1e-3);
    v.ok = std::abs(v.p_fit - v.p_spectral) < v.tolerance;
    return v;
}

} // namespace qrb
