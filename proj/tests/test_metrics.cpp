#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qrb/channels.hpp"
#include "qrb/clifford.hpp"
#include "qrb/metrics.hpp"

using namespace qrb;

TEST_CASE("twirl_analytic basics") {
    const Superop tid = twirl_analytic(Superop::identity());
    CHECK((tid.mat() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

    const double lam = 0.06;
    const Superop t = twirl_analytic(depolarizing(lam));
    CHECK(t(0, 0) == doctest::Approx(1.0)); // t(E) = 1 for TP maps
    CHECK(t(1, 1) == doctest::Approx(1 - 4 * lam).epsilon(1e-14));

    // TP inputs always give t = 1
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        const Superop e = oracle::random_cptp(rng);
        CHECK(twirl_analytic(e)(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("clifford twirl equals the analytic unitary twirl (2-design)") {
    Rng rng(40);
    for (int i = 0; i < 100; ++i) {
        const Superop e = oracle::random_cptp(rng, 1 + int(rng.uniform_below(4)));
        const Superop a = clifford_twirl(e);
        const Superop b = twirl_analytic(e);
        CHECK((a.mat() - b.mat()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("gate_q") {
    const auto& g = CliffordGroup::instance();
    CHECK(gate_q(g.gate(3), g.gate(3)) == doctest::Approx(1.0));

    Rng rng(4);
    for (int i = 0; i < 10; ++i) {
        const double th = rng.uniform() * 3.0;
        const Superop u = rotation_channel({oracle::random_axis(rng), th});
        const int k = int(rng.uniform_below(24));
        CHECK(gate_q(g.gate(k), compose(g.gate(k), u)) ==
              doctest::Approx((1 + 2 * std::cos(th)) / 3.0).epsilon(1e-12));
    }

    const double lam = 0.04;
    CHECK(gate_q(g.gate(2), compose(g.gate(2), depolarizing(lam))) ==
          doctest::Approx(1 - 4 * lam).epsilon(1e-12));
}

TEST_CASE("gate_q range for CPTP residues") {
    Rng rng(44);
    const auto& g = CliffordGroup::instance();
    for (int i = 0; i < 50; ++i) {
        const Superop noise = oracle::random_cptp(rng);
        const int k = int(rng.uniform_below(24));
        const double q = gate_q(g.gate(k), compose(g.gate(k), noise));
        CHECK(q >= -1.0 / 3.0 - 1e-12);
        CHECK(q <= 1.0 + 1e-12);
    }
}

TEST_CASE("gateset_report") {
    const auto& g = CliffordGroup::instance();
    const auto ideal = gateset_report(g.gates(), g.gates());
    CHECK(ideal.q_avg == doctest::Approx(1.0));
    CHECK(ideal.epsilon == doctest::Approx(0.0));

    // per-gate unitary angles: q = (1/3)(1 + 2 <cos theta_k>)
    Rng rng(8);
    PerGateUnitary model;
    model.theta = 1.0;
    double mean_cos = 0.0;
    for (int k = 0; k < 24; ++k) {
        model.axes[std::size_t(k)] = oracle::random_axis(rng);
        model.scale[std::size_t(k)] = 0.5 * rng.uniform();
        mean_cos += std::cos(model.scale[std::size_t(k)]);
    }
    mean_cos /= 24.0;
    const auto noisy = noisy_gateset(g, NoiseModel(model));
    const auto rep = gateset_report(g.gates(), noisy);
    CHECK(rep.q_avg == doctest::Approx((1 + 2 * mean_cos) / 3.0).epsilon(1e-12));
    CHECK(rep.F_avg == doctest::Approx((rep.q_avg + 1) / 2).epsilon(1e-14));
    CHECK(rep.epsilon == doctest::Approx(1 - rep.F_avg).epsilon(1e-14));
    double mean_q = 0.0;
    for (double q : rep.q_per_gate) mean_q += q;
    CHECK(rep.q_avg == doctest::Approx(mean_q / 24.0).epsilon(1e-14));

    // Proctor at theta = 0.05: epsilon = theta^2/4 within 2%
    const double theta = 0.05;
    const auto pn = noisy_gateset(g, NoiseModel(proctor_model(theta)));
    const auto prep = gateset_report(g.gates(), pn);
    CHECK(prep.epsilon == doctest::Approx(theta * theta / 4.0).epsilon(0.02));

    CHECK_THROWS_AS(gateset_report(g.gates(), {g.gate(0)}), LengthMismatch);
}

TEST_CASE("left and right residues give the same gate-set q") {
    const auto& g = CliffordGroup::instance();
    Rng rng(10);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Superop> noisy;
        for (int k = 0; k < 24; ++k)
            noisy.push_back(compose(g.gate(k), oracle::random_cptp(rng)));
        double q_right = 0.0, q_left = 0.0;
        for (int k = 0; k < 24; ++k) {
            q_right += compose(adjoint(g.gate(k)), noisy[std::size_t(k)]).unital_block().trace();
            q_left += compose(noisy[std::size_t(k)], adjoint(g.gate(k))).unital_block().trace();
        }
        CHECK(q_right / 72.0 == doctest::Approx(q_left / 72.0).epsilon(1e-12));
    }
}

TEST_CASE("haar_fidelity_mc") {
    const auto& g = CliffordGroup::instance();

    // noiseless: every sample is exactly 1
    const auto clean = haar_fidelity_mc(g.gate(4), g.gate(4), 1000, 99);
    CHECK(clean.mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(clean.stderr_ < 1e-12);

    // dephasing right noise matches [(d-1) q + 1]/d within 4 sigma
    const double lam = 0.1;
    const Superop gt = compose(g.gate(4), pauli_channel({{0, 0, lam}}));
    const auto est = haar_fidelity_mc(g.gate(4), gt, 100000, 1234);
    const double want = (gate_q(g.gate(4), gt) + 1.0) / 2.0;
    CHECK(std::abs(est.mean - want) < 4.0 * est.stderr_);

    // rotation(z, 0.2) cross-checked against the closed form
    const Superop rt = compose(g.gate(2), rotation_channel({{0, 0, 1}, 0.2}));
    const auto est2 = haar_fidelity_mc(g.gate(2), rt, 100000, 4321);
    const double want2 = (1.0 + (1 + 2 * std::cos(0.2)) / 3.0) / 2.0;
    CHECK(std::abs(est2.mean - want2) < 4.0 * est2.stderr_);

    CHECK_THROWS_AS(haar_fidelity_mc(g.gate(0), g.gate(0), 50, 1), Error);
}

TEST_CASE("haar MC converges at the 1/sqrt(n) rate") {
    const auto& g = CliffordGroup::instance();
    const Superop gt = compose(g.gate(1), amplitude_damping(0.2));
    const auto small = haar_fidelity_mc(g.gate(1), gt, 20000, 7);
    const auto big = haar_fidelity_mc(g.gate(1), gt, 80000, 8);
    const double ratio = big.stderr_ / small.stderr_;
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.65);
    // deterministic given the seed
    const auto again = haar_fidelity_mc(g.gate(1), gt, 20000, 7);
    CHECK(again.mean == small.mean);
    CHECK(again.stderr_ == small.stderr_);
}

TEST_CASE("rb_number") {
    CHECK(rb_number(1.0, 2) == 0.0);
    CHECK(rb_number(0.98, 2) == doctest::Approx(0.01).epsilon(1e-14));
    const double lam = 0.03;
    CHECK(rb_number(1 - 4 * lam, 2) == doctest::Approx(2 * lam).epsilon(1e-14));
}
