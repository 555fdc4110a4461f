#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qrb/channels.hpp"
#include "qrb/io.hpp"

using namespace qrb;

TEST_CASE("pauli_channel against the Kraus oracle") {
    CHECK((pauli_channel({{0, 0, 0}}).mat() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const double lam = 0.11;
    const Superop deph = pauli_channel({{0, 0, lam}});
    CHECK((deph.mat() - oracle::kraus_ptm(oracle::pauli_kraus(0, 0, lam)))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    Eigen::Vector4d want(1, 1 - 2 * lam, 1 - 2 * lam, 1);
    CHECK((deph.mat() - Mat(want.asDiagonal())).cwiseAbs().maxCoeff() < 1e-14);

    const Superop dep = depolarizing(lam);
    CHECK((dep.mat() - oracle::kraus_ptm(oracle::pauli_kraus(lam, lam, lam)))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK((dep.unital_block() - (1 - 4 * lam) * Eigen::Matrix3d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-14);

    CHECK_THROWS_AS(pauli_channel({{0.5, 0.4, 0.2}}), InvalidProbability);
    CHECK_THROWS_AS(pauli_channel({{-0.1, 0, 0}}), InvalidProbability);
}

TEST_CASE("pauli channels commute") {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        Eigen::Vector3d a(rng.uniform() / 3, rng.uniform() / 3, rng.uniform() / 3);
        Eigen::Vector3d b(rng.uniform() / 3, rng.uniform() / 3, rng.uniform() / 3);
        const Superop pa = pauli_channel({a}), pb = pauli_channel({b});
        CHECK((compose(pa, pb).mat() - compose(pb, pa).mat()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("rotation_channel geometry") {
    CHECK((rotation_channel({{0, 0, 1}, 0.0}).mat() - Mat::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    // quarter turn about z maps x->y->-x, z fixed
    const Eigen::Matrix3d u = rotation_channel({{0, 0, 1}, M_PI / 2}).unital_block();
    CHECK((u * Eigen::Vector3d::UnitX() - Eigen::Vector3d::UnitY()).norm() < 1e-14);
    CHECK((u * Eigen::Vector3d::UnitY() + Eigen::Vector3d::UnitX()).norm() < 1e-14);
    CHECK((u * Eigen::Vector3d::UnitZ() - Eigen::Vector3d::UnitZ()).norm() < 1e-14);

    Rng rng(9);
    for (int i = 0; i < 25; ++i) {
        const Eigen::Vector3d ax = oracle::random_axis(rng);
        const double th = 2.0 * M_PI * rng.uniform();
        const Superop r = rotation_channel({ax, th});
        const Eigen::Matrix3d ru = r.unital_block();
        CHECK(std::abs(ru.trace() - (1 + 2 * std::cos(th))) < 1e-12);
        CHECK((ru.transpose() * ru - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(ru.determinant() - 1.0) < 1e-12);
        const Superop rinv = rotation_channel({ax, -th});
        CHECK((compose(r, rinv).mat() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(rotation_channel({{0, 0, 0}, 1.0}), ZeroAxis);
}

TEST_CASE("amplitude_damping") {
    CHECK((amplitude_damping(0.0).mat() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const Superop full = amplitude_damping(1.0);
    CHECK((full.mat() - oracle::kraus_ptm(oracle::amplitude_damping_kraus(1.0)))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK((full.translation() - Eigen::Vector3d(0, 0, 1)).norm() < 1e-14);

    const Superop ad = amplitude_damping(0.1);
    CHECK((ad.mat() - oracle::kraus_ptm(oracle::amplitude_damping_kraus(0.1)))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK(is_cptp(ad));

    CHECK_THROWS_AS(amplitude_damping(-0.1), OutOfRange);
    CHECK_THROWS_AS(amplitude_damping(1.0001), OutOfRange);
}

TEST_CASE("every channel constructor output is CPTP") {
    Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        Eigen::Vector3d l(rng.uniform() / 3, rng.uniform() / 3, rng.uniform() / 3);
        CHECK(is_cptp(pauli_channel({l})));
        CHECK(is_cptp(rotation_channel({oracle::random_axis(rng), 6.28 * rng.uniform()})));
        CHECK(is_cptp(amplitude_damping(rng.uniform())));
    }
}

TEST_CASE("noisy_gateset: identity LR model reproduces the ideal set") {
    const auto& g = CliffordGroup::instance();
    const auto out = noisy_gateset(g, GateIndependentLR{Superop::identity(), Superop::identity()});
    REQUIRE(out.size() == 24);
    for (int k = 0; k < 24; ++k)
        CHECK((out[std::size_t(k)].mat() - g.gate(k).mat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("noisy_gateset: PauliLR equals GateIndependentLR of pauli channels") {
    const auto& g = CliffordGroup::instance();
    const PauliParams l{{0.02, 0.01, 0.04}}, s{{0.03, 0.0, 0.01}};
    const auto a = noisy_gateset(g, PauliLR{l, s});
    const auto b = noisy_gateset(g, GateIndependentLR{pauli_channel(l), pauli_channel(s)});
    for (int k = 0; k < 24; ++k)
        CHECK((a[std::size_t(k)].mat() - b[std::size_t(k)].mat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("noisy_gateset: custom table validation") {
    const auto& g = CliffordGroup::instance();
    CustomGates bad;
    bad.gates = {Superop::identity()};
    CHECK_THROWS_AS(noisy_gateset(g, NoiseModel(bad)), ModelTableIncomplete);

    Mat stretched = Mat::Identity(4, 4);
    stretched(1, 1) = 1.2;
    CustomGates notcp;
    notcp.gates.assign(24, Superop::identity());
    notcp.gates[3] = Superop(stretched);
    CHECK_THROWS_AS(noisy_gateset(g, NoiseModel(notcp)), NotCPTP);
}

TEST_CASE("effective_right_unitary_angle") {
    const auto& g = CliffordGroup::instance();
    CHECK(effective_right_unitary_angle(g.gate(5), g.gate(5)) == doctest::Approx(0.0));

    const Superop u = rotation_channel({{0, 0, 1}, 0.3});
    CHECK(effective_right_unitary_angle(g.gate(7), compose(g.gate(7), u)) ==
          doctest::Approx(0.3).epsilon(1e-12));

    const Superop lossy = compose(g.gate(7), depolarizing(0.05));
    CHECK_THROWS_AS(effective_right_unitary_angle(g.gate(7), lossy), NotUnitaryResidual);
}

TEST_CASE("proctor word table composes to the indexed gates") {
    const auto& g = CliffordGroup::instance();
    const auto& words = proctor_default_words();
    CHECK(words[0].empty());
    for (int k = 0; k < 24; ++k)
        CHECK(g.index_of(xy_word_ptm(words[std::size_t(k)])) == k);
}

TEST_CASE("shipped word-table asset matches the builtin table") {
    const auto file_words = load_word_table(std::string(QRB_SOURCE_DIR) +
                                            "/data/clifford_xy_words.json");
    CHECK(file_words == proctor_default_words());
}

TEST_CASE("proctor effective angles: construction and mean square") {
    const auto& g = CliffordGroup::instance();
    const double theta = 0.01;
    const auto model = proctor_model(theta);
    const auto noisy = noisy_gateset(g, NoiseModel(model));
    double sum = 0.0;
    for (int k = 0; k < 24; ++k) {
        const double th = effective_right_unitary_angle(g.gate(k), noisy[std::size_t(k)]);
        sum += th * th;
    }
    const double mean_sq = sum / 24.0;
    CHECK(mean_sq == doctest::Approx(1.5 * theta * theta).epsilon(1e-3));
}

TEST_CASE("noisy_gateset: proctor words must compose to their gate") {
    auto model = proctor_model(0.05);
    std::swap(model.words[3], model.words[4]);
    CHECK_THROWS_AS(noisy_gateset(CliffordGroup::instance(), NoiseModel(model)),
                    ModelTableIncomplete);
}
