#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrb/io.hpp"
#include "qrb/metrics.hpp"

using namespace qrb;
using nlohmann::json;

TEST_CASE("parse_channel variants") {
    CHECK((parse_channel(json{{"kind", "identity"}}).mat() - Mat::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    const auto p = parse_channel(json{{"kind", "pauli"}, {"l", {0.0, 0.0, 0.1}}});
    CHECK((p.mat() - pauli_channel({{0, 0, 0.1}}).mat()).cwiseAbs().maxCoeff() == 0.0);

    const auto d = parse_channel(json{{"kind", "depolarizing"}, {"lambda", 0.05}});
    CHECK((d.mat() - depolarizing(0.05).mat()).cwiseAbs().maxCoeff() == 0.0);

    const auto r =
        parse_channel(json{{"kind", "rotation"}, {"axis", {0, 0, 1}}, {"angle", 0.3}});
    CHECK((r.mat() - rotation_channel({{0, 0, 1}, 0.3}).mat()).cwiseAbs().maxCoeff() == 0.0);

    const auto a = parse_channel(json{{"kind", "amplitude_damping"}, {"gamma", 0.2}});
    CHECK((a.mat() - amplitude_damping(0.2).mat()).cwiseAbs().maxCoeff() == 0.0);

    const auto c = parse_channel(json{
        {"kind", "compose"},
        {"of",
         {json{{"kind", "depolarizing"}, {"lambda", 0.05}},
          json{{"kind", "rotation"}, {"axis", {0, 0, 1}}, {"angle", 0.3}}}}});
    CHECK((c.mat() - compose(rotation_channel({{0, 0, 1}, 0.3}), depolarizing(0.05)).mat())
              .cwiseAbs()
              .maxCoeff() < 1e-15);

    CHECK_THROWS_AS(parse_channel(json{{"kind", "nope"}}), ConfigParseError);
    CHECK_THROWS_AS(parse_channel(json::array()), ConfigParseError);
}

TEST_CASE("parse_noise_model variants") {
    const auto lr = parse_noise_model(json{
        {"type", "gate_independent_lr"},
        {"L", {{"kind", "identity"}}},
        {"R", {{"kind", "depolarizing"}, {"lambda", 0.04}}}});
    CHECK(std::holds_alternative<GateIndependentLR>(lr));

    const auto plr =
        parse_noise_model(json{{"type", "pauli_lr"}, {"l", {0, 0, 0.02}}, {"s", {0, 0, 0.01}}});
    CHECK(std::holds_alternative<PauliLR>(plr));

    const auto pgu = parse_noise_model(json{{"type", "per_gate_unitary"},
                                            {"theta", 0.02},
                                            {"axes", {0, 0, 1}},
                                            {"scale", 1.25}});
    REQUIRE(std::holds_alternative<PerGateUnitary>(pgu));
    CHECK(std::get<PerGateUnitary>(pgu).scale[7] == 1.25);

    const auto pp = parse_noise_model(json{{"type", "proctor"}, {"theta", 0.1}});
    REQUIRE(std::holds_alternative<ProctorPrimitive>(pp));
    CHECK(std::get<ProctorPrimitive>(pp).words == proctor_default_words());

    CHECK_THROWS_AS(parse_noise_model(json{{"type", "unknown"}}), ConfigParseError);
    CHECK_THROWS_AS(
        parse_noise_model(json{{"type", "per_gate_unitary"}, {"theta", 0.1}, {"axes", {0, 0, 1}}, {"scale", {1.0, 2.0}}}),
        ConfigParseError);
}

TEST_CASE("fixture configs parse and build CPTP gate sets") {
    const auto& g = CliffordGroup::instance();
    for (const char* name :
         {"depolarizing.json", "dephasing_lr.json", "proctor.json", "conjugate_unitary.json",
          "per_gate_unitary.json", "custom_ideal.json"}) {
        const auto cfg = load_config(std::string(QRB_SOURCE_DIR) + "/configs/" + name);
        const auto noisy = noisy_gateset(g, cfg.noise);
        CHECK(noisy.size() == 24);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/nope.json"), ConfigParseError);
}

TEST_CASE("report serialization carries the contract fields") {
    FidelityReport fr;
    fr.q_per_gate.assign(24, 0.5);
    fr.q_avg = 0.5;
    fr.F_avg = 0.75;
    fr.epsilon = 0.25;
    const json j = to_json(fr);
    CHECK(j.at("q_per_gate").size() == 24);
    CHECK(j.at("q_avg") == 0.5);
    CHECK(j.at("F_avg") == 0.75);
    CHECK(j.at("epsilon") == 0.25);
    CHECK(j.at("d") == 2);

    SpectralReport sr;
    sr.p = 0.98;
    sr.q = 0.97;
    sr.r = 0.01;
    sr.epsilon = 0.015;
    sr.eigenvalues = {{0.98, 0.0}};
    json js = to_json(sr);
    CHECK_FALSE(js.contains("alpha"));
    sr.alpha = 0.99;
    sr.beta = 0.9899;
    js = to_json(sr);
    CHECK(js.at("alpha") == 0.99);
    CHECK(js.at("eigenvalues")[0][0] == 0.98);

    // serialization is deterministic
    CHECK(to_json(sr).dump() == to_json(sr).dump());
}

TEST_CASE("csv writers") {
    RBRun run;
    run.per_length = {{1, 0.75, 0.0, false}, {2, 0.5, 0.125, false}};
    const std::string rb = csv_rb(run);
    CHECK(rb.rfind("m,mean,stderr\n", 0) == 0);
    CHECK(rb.find("1,0.75,0\n") != std::string::npos);
    CHECK(rb.find("2,0.5,0.125\n") != std::string::npos);

    const auto rows = sweep_fig1(3);
    CHECK(csv_fig1_bounds(rows).rfind("beta,p_over_alpha,q_over_alpha_min,q_over_alpha_max\n",
                                      0) == 0);
    CHECK(csv_fig1(rows).rfind("beta,p_over_alpha,q_lo,q_hi,q_sample\n", 0) == 0);

    const std::vector<ProctorScanRow> prows{{0.1, 0.0025, 1.3e-5, 1.2e-5}};
    CHECK(csv_proctor(prows).rfind("theta,epsilon,r_spectral,r_fitted\n", 0) == 0);
}

TEST_CASE("word table loader validates shape") {
    const auto words = load_word_table(std::string(QRB_SOURCE_DIR) + "/data/clifford_xy_words.json");
    CHECK(words == proctor_default_words());
    CHECK_THROWS_AS(load_word_table("/nonexistent.json"), ConfigParseError);
}
