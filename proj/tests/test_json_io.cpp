#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ebr/json_io.hpp"
#include "ebr/random_states.hpp"

using namespace ebr;

TEST_CASE("ket round trip") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Ket k = random_ket(rng, 2 + static_cast<Eigen::Index>(rng.next_u64() % 7));
        const Ket back = ket_from_json(ket_to_json(k));
        CHECK((back.amplitudes() - k.amplitudes()).cwiseAbs().maxCoeff() < 1e-15);
    }
    const json j = ket_to_json(ket_from_amplitudes({Complex(1, 0), Complex(0, 1)}));
    CHECK(j["dim"] == 2);
    CHECK(j["amplitudes"][1][1] == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("density round trip") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityOperator d = random_density(rng, 3, 2);
        const DensityOperator back = density_from_json(density_to_json(d));
        CHECK((back.entries() - d.entries()).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("bloch round trip") {
    BlochVector r;
    r.n_outcomes = 3;
    r.coords.resize(8);
    r.coords << 0.1, -0.2, 0.3, 0.0, 0.25, -0.125, 0.5, 0.0625;
    const BlochVector back = bloch_from_json(bloch_to_json(r));
    CHECK(back.n_outcomes == 3);
    CHECK((back.coords - r.coords).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("malformed payloads carry field diagnostics") {
    CHECK_THROWS_WITH_AS(ket_from_json(json{{"dim", 2}}),
                         doctest::Contains("amplitudes"), ValidationError);
    CHECK_THROWS_AS(ket_from_json(json{{"dim", 3}, {"amplitudes", json::array({1.0})}}),
                    ValidationError);
    CHECK_THROWS_AS(bloch_from_json(json{{"n", 3}, {"coords", json::array({0.0, 0.0})}}),
                    ValidationError);
    CHECK_THROWS_AS(density_from_json(json{{"dim", 1}, {"entries", json::array()}}),
                    ValidationError);
}

TEST_CASE("simplex export shape") {
    std::vector<Ket> basis;
    for (int i = 0; i < 3; ++i) {
        basis.emplace_back(CVector::Unit(3, i));
    }
    const GeneratorBasis gb = build_generators(basis);
    const json j = simplex_to_json(build_simplex(basis, gb));
    CHECK(j["n"] == 3);
    REQUIRE(j["vertices"].size() == 3);
    CHECK(j["vertices"][0].size() == 8);
    CHECK(j["vertices"][2][7].get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("partition wire format") {
    const json spec{{"ambient_dim", 6}, {"index_sets", {{0, 1, 2}, {3, 4}, {5}}}};
    const PartitionProjectors p = partition_from_json(spec);
    CHECK(p.n_blocks() == 3);
    CHECK(p.block_rank(0) == 3);

    const json overlapping{{"ambient_dim", 4}, {"index_sets", {{0, 1}, {1, 2, 3}}}};
    CHECK_THROWS_AS(partition_from_json(overlapping), ValidationError);
}

TEST_CASE("outcome records serialize with 1-based outcomes and provenance") {
    const Ket k = ket_from_amplitudes({Complex(1, 0), Complex(0, 0)});
    OutcomeRecord rec{101, 5, RVector::Constant(2, 0.5), 1, RVector::Constant(2, 0.5),
                      projector(k)};
    const json with_state = outcome_record_to_json(rec, true, "abc123");
    CHECK(with_state["outcome_index"] == 2);
    CHECK(with_state["seed"] == 101);
    CHECK(with_state["rng"] == "splitmix64");
    CHECK(with_state["generator_order"] == "gm1");
    CHECK(with_state["config_hash"] == "abc123");
    CHECK(with_state.contains("collapsed_state"));

    const json without_state = outcome_record_to_json(rec, false, "abc123");
    CHECK_FALSE(without_state.contains("collapsed_state"));
}

TEST_CASE("frequency report formats") {
    FrequencyReport rep;
    rep.n_samples = 4;
    rep.counts = {3, 1};
    rep.empirical.resize(2);
    rep.empirical << 0.75, 0.25;
    rep.expected.resize(2);
    rep.expected << 0.5, 0.5;
    rep.max_sigma_deviation = 1.0;

    const json j = frequency_report_to_json(rep, json{{"seed", 1}}, "ff00");
    CHECK(j["n_samples"] == 4);
    CHECK(j["counts"][0] == 3);
    CHECK(j["config"]["seed"] == 1);

    const std::string csv = frequency_report_to_csv(rep, "ff00");
    CHECK(csv.find("outcome,expected,empirical,sigma\n") != std::string::npos);
    CHECK(csv.find("1,0.5,0.75,1\n") != std::string::npos);
    CHECK(csv.find("# config_hash=ff00") != std::string::npos);
}

TEST_CASE("config hash is stable and order-insensitive") {
    const json a{{"seed", 7}, {"samples", 100}};
    const json b{{"samples", 100}, {"seed", 7}};
    CHECK(config_hash_hex(a) == config_hash_hex(b)); // objects dump sorted
    CHECK(config_hash_hex(a) != config_hash_hex(json{{"seed", 8}, {"samples", 100}}));
    CHECK(config_hash_hex(a).size() == 16);
}
