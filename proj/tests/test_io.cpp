#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qswap;

TEST_CASE("matrix json round trip through decimal text") {
    RandomStream rs(801);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = random_ginibre(3, 4, rs);
        const std::string text = matrix_to_json(m).dump();
        const Matrix back = matrix_from_json(Json::parse(text));
        REQUIRE(max_abs(back - m) <= 1e-12);
    }
}

TEST_CASE("matrix json layout is row-major") {
    Matrix m(2, 2);
    m << Cx(1, 5), Cx(2, 6), Cx(3, 7), Cx(4, 8);
    const Json j = matrix_to_json(m);
    REQUIRE(j.at("re") == Json::array({1.0, 2.0, 3.0, 4.0}));
    REQUIRE(j.at("im") == Json::array({5.0, 6.0, 7.0, 8.0}));
}

TEST_CASE("malformed matrix documents are rejected") {
    REQUIRE_THROWS_AS(matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"re":[1,0,0,1]})")),
                      FormatError);
    REQUIRE_THROWS_AS(
        matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"re":[1,0,0],"im":[0,0,0]})")),
        FormatError);
    REQUIRE_THROWS_AS(
        matrix_from_json(Json::parse(R"({"rows":0,"cols":2,"re":[],"im":[]})")),
        FormatError);
}

TEST_CASE("density json validates physics on load") {
    const Json good = density_to_json(maximally_mixed(2));
    REQUIRE(good.at("dim") == 2);
    REQUIRE_NOTHROW(density_from_json(good));

    Json bad = good;
    bad["re"] = std::vector<double>{0.6, 0.0, 0.0, 0.6};
    REQUIRE_THROWS_AS(density_from_json(bad), DensityError);

    Json mismatched = good;
    mismatched["dim"] = 3;
    REQUIRE_THROWS_AS(density_from_json(mismatched), FormatError);
}

TEST_CASE("channel and choi json round trips") {
    const KrausChannel ch = amplitude_damping_channel(0.25);
    const KrausChannel back = kraus_from_json(Json::parse(kraus_to_json(ch).dump()));
    REQUIRE(back.dim == 2);
    REQUIRE(back.kraus_ops.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        REQUIRE(max_abs(back.kraus_ops[i] - ch.kraus_ops[i]) <= 1e-12);
    }

    const ChoiState c = choi_state(ch);
    const Json cj = choi_to_json(c);
    REQUIRE(cj.at("subsystems").at("a") == "kept");
    const ChoiState cback = choi_from_json(Json::parse(cj.dump()));
    REQUIRE(cback.dim == 2);
    REQUIRE(max_abs(cback.state.matrix - c.state.matrix) <= 1e-12);

    Json wrong_dim = cj;
    wrong_dim["dim"] = 3;
    REQUIRE_THROWS_AS(choi_from_json(wrong_dim), FormatError);
}

TEST_CASE("report serialization carries the full record") {
    const ReconstructionReport rep = run_tomography(maximally_mixed(2), 50, 3);
    const Json j = reconstruction_to_json(rep);
    REQUIRE(j.at("schedule").at("probes").size() == 4);
    REQUIRE(j.at("visibilities").size() == 4);
    REQUIRE(j.at("total_shots") == 200);
    REQUIRE_NOTHROW(density_from_json(j.at("state")));

    OptimizerConfig cfg;
    cfg.seed = 802;
    const ExtremalResult res = extremal_eigen(maximally_mixed(2), Extremum::max, cfg);
    const Json ej = extremal_to_json(res);
    REQUIRE(ej.at("which") == "max");
    REQUIRE(ej.at("converged").get<bool>());
    REQUIRE(ej.at("visibility_trace").is_array());
}

TEST_CASE("nan entries are rejected at the format boundary") {
    Json j = matrix_to_json(Matrix::Identity(2, 2));
    // JSON has no literal for NaN; a null smuggled into the array must fail cleanly.
    j["re"][0] = nullptr;
    REQUIRE_THROWS(matrix_from_json(j));
}
