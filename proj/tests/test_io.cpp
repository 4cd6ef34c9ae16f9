#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracbq/datagen.hpp"
#include "fracbq/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace fracbq;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void dump(const std::string& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("scalar field files survive a bit exact round trip") {
    const SpectralGrid g = make_grid(2, 16, 2.0 * 3.14159265358979323846);
    ScalarField f = make_test_scalar(g, TestFieldKind::RandomBandlimited, 99);
    f.samples[0] = -0.0; // signed zero must survive too
    f.samples[1] = 1.0e-308;

    TempFile tf("io_scalar_roundtrip.fbf1");
    write_fbf1(tf.path, f);
    const ScalarField back = read_scalar_fbf1(tf.path);
    CHECK(back.grid == g);
    CHECK(bitwise_equal(back.samples, f.samples));

    // a rewrite of the re-read field must give identical bytes
    TempFile tf2("io_scalar_roundtrip2.fbf1");
    write_fbf1(tf2.path, back);
    CHECK(slurp(tf.path) == slurp(tf2.path));
}

TEST_CASE("vector field files stack the components after one header") {
    const SpectralGrid g = make_grid(3, 8, 1.75);
    const VectorField v = make_divergence_free_velocity(g, TestFieldKind::MultiMode, 5);
    TempFile tf("io_vector_roundtrip.fbf1");
    write_fbf1(tf.path, v);
    const VectorField back = read_vector_fbf1(tf.path);
    CHECK(back.grid == g);
    for (int c = 0; c < 3; ++c) CHECK(bitwise_equal(back[c].samples, v[c].samples));

    // header bytes: magic, u32 dim, three axis sizes, f64 side
    const std::string bytes = slurp(tf.path);
    CHECK(bytes.size() == 4 + 4 + 3 * 4 + 8 + 3 * 512 * 8);
    CHECK(bytes.compare(0, 4, "FBF1") == 0);
}

TEST_CASE("malformed field files are rejected") {
    const SpectralGrid g = make_grid(2, 8, 1.0);
    const ScalarField f = make_test_scalar(g, TestFieldKind::GaussianBump, 2);
    TempFile tf("io_malformed.fbf1");
    write_fbf1(tf.path, f);
    const std::string good = slurp(tf.path);

    SUBCASE("bad magic") {
        std::string bad = good;
        bad[0] = 'X';
        dump(tf.path, bad);
        CHECK_THROWS_AS(read_scalar_fbf1(tf.path), std::invalid_argument);
    }
    SUBCASE("truncated payload") {
        dump(tf.path, good.substr(0, good.size() - 8));
        CHECK_THROWS_AS(read_scalar_fbf1(tf.path), std::invalid_argument);
    }
    SUBCASE("trailing bytes") {
        dump(tf.path, good + std::string(8, '\0'));
        CHECK_THROWS_AS(read_scalar_fbf1(tf.path), std::invalid_argument);
    }
    SUBCASE("scalar payload read as a vector") {
        CHECK_THROWS_AS(read_vector_fbf1(tf.path), std::invalid_argument);
    }
    SUBCASE("non cubic axis sizes") {
        std::string bad = good;
        bad[8] = 16; // second axis length no longer matches the first
        dump(tf.path, bad);
        CHECK_THROWS_AS(read_scalar_fbf1(tf.path), std::invalid_argument);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_scalar_fbf1("io_does_not_exist.fbf1"), std::runtime_error);
    }
}

TEST_CASE("empty config json keeps every default") {
    const SolverConfig def;
    const SolverConfig cfg = parse_config_json("{}");
    CHECK(cfg.alpha == def.alpha);
    CHECK(cfg.d == def.d);
    CHECK(cfg.n == def.n);
    CHECK(cfg.L == def.L);
    CHECK(cfg.T == def.T);
    CHECK(cfg.nt == def.nt);
    CHECK(cfg.p == def.p);
    CHECK(cfg.gamma == def.gamma);
    CHECK(cfg.delta_force == def.delta_force);
    CHECK(cfg.weight_c == def.weight_c);
    CHECK(cfg.smallness_delta == def.smallness_delta);
    CHECK(cfg.tol == def.tol);
    CHECK(cfg.max_iter == def.max_iter);
    CHECK(cfg.time_grid == def.time_grid);
    CHECK(cfg.temperature_advection_sign == def.temperature_advection_sign);
    CHECK(cfg.enable_buoyancy == def.enable_buoyancy);
    CHECK(cfg.enable_advection == def.enable_advection);
}

TEST_CASE("config serialization round trips every field") {
    SolverConfig cfg;
    cfg.alpha = 1.75;
    cfg.d = 3;
    cfg.n = 48;
    cfg.L = 5.0;
    cfg.T = 0.25;
    cfg.nt = 20;
    cfg.p = 6.5;
    cfg.gamma = 0.4;
    cfg.delta_force = 0.6;
    cfg.weight_c = 8.0;
    cfg.smallness_delta = 0.125;
    cfg.tol = 1e-7;
    cfg.max_iter = 17;
    cfg.time_grid = TimeGridKind::Uniform;
    cfg.temperature_advection_sign = -1.0;
    cfg.enable_buoyancy = false;
    cfg.enable_advection = false;

    const SolverConfig back = parse_config_json(config_to_json(cfg));
    CHECK(back.alpha == cfg.alpha);
    CHECK(back.d == cfg.d);
    CHECK(back.n == cfg.n);
    CHECK(back.L == cfg.L);
    CHECK(back.T == cfg.T);
    CHECK(back.nt == cfg.nt);
    CHECK(back.p == cfg.p);
    CHECK(back.gamma == cfg.gamma);
    CHECK(back.delta_force == cfg.delta_force);
    CHECK(back.weight_c == cfg.weight_c);
    CHECK(back.smallness_delta == cfg.smallness_delta);
    CHECK(back.tol == cfg.tol);
    CHECK(back.max_iter == cfg.max_iter);
    CHECK(back.time_grid == cfg.time_grid);
    CHECK(back.temperature_advection_sign == cfg.temperature_advection_sign);
    CHECK(back.enable_buoyancy == cfg.enable_buoyancy);
    CHECK(back.enable_advection == cfg.enable_advection);
}

TEST_CASE("bad configs are rejected with invalid_argument") {
    CHECK_THROWS_AS(parse_config_json("not json at all"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json("[1,2,3]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json("{\"alpha\": \"one point five\"}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json("{\"time_grid\": \"diagonal\"}"), std::invalid_argument);
    CHECK_THROWS_AS(load_config("no_such_config.json"), std::invalid_argument);
}

TEST_CASE("solve diagnostics embed the resolved config") {
    SolverConfig cfg;
    cfg.n = 32;
    PicardDiagnostics diag;
    diag.converged = true;
    diag.iterations = 4;
    diag.update_norms = {0.1, 0.001, 1e-6};
    diag.contraction = {0.01, 0.001};
    diag.final_residual = 3e-11;
    diag.delta = 0.2;
    diag.solution_norm = 0.15;
    diag.within_ball = true;

    const auto j = nlohmann::json::parse(diagnostics_to_json(diag, cfg));
    CHECK(j.at("config").at("n").get<int>() == 32);
    CHECK(j.at("diagnostics").at("converged").get<bool>());
    CHECK(j.at("diagnostics").at("iterations").get<int>() == 4);
    CHECK(j.at("diagnostics").at("update_norms").size() == 3);
    CHECK(j.at("diagnostics").at("within_ball").get<bool>());
}

TEST_CASE("norm and scaling reports serialize completely") {
    NormReport nr;
    nr.norm_name = "parabolic-morrey";
    nr.params = {{"p", 6.0}, {"q", 8.0}};
    nr.value = 1.25;
    nr.tail_bound = 1e-9;
    const auto jn = nlohmann::json::parse(norm_report_to_json(nr));
    CHECK(jn.at("norm_name").get<std::string>() == "parabolic-morrey");
    CHECK(jn.at("params").at("q").get<double>() == 8.0);

    ScalingReport sr;
    sr.lambda = 2.0;
    sr.items.push_back({"velocity-sup", 1.0, 1.0005, 5e-4, true});
    sr.max_deviation = 5e-4;
    sr.all_ok = true;
    const auto js = nlohmann::json::parse(scaling_report_to_json(sr));
    CHECK(js.at("lambda").get<double>() == 2.0);
    CHECK(js.at("items").size() == 1);
    CHECK(js.at("items").at(0).at("name").get<std::string>() == "velocity-sup");
    CHECK(js.at("items").at(0).at("ok").get<bool>());
}

TEST_CASE("csv writers emit one labelled row per entry") {
    TempFile res("io_residuals.csv");
    write_residual_csv(res.path, {0.5, 0.05});
    CHECK(slurp(res.path) == "iteration,update_norm\n1,0.5\n2,0.050000000000000003\n");

    EquivalenceStats st;
    st.rows.push_back({1, 2.0, 1.0, 2.0});
    TempFile eq("io_equivalence.csv");
    write_equivalence_csv(eq.path, st);
    const std::string text = slurp(eq.path);
    CHECK(text.find("id,tlm_norm,parabolic_morrey_norm,ratio\n") == 0);
    CHECK(text.find("\n1,2,1,2\n") != std::string::npos);
}

TEST_CASE("seeded data generation is deterministic") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nt = 8;
    const BoussinesqData a = make_seeded_data(cfg, 7, 0.5, 0.5, 0.25, 0.25);
    const BoussinesqData b = make_seeded_data(cfg, 7, 0.5, 0.5, 0.25, 0.25);
    CHECK(bitwise_equal(a.u0[0].samples, b.u0[0].samples));
    CHECK(bitwise_equal(a.u0[1].samples, b.u0[1].samples));
    CHECK(bitwise_equal(a.theta0.samples, b.theta0.samples));
    CHECK(bitwise_equal(a.force_theta.snapshots.back().samples,
                        b.force_theta.snapshots.back().samples));
    // a different seed must actually change the fields
    const BoussinesqData c = make_seeded_data(cfg, 8, 0.5, 0.5, 0.25, 0.25);
    CHECK_FALSE(bitwise_equal(a.theta0.samples, c.theta0.samples));
}
