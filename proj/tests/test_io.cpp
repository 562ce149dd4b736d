#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include <unistd.h>

#include "kslant/gallery.hpp"
#include "kslant/io.hpp"
#include "kslant/slant_ops.hpp"
#include "oracles.hpp"

using namespace kslant;

namespace {

std::filesystem::path scratch() {
    auto p = std::filesystem::temp_directory_path() / ("kslant_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p;
}

SampledCurve chain_sample() {
    const auto chain = chain_I(circle({0, 0, 0.6}, 0.8), 1, {0.2});
    return resample(chain[1].curve, 65);
}

}  // namespace

TEST_CASE("format_double round-trips random doubles") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> e(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double v = std::ldexp(u(rng), e(rng));
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(NAN) == "NaN");
}

TEST_CASE("non-finite numbers become null in JSON") {
    const nlohmann::ordered_json j = {{"x", INFINITY}, {"y", 1.5}};
    const auto back = nlohmann::json::parse(dump_json(j));
    CHECK(back["x"].is_null());
    CHECK(back["y"] == 1.5);
}

TEST_CASE("metadata round-trips") {
    CurveMeta m;
    m.seed = "circle";
    m.op = "J";
    m.level = 3;
    m.phases = {0.1, -2.5, 3};
    m.parameter = "s";
    m.cusps = {1.25};
    m.extra = {{"a", 0.6}};
    const CurveMeta b = meta_from_json(nlohmann::json::parse(dump_json(meta_to_json(m))));
    CHECK(b.seed == m.seed);
    CHECK(b.op == m.op);
    CHECK(b.level == 3);
    CHECK(b.phases == m.phases);
    CHECK(b.parameter == "s");
    CHECK(b.cusps == m.cusps);
    CHECK(b.extra["a"] == 0.6);
    const auto j = meta_to_json(m);
    CHECK(j.contains("operator"));
    CHECK(j.contains("theta"));
}

TEST_CASE("sampled curve JSON round-trip is exact") {
    const SampledCurve s = chain_sample();
    const auto back = parse_curves_json(dump_json(to_json(s)));
    REQUIRE(back.size() == 1);
    CHECK(back[0].grid == s.grid);
    for (size_t i = 0; i < s.points.size(); ++i) CHECK(back[0].points[i] == s.points[i]);
    CHECK(back[0].meta.cusps == s.meta.cusps);

    nlohmann::ordered_json arr = nlohmann::ordered_json::array({to_json(s), to_json(s)});
    CHECK(parse_curves_json(dump_json(arr)).size() == 2);
}

TEST_CASE("CSV round-trip is exact and keeps metadata") {
    const SampledCurve s = chain_sample();
    const std::string text = write_csv(s);
    CHECK(text.rfind("s,x,y,z\n", 0) == 0);
    const SampledCurve b = parse_csv(text);
    CHECK(b.grid == s.grid);
    for (size_t i = 0; i < s.points.size(); ++i) CHECK(b.points[i] == s.points[i]);
    CHECK(b.meta.level == 1);
    CHECK(b.meta.op == "I");
    CHECK(b.meta.cusps == s.meta.cusps);
}

TEST_CASE("CSV with frame columns") {
    const SampledCurve s = resample(circular_helix(0.6, 0.8), 513);
    CsvOptions opt;
    opt.frames = true;
    const std::string text = write_csv(s, opt);
    const std::string header = text.substr(0, text.find('\n'));
    CHECK(header == "s,x,y,z,T_x,T_y,T_z,N_x,N_y,N_z,B_x,B_y,B_z,kappa,tau");
    const SampledCurve b = parse_csv(text);
    CHECK(b.points.size() == 513);
    // κ column of an interior row.
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    for (int i = 0; i < 10; ++i) std::getline(is, line);
    const auto kappa = std::stod(line.substr(line.find_last_of(',', line.find_last_of(',') - 1) + 1));
    CHECK(kappa == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("malformed inputs are rejected") {
    CHECK(oracle::code_of([] { parse_csv("a,b\n1,2\n"); }) == ErrorCode::BadParams);
    CHECK(oracle::code_of([] { parse_csv("t,x,y,z\n0,1,2\n"); }) == ErrorCode::BadParams);
    CHECK(oracle::code_of([] { parse_csv("t,x,y,z\n0,1,2,zz\n1,1,1,1\n"); }) == ErrorCode::BadParams);
    CHECK(oracle::code_of([] { parse_curves_json("{"); }) == ErrorCode::BadParams);
    CHECK(oracle::code_of([] { parse_curves_json(R"({"grid":[0,1],"points":[[0,0],[1,1,1]]})"); }) ==
          ErrorCode::BadParams);
    CHECK(oracle::code_of([] { parse_curves_json(R"({"grid":[0,0],"points":[[0,0,0],[1,1,1]]})"); }) ==
          ErrorCode::BadParams);
    CHECK(oracle::code_of([] { read_file("/nonexistent/kslant"); }) == ErrorCode::BadParams);
}

TEST_CASE("atomic writes replace whole files") {
    const auto dir = scratch();
    const std::string p = (dir / "x.txt").string();
    write_file_atomic(p, "first");
    write_file_atomic(p, "second");
    CHECK(read_file(p) == "second");
    size_t files = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
    CHECK(files == 1);
    CHECK(oracle::code_of([&] { write_file_atomic((dir / "missing" / "y.txt").string(), "z"); }) ==
          ErrorCode::BadParams);
    std::filesystem::remove_all(dir);
}
