#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "kslant/cli.hpp"
#include "kslant/io.hpp"

using namespace kslant;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct Scratch {
    std::filesystem::path dir;
    Scratch() {
        dir = std::filesystem::temp_directory_path() / ("kslant_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~Scratch() { std::filesystem::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("help and usage errors") {
    const Run h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("build") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"build", "--op", "K"}).code == 2);
    CHECK(run({"build", "--depth", "5"}).code == 2);
    CHECK(run({"build", "--depth", "2", "--phases", "0.1"}).code == 2);
    CHECK(run({"gallery", "--name", "nothing"}).code == 2);
}

TEST_CASE("build emits every level") {
    const Run r = run({"build", "--seed", "circle:a=0.6,r=0.8", "--depth", "2", "--samples", "17"});
    REQUIRE(r.code == 0);
    const auto curves = parse_curves_json(r.out);
    REQUIRE(curves.size() == 3);
    CHECK(curves[2].meta.level == 2);
    CHECK(curves[2].meta.op == "I");
    CHECK(curves[2].meta.phases == std::vector<double>{0, 0});
    CHECK(curves[2].points.size() == 17);
}

TEST_CASE("build a J chain to CSV") {
    const Run r = run({"build", "--seed", "circle:r=1", "--op", "J", "--depth", "1", "--phases", "0.9272952180016122",
                       "--format", "csv", "--samples", "9"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("s,x,y,z\n", 0) == 0);
    const SampledCurve c = parse_csv(r.out);
    CHECK(c.meta.op == "J");
    CHECK(c.points.size() == 9);
}

TEST_CASE("negative phases parse as values") {
    CHECK(run({"build", "--depth", "1", "--phases", "-0.5", "--samples", "5"}).code == 0);
}

TEST_CASE("gallery curves") {
    for (const std::string name : {"circle", "great-circle", "example31", "spherical-helix", "circular-helix",
                                   "constant-precession", "j3-series"}) {
        const Run r = run({"gallery", "--name", name, "--samples", "11", "--format", "csv"});
        CHECK_MESSAGE(r.code == 0, name);
        if (name != "example31") CHECK(r.out.rfind("s,x,y,z\n", 0) == 0);
    }
    CHECK(run({"gallery", "--name", "constant-precession", "--b", "0"}).code == 2);
}

TEST_CASE("verify exit codes and report file") {
    Scratch tmp;
    REQUIRE(run({"build", "--depth", "1", "--samples", "2049", "--out", tmp / "c.json"}).code == 0);
    const Run ok = run({"verify", "--in", tmp / "c.json", "--checks", "spherical,kslant:0:axis=0,0,1", "--report",
                        tmp / "r.json"});
    CHECK(ok.code == 0);
    const auto rep = nlohmann::json::parse(read_file(tmp / "r.json"));
    CHECK(rep["checks"].size() == 2);
    CHECK(rep["checks"][0]["name"] == "kslant:0");
    CHECK(rep["checks"][0]["details"]["axis"][2] == 1.0);

    REQUIRE(run({"gallery", "--name", "circular-helix", "--samples", "1001", "--out", tmp / "h.json"}).code == 0);
    CHECK(run({"verify", "--in", tmp / "h.json", "--checks", "spherical"}).code == 1);
    CHECK(run({"verify", "--in", tmp / "h.json", "--checks", "unit_speed", "--format", "csv"}).code == 0);
    CHECK(run({"verify", "--in", tmp / "h.json", "--checks", "bogus"}).code == 2);
    CHECK(run({"verify", "--in", tmp / "c.json", "--level", "7"}).code == 2);
    CHECK(run({"verify", "--in", tmp / "c.json", "--checks", "spherical:fit,spherical:center=0,0,0:R=1"}).code == 0);
    CHECK(run({"verify", "--in", tmp / "c.json", "--checks", "spherical:center=0,0,1:R=1"}).code == 1);
}

TEST_CASE("report carries a timestamp only in metadata") {
    Scratch tmp;
    REQUIRE(run({"gallery", "--name", "constant-precession", "--epsilon", "-1", "--samples", "2001", "--out",
                 tmp / "cp.json"})
                .code == 0);
    const Run r = run({"report", "--in", tmp / "cp.json", "--checks", "nk_magnetic:0:omega=0.8,hyperboloid:a=0.6,b=0.8,w=1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["metadata"].contains("generated_at"));
    CHECK_FALSE(j["curve_meta"].contains("generated_at"));
    CHECK(j["checks"].size() == 2);
}

TEST_CASE("export round trip") {
    Scratch tmp;
    REQUIRE(run({"build", "--depth", "2", "--phases", "0.3,0.1", "--samples", "129", "--out", tmp / "a.json"}).code == 0);
    REQUIRE(run({"export", "--in", tmp / "a.json", "--level", "2", "--format", "csv", "--out", tmp / "a.csv"}).code == 0);
    REQUIRE(run({"export", "--in", tmp / "a.csv", "--out", tmp / "b.json"}).code == 0);
    const auto a = parse_curves_json(read_file(tmp / "a.json"))[2];
    const auto b = parse_curves_json(read_file(tmp / "b.json"))[0];
    CHECK(a.grid == b.grid);
    for (size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
    CHECK(b.meta.level == 2);
    const Run f = run({"export", "--in", tmp / "a.csv", "--format", "csv", "--frames"});
    CHECK(f.out.substr(0, f.out.find('\n')).find("kappa,tau") != std::string::npos);
}

TEST_CASE("config file values lose to flags") {
    Scratch tmp;
    {
        std::ofstream cfg(tmp / "k.toml");
        cfg << "[build]\ndepth = 2\nsamples = 7\n";
    }
    const Run c = run({"--config", tmp / "k.toml", "build"});
    REQUIRE(c.code == 0);
    CHECK(parse_curves_json(c.out).size() == 3);
    CHECK(parse_curves_json(c.out)[0].points.size() == 7);
    const Run f = run({"--config", tmp / "k.toml", "build", "--depth", "1"});
    REQUIRE(f.code == 0);
    CHECK(parse_curves_json(f.out).size() == 2);
}

TEST_CASE("errors leave no output file behind") {
    Scratch tmp;
    CHECK(run({"build", "--seed", "circle:a=0.5,r=0.5", "--out", tmp / "x.json"}).code == 2);
    CHECK(run({"build", "--seed", "spiral", "--out", tmp / "y.json"}).code == 2);
    CHECK_FALSE(std::filesystem::exists(tmp / "x.json"));
    CHECK_FALSE(std::filesystem::exists(tmp / "y.json"));
}

TEST_CASE("the executable reports exit codes") {
    Scratch tmp;
    const std::string exe = KSLANT_EXE;
    auto status = [](const std::string& cmd) {
        const int s = std::system(cmd.c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status(exe + " gallery --name great-circle --samples 2049 --out " + (tmp / "g.json")) == 0);
    CHECK(status(exe + " verify --in " + (tmp / "g.json") + " --checks spherical,unit_speed >/dev/null 2>&1") == 0);
    CHECK(status(exe + " verify --in " + (tmp / "g.json") + " --checks prime >/dev/null 2>&1") == 1);
    CHECK(status(exe + " build --depth 9 >/dev/null 2>&1") == 2);
}
