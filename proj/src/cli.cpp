#include "kslant/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kslant/gallery.hpp"
#include "kslant/io.hpp"
#include "kslant/slant_ops.hpp"
#include "kslant/verify.hpp"

namespace kslant::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double number(const std::string& s, const std::string& what) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("bad number '" + s + "' in " + what);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

std::vector<double> numbers(const std::string& s, const std::string& what) {
    std::vector<double> v;
    if (s.empty()) return v;
    for (const std::string& p : split(s, ',')) v.push_back(number(p, what));
    return v;
}

// "a=0.6,r=0.8" -> {a: 0.6, r: 0.8}
std::map<std::string, std::string> key_values(const std::string& s) {
    std::map<std::string, std::string> kv;
    if (s.empty()) return kv;
    std::string key;
    for (const std::string& p : split(s, ',')) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) {
            if (key.empty())
                kv[p] = "";  // bare flag such as "fit"
            else
                kv[key] += "," + p;  // vector values such as axis=0,0,1
            continue;
        }
        key = p.substr(0, eq);
        kv[key] = p.substr(eq + 1);
    }
    return kv;
}

struct Common {
    std::string out;
    std::string format = "json";
    int samples = 1024;
};

std::optional<Interval> parse_domain(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const auto v = numbers(s, "--domain");
    if (v.size() != 2 || !(v[1] > v[0])) throw UsageError("--domain needs lo,hi with lo < hi");
    return Interval{v[0], v[1]};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_file_atomic(path, text);
}

std::string render(const std::vector<SampledCurve>& curves, const std::string& format, bool frames = false) {
    if (format == "csv") {
        CsvOptions opt;
        opt.frames = frames;
        return write_csv(curves.back(), opt);
    }
    if (curves.size() == 1) return dump_json(to_json(curves.front()));
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : curves) arr.push_back(to_json(c));
    return dump_json(arr);
}

std::vector<SampledCurve> load(const std::string& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
        return parse_curves_json(text);
    return {parse_csv(text)};
}

SampledCurve pick(const std::vector<SampledCurve>& curves, int level) {
    if (level < 0) return curves.back();
    for (const auto& c : curves)
        if (c.meta.level == level) return c;
    throw UsageError("no curve with level " + std::to_string(level) + " in input");
}

// Comma-separated check list; pieces that do not begin a known check belong
// to the previous one (e.g. "kslant:1:axis=0,0,1").
std::vector<std::string> split_checks(const std::string& s) {
    static const std::vector<std::string> known = {"spherical",     "unit_speed", "kslant",      "characterization",
                                                   "prime",         "hyperboloid", "nk_magnetic"};
    std::vector<std::string> out;
    for (const std::string& p : split(s, ',')) {
        const std::string head = p.substr(0, p.find(':'));
        const bool starts = std::find(known.begin(), known.end(), head) != known.end();
        if (starts || out.empty())
            out.push_back(p);
        else
            out.back() += "," + p;
    }
    return out;
}

std::function<CheckResult()> make_check(const std::string& spec, const Curve3& curve, std::optional<double> tol,
                                        int samples) {
    const auto parts = split(spec, ':');
    const std::string name = parts.at(0);
    VerifyConfig cfg;
    cfg.samples = samples;
    auto opts = [&](size_t from) {
        std::map<std::string, std::string> kv;
        for (size_t i = from; i < parts.size(); ++i)
            for (const auto& [k, v] : key_values(parts[i])) kv[k] = v;
        return kv;
    };
    auto get = [&](const std::map<std::string, std::string>& kv, const std::string& key) -> std::optional<double> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return number(it->second, spec);
    };
    if (name == "spherical") {
        const auto kv = opts(1);
        std::optional<Vec3> c;
        if (kv.count("center")) {
            const auto v = numbers(kv.at("center"), spec);
            if (v.size() != 3) throw UsageError("center needs three numbers");
            c = Vec3{v[0], v[1], v[2]};
        } else if (!kv.count("fit")) {
            c = Vec3{};
        }
        std::optional<double> R = get(kv, "R");
        if (!R && !kv.count("fit")) R = 1.0;
        const double t = tol.value_or(1e-8);
        return [=] { return check_spherical(curve, c, R, t, cfg); };
    }
    if (name == "unit_speed") {
        const double t = tol.value_or(1e-8);
        return [=] { return check_unit_speed(curve, t, cfg); };
    }
    if (name == "kslant") {
        if (parts.size() < 2) throw UsageError("kslant needs a level, e.g. kslant:1:axis=0,0,1");
        const int k = static_cast<int>(number(parts[1], spec));
        const auto kv = opts(2);
        Vec3 axis{0, 0, 1};
        if (kv.count("axis")) {
            const auto v = numbers(kv.at("axis"), spec);
            if (v.size() != 3) throw UsageError("axis needs three numbers");
            axis = {v[0], v[1], v[2]};
        }
        const double t = tol.value_or(1e-6);
        VerifyConfig c2 = cfg;
        c2.samples = std::min(samples, 256);
        return [=] { return check_k_slant(curve, k, axis, t, c2); };
    }
    if (name == "characterization") {
        const double t = tol.value_or(1e-4);
        return [=] { return check_spherical_characterization(curve, t, cfg); };
    }
    if (name == "prime") {
        const double t = tol.value_or(1e-6);
        return [=] { return check_prime(curve, t, cfg); };
    }
    if (name == "hyperboloid") {
        const auto kv = opts(1);
        const auto a = get(kv, "a"), b = get(kv, "b"), w = get(kv, "w");
        if (!a || !b || !w) throw UsageError("hyperboloid needs a=,b=,w=");
        const auto rhs = get(kv, "rhs");
        const double t = tol.value_or(1e-10);
        return [=] { return check_hyperboloid(curve, *a, *b, *w, t, rhs, cfg); };
    }
    if (name == "nk_magnetic") {
        if (parts.size() < 2) throw UsageError("nk_magnetic needs a level, e.g. nk_magnetic:0:omega=0.8");
        const int k = static_cast<int>(number(parts[1], spec));
        const auto om = get(opts(2), "omega");
        if (!om) throw UsageError("nk_magnetic needs omega=");
        const double t = tol.value_or(1e-5);
        return [=] { return check_Nk_magnetic(curve, k, *om, t, cfg); };
    }
    throw UsageError("unknown check '" + name + "'");
}

Curve3 build_seed(const std::string& spec, Op op, std::optional<Interval> domain) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const auto kv = key_values(colon == std::string::npos ? "" : spec.substr(colon + 1));
    auto get = [&](const std::string& k) -> std::optional<double> {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        return number(it->second, "--seed");
    };
    if (name == "circle") {
        if (op == Op::I) {
            double a = get("a").value_or(0.0);
            double r = get("r").value_or(std::sqrt(std::max(0.0, 1 - a * a)));
            if (!get("a") && get("r")) a = std::sqrt(std::max(0.0, 1 - r * r));
            return circle({0, 0, a}, r, true, domain);
        }
        const double r = get("r").value_or(1.0);
        return circle({}, r, false, domain);
    }
    if (name == "example31") {
        if (op != Op::I) throw UsageError("example31 is a spherical seed; use --op I");
        Curve3 c = example31_circle();
        if (domain) {
            Curve3 base = c;
            Curve3 d(*domain, [base](double t, int n) { return base.jet(t, n); }, base.max_order());
            d.meta = base.meta;
            return d;
        }
        return c;
    }
    throw UsageError("unknown seed '" + name + "'");
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Synthesise and verify k-slant curves built with the I and J operators.", "kslant"};
    app.set_config("--config", "", "TOML/INI file mirroring the flags; flags win on conflict");
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out, "Output file (default standard output)");
        sub->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--samples", common.samples, "Number of samples")->check(CLI::Range(2, 10000000));
    };

    // build
    std::string seed = "circle:a=0.6,r=0.8", op_name = "I", phases_s, domain_s, rule = "gl";
    int depth = 1;
    bool unsafe = false;
    double ppu = 64;
    auto* build = app.add_subcommand("build", "Build an I- or J-chain from a seed circle");
    build->add_option("--seed", seed, "circle:a=<a>,r=<r> (I: on the unit sphere; J: planar) or example31");
    build->add_option("--op", op_name, "I or J")->check(CLI::IsMember({"I", "J"}));
    build->add_option("--depth", depth, "Chain depth (<= 4 unless --unsafe-depth)")->check(CLI::NonNegativeNumber);
    build->add_option("--phases", phases_s, "Comma-separated phases, one per level (default zeros)");
    build->add_option("--domain", domain_s, "Parameter interval lo,hi (default one period of the seed)");
    build->add_option("--rule", rule, "Quadrature rule: gl or simpson")->check(CLI::IsMember({"gl", "simpson"}));
    build->add_option("--panels-per-unit", ppu, "Quadrature panels per unit parameter")->check(CLI::PositiveNumber);
    build->add_flag("--unsafe-depth", unsafe, "Allow depth above 4");
    add_common(build);

    // gallery
    std::string gname;
    std::optional<double> ga, gb, gr, gw, gtheta;
    int geps = 1, gK = 30;
    auto* gallery = app.add_subcommand("gallery", "Sample a closed-form reference curve");
    gallery
        ->add_option("--name", gname, "circle, great-circle, example31, spherical-helix, circular-helix, "
                                      "constant-precession, j3-series")
        ->required();
    gallery->add_option("--a", ga, "Axis offset / helix radius");
    gallery->add_option("--b", gb, "Pitch parameter");
    gallery->add_option("--r", gr, "Circle radius");
    gallery->add_option("--w", gw, "Angular rate");
    gallery->add_option("--epsilon", geps, "Sign +1 or -1")->check(CLI::IsMember({-1, 1}));
    gallery->add_option("--theta0", gtheta, "Phase");
    gallery->add_option("--K", gK, "Series truncation for j3-series")->check(CLI::NonNegativeNumber);
    gallery->add_option("--domain", domain_s, "Parameter interval lo,hi");
    add_common(gallery);

    // verify / report
    std::string in_path, checks_s = "spherical", report_path;
    std::optional<double> tol;
    int level = -1;
    auto* verify = app.add_subcommand("verify", "Run checks on a curve file; exit 1 if any fails");
    auto* report = app.add_subcommand("report", "Write a JSON verification report with run metadata");
    for (auto* sub : {verify, report}) {
        sub->add_option("--in", in_path, "Curve file (JSON or CSV)")->required()->check(CLI::ExistingFile);
        sub->add_option("--checks", checks_s,
                        "Comma list: spherical[:R=..|:fit], unit_speed, kslant:<k>[:axis=x,y,z], characterization, "
                        "prime, hyperboloid:a=..,b=..,w=..[,rhs=..], nk_magnetic:<k>:omega=..");
        sub->add_option("--tol", tol, "Tolerance for every check (default per check)");
        sub->add_option("--level", level, "Chain level to check (default the last curve)");
        add_common(sub);
    }
    verify->add_option("--report", report_path, "Also write the JSON report here");

    // export
    bool frames = false;
    auto* exp = app.add_subcommand("export", "Convert a curve file, optionally with Frenet columns");
    exp->add_option("--in", in_path, "Curve file (JSON or CSV)")->required()->check(CLI::ExistingFile);
    exp->add_option("--level", level, "Chain level to export (default all for JSON, last for CSV)");
    exp->add_flag("--frames", frames, "Append T_x..B_z,kappa,tau columns (CSV)");
    add_common(exp);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "kslant: " << e.what() << "\n" << "Run with --help for usage.\n";
        return 2;
    }

    try {
        if (build->parsed()) {
            const Op op = op_name == "I" ? Op::I : Op::J;
            ChainConfig cfg;
            cfg.unsafe_depth = unsafe;
            cfg.quad.rule = rule == "gl" ? Rule::GaussLegendre : Rule::Simpson;
            cfg.quad.panels_per_unit = ppu;
            std::vector<double> phases = numbers(phases_s, "--phases");
            if (phases.empty()) phases.assign(depth, 0.0);
            if (static_cast<int>(phases.size()) != depth)
                throw UsageError("--phases must list exactly --depth values");
            if (depth > 4 && !unsafe) throw UsageError("--depth above 4 needs --unsafe-depth");
            const Curve3 s = build_seed(seed, op, parse_domain(domain_s));
            const auto chain = op == Op::I ? chain_I(s, depth, phases, cfg, true) : chain_J(s, depth, phases, cfg);
            std::vector<SampledCurve> curves;
            for (const auto& L : chain) {
                SampledCurve c = resample(L.curve, common.samples);
                c.meta.extra["seed_spec"] = seed;
                curves.push_back(std::move(c));
            }
            emit(render(curves, common.format), common.out, out);
            return 0;
        }
        if (gallery->parsed()) {
            const auto dom = parse_domain(domain_s);
            Curve3 c;
            if (gname == "circle") {
                const double a = ga.value_or(gr ? std::sqrt(std::max(0.0, 1 - *gr * *gr)) : 0.6);
                c = circle({0, 0, a}, gr.value_or(std::sqrt(std::max(0.0, 1 - a * a))), true, dom);
            } else if (gname == "great-circle") {
                c = circle({}, 1, true, dom);
            } else if (gname == "example31") {
                c = example31_circle();
            } else if (gname == "spherical-helix") {
                const double a = ga.value_or(0.6);
                c = spherical_helix(a, gr.value_or(std::sqrt(std::max(0.0, 1 - a * a))), gtheta.value_or(0), dom);
            } else if (gname == "circular-helix") {
                c = circular_helix(ga.value_or(0.6), gb.value_or(0.8), dom);
            } else if (gname == "constant-precession") {
                c = constant_precession(ga.value_or(0.6), gb.value_or(0.8), gw.value_or(1), geps, dom);
            } else if (gname == "j3-series") {
                GalleryParams p;
                p.a = ga.value_or(0.6);
                p.b = gb.value_or(0.8);
                p.w = gw.value_or(1 / std::hypot(p.a, p.b));
                p.epsilon = geps;
                c = j3_series_curve(p, gK, dom);
            } else {
                throw UsageError("unknown gallery curve '" + gname + "'");
            }
            emit(render({resample(c, common.samples)}, common.format), common.out, out);
            return 0;
        }
        if (verify->parsed() || report->parsed()) {
            const SampledCurve sc = pick(load(in_path), level);
            const Curve3 curve = from_samples(sc);
            std::vector<std::function<CheckResult()>> checks;
            for (const std::string& spec : split_checks(checks_s)) checks.push_back(make_check(spec, curve, tol, common.samples));
            VerificationReport rep = run_report(checks, meta_to_json(sc.meta));
            if (report->parsed()) {
                rep.metadata = {{"tool", "kslant"}, {"command", "report"}, {"input", in_path},
                                {"checks", checks_s}, {"generated_at", timestamp()}};
                emit(dump_json(to_json(rep)), common.out, out);
                return 0;
            }
            if (!report_path.empty()) write_file_atomic(report_path, dump_json(to_json(rep)));
            if (common.format == "json")
                emit(dump_json(to_json(rep)), common.out, out);
            else
                emit(to_table(rep), common.out, out);
            if (common.out.empty() && common.format == "json") err << to_table(rep);
            return rep.all_passed() ? 0 : 1;
        }
        if (exp->parsed()) {
            std::vector<SampledCurve> curves = load(in_path);
            if (level >= 0) curves = {pick(curves, level)};
            emit(render(curves, common.format, frames), common.out, out);
            return 0;
        }
    } catch (const UsageError& e) {
        err << "kslant: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "kslant: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace kslant::cli
