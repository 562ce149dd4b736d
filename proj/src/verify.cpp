#include "kslant/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

namespace kslant {

namespace {

CheckResult finish(CheckResult r) {
    r.passed = std::isfinite(r.residual) && r.residual <= r.tolerance;
    return r;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Drops samples where `probe` reports a degenerate level (a lower ψ is
// stationary there, e.g. an inflection) and notes how many were dropped.
template <class Probe>
void drop_degenerate(std::vector<double>& ts, std::vector<std::string>& notes, Probe&& probe) {
    std::vector<double> kept;
    int dropped = 0;
    for (double t : ts) {
        try {
            probe(t);
            kept.push_back(t);
        } catch (const Error& e) {
            if (e.code != ErrorCode::DegenerateLevel) throw;
            ++dropped;
        }
    }
    if (dropped > 0) notes.push_back("DegenerateLevel: skipped " + std::to_string(dropped) + " samples");
    ts = std::move(kept);
}

}  // namespace

SamplePlan sample_plan(const Curve3& curve, int n, int order, const VerifyConfig& cfg) {
    if (n < 2) throw Error(ErrorCode::BadParams, "checks need at least two samples");
    SamplePlan plan;
    std::vector<double> cand;
    if (!curve.nodes.empty()) {
        std::vector<double> ok;
        for (double t : curve.nodes)
            if (available_order(curve, t, cfg.diff) >= order) ok.push_back(t);
        const size_t stride = std::max<size_t>(1, (ok.size() + n - 1) / n);
        for (size_t i = 0; i < ok.size(); i += stride) cand.push_back(ok[i]);
    } else {
        const Interval& d = curve.domain();
        for (int i = 0; i < n; ++i) {
            const double t = i + 1 == n ? d.hi : d.lo + i * d.length() / (n - 1);
            if (available_order(curve, t, cfg.diff) >= order) cand.push_back(t);
        }
    }
    int skipped = 0;
    for (double t : cand) {
        if (curve.near_singular(t, cfg.cusp_window)) {
            ++skipped;
            continue;
        }
        plan.ts.push_back(t);
    }
    if (skipped > 0) {
        std::string where;
        for (double s : curve.singular_points) where += (where.empty() ? "" : ", ") + fmt(s);
        plan.notes.push_back("skipped " + std::to_string(skipped) + " samples within ±" + fmt(cfg.cusp_window) +
                             " of singular points {" + where + "}");
    }
    return plan;
}

CheckResult check_spherical(const Curve3& curve, std::optional<Vec3> center, std::optional<double> R, double tol,
                            const VerifyConfig& cfg) {
    CheckResult r;
    r.name = "spherical";
    r.tolerance = tol;
    VerifyConfig c2 = cfg;
    c2.cusp_window = 0;
    const SamplePlan plan = sample_plan(curve, cfg.samples, 0, c2);
    std::vector<Vec3> pts;
    for (double t : plan.ts) pts.push_back(curve(t));
    r.samples = static_cast<int>(pts.size());
    Vec3 c = center.value_or(Vec3{});
    double radius = R.value_or(1.0);
    if (!center || !R) {
        // |p|² = 2 c·p + (R² - |c|²), linear in (c, d).
        Eigen::MatrixXd A(pts.size(), 4);
        Eigen::VectorXd y(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) {
            A(i, 0) = 2 * pts[i].x;
            A(i, 1) = 2 * pts[i].y;
            A(i, 2) = 2 * pts[i].z;
            A(i, 3) = 1;
            y(i) = dot(pts[i], pts[i]);
        }
        const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(y);
        if (!center) c = {sol(0), sol(1), sol(2)};
        if (!R) radius = std::sqrt(std::max(0.0, sol(3) + dot(c, c)));
        r.notes.push_back("centre and radius fitted by least squares");
    }
    double res = 0;
    for (const Vec3& p : pts) res = std::max(res, std::abs(norm(p - c) - radius));
    r.residual = res;
    r.details = {{"center", {c.x, c.y, c.z}}, {"R", radius}};
    return finish(r);
}

CheckResult check_unit_speed(const Curve3& curve, double tol, const VerifyConfig& cfg) {
    CheckResult r;
    r.name = "unit_speed";
    r.tolerance = tol;
    const SamplePlan plan = sample_plan(curve, cfg.samples, 1, cfg);
    r.notes = plan.notes;
    for (double t : plan.ts) r.residual = std::max(r.residual, std::abs(norm(eval_derivatives(curve, t, 1, cfg.diff)[1]) - 1));
    r.samples = static_cast<int>(plan.ts.size());
    return finish(r);
}

CheckResult check_k_slant(const Curve3& curve, int k, const Vec3& axis, double tol, const VerifyConfig& cfg) {
    if (k < 0) throw Error(ErrorCode::BadParams, "k must be >= 0");
    CheckResult r;
    r.name = "kslant:" + std::to_string(k);
    r.tolerance = tol;
    SamplePlan plan = sample_plan(curve, cfg.samples, std::min(k + 1, 4), cfg);
    drop_degenerate(plan.ts, plan.notes, [&](double t) { psi_along(curve, k + 1, {t}, cfg.diff); });
    r.notes = plan.notes;
    const Vec3 u = normalized(axis);
    const std::vector<Vec3> psi = psi_along(curve, k + 1, plan.ts, cfg.diff);
    std::vector<double> v;
    for (const Vec3& p : psi) v.push_back(dot(p, u));
    const double mean = v.empty() ? 0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    for (double& x : v) x -= mean;
    r.residual = max_abs(v);
    r.samples = static_cast<int>(v.size());
    r.details = {{"k", k}, {"axis", {u.x, u.y, u.z}}, {"mean", mean}};
    return finish(r);
}

CheckResult check_spherical_characterization(const Curve3& curve, double tol, const VerifyConfig& cfg) {
    CheckResult r;
    r.name = "spherical_characterization";
    r.tolerance = tol;
    const SamplePlan plan = sample_plan(curve, cfg.samples, 3, cfg);
    r.notes = plan.notes;
    if (plan.ts.empty()) {
        r.residual = INFINITY;
        return finish(r);
    }
    // Regular arcs: consecutive samples not separated by a singular point.
    std::vector<std::vector<double>> arcs(1);
    for (size_t i = 0; i < plan.ts.size(); ++i) {
        if (i > 0) {
            const double a = plan.ts[i - 1], b = plan.ts[i];
            const bool split = std::any_of(curve.singular_points.begin(), curve.singular_points.end(),
                                           [&](double s) { return s > a && s < b; });
            if (split) arcs.emplace_back();
        }
        arcs.back().push_back(plan.ts[i]);
    }
    double R0 = 0;
    auto integrand = [&](double t) {
        const FrenetData f = frenet_apparatus(curve, t, cfg.diff, true);
        return f.tau.value_or(0.0) * f.speed;
    };
    int used = 0;
    for (const auto& arc : arcs) {
        if (arc.empty()) continue;
        std::vector<double> kap(arc.size()), theta(arc.size(), 0.0);
        for (size_t i = 0; i < arc.size(); ++i) {
            kap[i] = frenet_apparatus(curve, arc[i], cfg.diff, true).kappa;
            R0 = std::max(R0, 1 / kap[i]);
        }
        if (arc.size() > 1) {
            const CumulativeIntegral<double> I(integrand, {arc.front(), arc.back()}, {});
            for (size_t i = 0; i < arc.size(); ++i) theta[i] = I(arc[i]);
        }
        const double base = std::acos(std::clamp(1 / kap[0], -1.0, 1.0));
        double best = INFINITY;
        for (double th0 : {base, -base}) {
            double res = 0;
            for (size_t i = 0; i < arc.size(); ++i)
                res = std::max(res, std::abs(1 - kap[i] * std::cos(theta[i] + th0)));
            best = std::min(best, res);
        }
        r.residual = std::max(r.residual, best);
        used += static_cast<int>(arc.size());
    }
    r.samples = used;
    r.details = {{"arcs", arcs.size()}, {"R0", R0}, {"cos_alpha0", R0}};
    return finish(r);
}

CheckResult check_mannheim(const ChainLevel& level, double tol, std::optional<VerifyConfig> cfg_in) {
    if (level.op != Op::J || level.level == 0 || !level.node)
        throw Error(ErrorCode::BadParams, "check_mannheim needs a J level");
    VerifyConfig cfg = cfg_in.value_or(VerifyConfig{});
    if (!cfg_in) {
        cfg.diff.force_finite_difference = true;
        cfg.diff.step = 5e-3;
    }
    CheckResult r;
    r.name = "mannheim";
    r.tolerance = tol;
    const SamplePlan plan = sample_plan(level.curve, cfg.samples, 3, cfg);
    r.notes = plan.notes;
    auto parent = level.node->parent();
    int inflections = 0;
    for (double t : plan.ts) {
        const FrenetData f = frenet_apparatus(level.curve, t, cfg.diff, false, 1e-7);
        if (f.inflection() || !f.tau) {
            ++inflections;
            continue;
        }
        const double kp = parent->rho(t);
        r.residual = std::max(r.residual, std::abs(f.kappa * f.kappa + *f.tau * *f.tau - kp * kp));
        ++r.samples;
    }
    if (inflections > 0)
        r.notes.push_back("InflectionPoint: " + std::to_string(inflections) + " samples with vanishing curvature");
    if (r.samples == 0) r.residual = INFINITY;
    return finish(r);
}

CheckResult check_hyperboloid(const Curve3& curve, double a, double b, double w, double tol, std::optional<double> rhs,
                              const VerifyConfig& cfg) {
    if (a == 0 || w == 0) throw Error(ErrorCode::BadParams, "hyperboloid needs a, w != 0");
    CheckResult r;
    r.name = "hyperboloid";
    r.tolerance = tol;
    const double nominal = b * b / (a * a * a * a * w * w * w * w);
    const double target = rhs.value_or(nominal);
    const SamplePlan plan = sample_plan(curve, cfg.samples, 0, VerifyConfig{cfg.samples, 0, cfg.diff});
    double spread_lo = INFINITY, spread_hi = -INFINITY;
    for (double t : plan.ts) {
        const Vec3 p = curve(t);
        const double q = p.x * p.x + p.y * p.y - (b * b) / (a * a) * p.z * p.z;
        r.residual = std::max(r.residual, std::abs(q - target));
        spread_lo = std::min(spread_lo, q);
        spread_hi = std::max(spread_hi, q);
    }
    r.samples = static_cast<int>(plan.ts.size());
    r.details = {{"rhs", target}, {"nominal_rhs", nominal}, {"lhs_min", spread_lo}, {"lhs_max", spread_hi}};
    return finish(r);
}

CheckResult check_prime(const Curve3& curve, double tol, const VerifyConfig& cfg) {
    CheckResult r;
    r.name = "prime";
    const SamplePlan plan = sample_plan(curve, cfg.samples, 2, cfg);
    r.notes = plan.notes;
    auto radius = [&](double t) {
        const FrenetData f = frenet_apparatus(curve, t, cfg.diff);
        return f.kappa > 0 ? 1 / f.kappa : INFINITY;
    };
    double best = -INFINITY;
    size_t arg = 0;
    std::vector<double> rad(plan.ts.size());
    for (size_t i = 0; i < plan.ts.size(); ++i) {
        rad[i] = radius(plan.ts[i]);
        if (rad[i] > best) best = rad[i], arg = i;
    }
    if (!plan.ts.empty() && std::isfinite(best)) {
        // Golden-section refinement of the maximum between the neighbours.
        double lo = plan.ts[arg == 0 ? 0 : arg - 1], hi = plan.ts[std::min(arg + 1, plan.ts.size() - 1)];
        const double g = (std::sqrt(5.0) - 1) / 2;
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = radius(x1), f2 = radius(x2);
        for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
            if (f1 < f2) {
                lo = x1; x1 = x2; f1 = f2; x2 = lo + g * (hi - lo); f2 = radius(x2);
            } else {
                hi = x2; x2 = x1; f2 = f1; x1 = hi - g * (hi - lo); f1 = radius(x1);
            }
        }
        best = std::max({best, f1, f2});
    }
    r.residual = best;
    r.tolerance = 1 - tol;
    r.samples = static_cast<int>(plan.ts.size());
    r.details = {{"R0", best}, {"cos_alpha0", best}, {"prime", best <= 1 - tol}};
    return finish(r);
}

LorentzMatrices lorentz_force(const MagneticField& field, const FrenetData& frame) {
    const double x1 = field.xi.x, x2 = field.xi.y, x3 = field.xi.z;
    const double k = frame.kappa, t = frame.tau.value_or(0.0);
    LorentzMatrices m;
    m.force = {{{0, x3, -x2}, {-x3, 0, x1}, {x2, -x1, 0}}};
    m.transport = {{{0, k - x3, x2}, {-(k - x3), 0, t - x1}, {-x2, -(t - x1), 0}}};
    return m;
}

CheckResult check_Nk_magnetic(const Curve3& curve, int k, double Omega, double tol, const VerifyConfig& cfg) {
    CheckResult r;
    r.name = "Nk_magnetic:" + std::to_string(k);
    r.tolerance = tol;
    SamplePlan plan = sample_plan(curve, cfg.samples, std::min(k + 3, 4), cfg);
    drop_degenerate(plan.ts, plan.notes, [&](double t) { level_frame(curve, k, t, cfg.diff); });
    r.notes = plan.notes;
    const std::vector<LevelFrame> fr = level_frames_along(curve, k, plan.ts, cfg.diff);
    std::vector<Vec3> xi;
    for (const LevelFrame& f : fr) xi.push_back(f.tau * f.T - Omega * f.N + f.kappa * f.B);
    double drift = 0;
    for (const Vec3& x : xi) drift = std::max(drift, norm(x - xi.front()));
    // κ = A cos Ωs - B sin Ωs, τ = -A sin Ωs - B cos Ωs with A = R cos c0, B = R sin c0.
    Eigen::MatrixXd M(2 * fr.size(), 2);
    Eigen::VectorXd y(2 * fr.size());
    for (size_t i = 0; i < fr.size(); ++i) {
        const double c = std::cos(Omega * fr[i].t), s = std::sin(Omega * fr[i].t);
        M(2 * i, 0) = c;
        M(2 * i, 1) = -s;
        y(2 * i) = fr[i].kappa;
        M(2 * i + 1, 0) = -s;
        M(2 * i + 1, 1) = -c;
        y(2 * i + 1) = fr[i].tau;
    }
    double fit = INFINITY, R = 0, c0 = 0;
    if (!fr.empty()) {
        const Eigen::Vector2d ab = M.colPivHouseholderQr().solve(y);
        fit = (M * ab - y).cwiseAbs().maxCoeff();
        R = std::hypot(ab(0), ab(1));
        c0 = std::atan2(ab(1), ab(0));
    }
    r.residual = drift;
    r.samples = static_cast<int>(fr.size());
    const Vec3 x0 = xi.empty() ? Vec3{} : xi.front();
    r.details = {{"k", k},          {"Omega", Omega}, {"xi0", {x0.x, x0.y, x0.z}}, {"xi_norm", norm(x0)},
                 {"fit_R", R},      {"fit_c0", c0},   {"fit_residual", fit},       {"fit_passed", fit <= tol}};
    return finish(r);
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerificationReport run_report(const std::vector<std::function<CheckResult()>>& checks,
                              nlohmann::ordered_json curve_meta) {
    std::vector<std::future<CheckResult>> futures;
    for (const auto& c : checks) futures.push_back(std::async(std::launch::async, c));
    VerificationReport rep;
    rep.curve_meta = std::move(curve_meta);
    for (auto& f : futures) rep.checks.push_back(f.get());
    std::stable_sort(rep.checks.begin(), rep.checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return rep;
}

nlohmann::ordered_json to_json(const CheckResult& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["samples"] = r.samples;
    j["notes"] = r.notes;
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["curve_meta"] = r.curve_meta;
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : r.checks) j["checks"].push_back(to_json(c));
    if (!r.metadata.empty()) j["metadata"] = r.metadata;
    return j;
}

std::string to_table(const VerificationReport& r) {
    std::ostringstream os;
    size_t width = 5;
    for (const CheckResult& c : r.checks) width = std::max(width, c.name.size());
    os << std::left;
    os.width(width + 2);
    os << "check" << "residual      tolerance     samples  result\n";
    for (const CheckResult& c : r.checks) {
        os.width(width + 2);
        os << c.name;
        os.width(14);
        os << fmt(c.residual);
        os.width(14);
        os << fmt(c.tolerance);
        os.width(9);
        os << c.samples << (c.passed ? "PASS" : "FAIL") << "\n";
        for (const std::string& n : c.notes) os << "    " << n << "\n";
    }
    return os.str();
}

}  // namespace kslant
