#include "kslant/frames.hpp"

#include <algorithm>
#include <cmath>

namespace kslant {

namespace {

struct PsiJets {
    Jet v;                      // speed ‖γ'‖
    std::vector<VecJet> psi;    // psi[0] = γ, psi[j] = ψ_j
    int degenerate = -1;        // first j whose ψ_{j-1}' vanished
};

PsiJets psi_jets(const Curve3& curve, double t, int order, const DiffConfig& cfg) {
    const int n = std::min(order, available_order(curve, t, cfg));
    if (n < 1) throw Error(ErrorCode::OrderUnavailable, "no first derivative at t=" + std::to_string(t));
    PsiJets p;
    const VecJet g = local_jet(curve, t, n, cfg);
    const VecJet gp = differentiate(g);
    p.v = norm(gp);
    if (p.v.value() < curve.speed_floor)
        throw Error(ErrorCode::IrregularCurve, "speed below floor at t=" + std::to_string(t));
    p.psi.push_back(g);
    p.psi.push_back(normalized(gp));
    while (p.psi.back().order() >= 1) {
        const VecJet d = differentiate(p.psi.back());
        if (norm(d.value()) < 1e-9 * p.v.value()) {
            p.degenerate = static_cast<int>(p.psi.size());
            break;
        }
        p.psi.push_back(normalized(d));
    }
    return p;
}

bool has(const PsiJets& p, int j, int min_order) {
    return j < static_cast<int>(p.psi.size()) && p.psi[j].order() >= min_order;
}

[[noreturn]] void missing(const PsiJets& p, int j) {
    if (p.degenerate >= 0 && j >= p.degenerate)
        throw Error(ErrorCode::DegenerateLevel, "psi_" + std::to_string(p.degenerate) + " is undefined (level " +
                                                    std::to_string(p.degenerate - 1) + " is planar here)");
    throw Error(ErrorCode::OrderUnavailable, "not enough derivatives for psi_" + std::to_string(j));
}

double sgn(double x) { return x < 0 ? -1.0 : 1.0; }

}  // namespace

FrenetData frenet_apparatus(const Curve3& curve, double t, const DiffConfig& cfg, bool strict,
                            double inflection_tol) {
    const int n = std::min(3, available_order(curve, t, cfg));
    if (n < 2) throw Error(ErrorCode::OrderUnavailable, "Frenet frame needs two derivatives");
    const std::vector<Vec3> d = eval_derivatives(curve, t, n, cfg);
    FrenetData f;
    f.t = t;
    f.speed = norm(d[1]);
    if (f.speed < curve.speed_floor) throw Error(ErrorCode::IrregularCurve, "speed below floor");
    f.T = d[1] / f.speed;
    const Vec3 c = cross(d[1], d[2]);
    const double cn = norm(c);
    f.kappa = cn / (f.speed * f.speed * f.speed);
    if (cn < inflection_tol * f.speed * f.speed * f.speed) {
        if (strict) throw Error(ErrorCode::InflectionPoint, "curvature vanishes at t=" + std::to_string(t));
        f.kappa = 0;
        return f;
    }
    f.B = c / cn;
    f.N = cross(*f.B, f.T);
    if (n >= 3) f.tau = det(d[1], d[2], d[3]) / (cn * cn);
    return f;
}

SabbanData sabban_frame(const Curve3& curve, double s, const DiffConfig& cfg, double tol) {
    const std::vector<Vec3> d = eval_derivatives(curve, s, 2, cfg);
    if (std::abs(norm(d[0]) - 1) > tol) throw Error(ErrorCode::NotSpherical, "‖γ‖ differs from 1");
    if (std::abs(norm(d[1]) - 1) > tol) throw Error(ErrorCode::NotUnitSpeed, "‖γ'‖ differs from 1");
    SabbanData sd;
    sd.t = s;
    sd.gamma = d[0];
    sd.T = d[1];
    sd.Y = cross(d[0], d[1]);
    sd.kappa_g = det(d[0], d[1], d[2]);
    return sd;
}

std::vector<PsiLevel> psi_hierarchy(const Curve3& curve, int k_max, double t, bool spherical,
                                    const DiffConfig& cfg) {
    if (k_max < 0) throw Error(ErrorCode::BadParams, "k_max must be >= 0");
    const PsiJets p = psi_jets(curve, t, k_max + 4, cfg);
    const double v = p.v.value();
    std::vector<PsiLevel> out;
    for (int k = 0; k <= k_max; ++k) {
        PsiLevel L;
        L.k = k;
        if (k == 0) {
            if (spherical) L.psi = p.psi[0].value();
        } else {
            if (!has(p, k, 0)) missing(p, k);
            L.psi = p.psi[k].value();
        }
        if (!has(p, k + 1, 1)) {
            if (k + 1 < static_cast<int>(p.psi.size())) {
                out.push_back(L);
                continue;
            }
            missing(p, k + 1);
        }
        const Jet kap = norm(differentiate(p.psi[k + 1])) / p.v.truncated(p.psi[k + 1].order() - 1);
        L.kappa = kap.value();
        if (has(p, k + 2, 1)) {
            const VecJet& a = p.psi[k + 1];
            const VecJet& b = p.psi[k + 2];
            const Jet tau = dot(differentiate(b), cross(a, b)) / p.v;
            L.tau = tau.value();
            if (tau.order() >= 1 && kap.order() >= 1 && kap.value() > 1e-12) {
                const Jet ratio = tau / kap;
                const double k2 = kap.value() * kap.value(), t2 = tau.value() * tau.value();
                L.sigma = k2 / std::pow(k2 + t2, 1.5) * ratio.derivative(1) / v;
            }
        }
        out.push_back(L);
    }
    return out;
}

LevelFrame level_frame(const Curve3& curve, int k, double t, const DiffConfig& cfg) {
    const PsiJets p = psi_jets(curve, t, k + 3, cfg);
    if (!has(p, k + 2, 1)) missing(p, k + 2);
    const VecJet& a = p.psi[k + 1];
    const VecJet& b = p.psi[k + 2];
    LevelFrame f;
    f.t = t;
    f.T = a.value();
    f.N = b.value();
    f.B = cross(f.T, f.N);
    f.kappa = norm(differentiate(a).value()) / p.v.value();
    f.tau = dot(differentiate(b).value(), f.B) / p.v.value();
    return f;
}

std::vector<LevelFrame> level_frames_along(const Curve3& curve, int k, const std::vector<double>& ts,
                                           const DiffConfig& cfg) {
    std::vector<LevelFrame> out;
    out.reserve(ts.size());
    for (double t : ts) {
        LevelFrame f = level_frame(curve, k, t, cfg);
        if (!out.empty()) {
            const double sT = sgn(dot(f.T, out.back().T));
            const double sN = sgn(dot(f.N, out.back().N));
            f.T = sT * f.T;
            f.N = sN * f.N;
            f.B = cross(f.T, f.N);
            f.kappa *= sT * sN;
            f.tau *= sT;
        }
        out.push_back(f);
    }
    return out;
}

std::vector<Vec3> psi_along(const Curve3& curve, int j, const std::vector<double>& ts, const DiffConfig& cfg) {
    std::vector<Vec3> out;
    out.reserve(ts.size());
    for (double t : ts) {
        const PsiJets p = psi_jets(curve, t, std::max(j, 1), cfg);
        if (!has(p, j, 0)) missing(p, j);
        Vec3 v = p.psi[j].value();
        if (!out.empty() && dot(v, out.back()) < 0) v = -v;
        out.push_back(v);
    }
    return out;
}

DarbouxData centrode(const Curve3& curve, int k, double t, std::optional<double> omega, int sign,
                     const DiffConfig& cfg) {
    const LevelFrame f = level_frame(curve, k, t, cfg);
    DarbouxData d;
    d.k = k;
    d.W = f.tau * f.T + f.kappa * f.B;
    if (omega) {
        d.omega = omega;
        d.A = d.W + (sign * *omega) * f.N;
    }
    return d;
}

RigidMotion align_frames(const Curve3& from, double tf, const Curve3& to, double tt) {
    const FrenetData a = frenet_apparatus(from, tf, {}, true);
    const FrenetData b = frenet_apparatus(to, tt, {}, true);
    RigidMotion m;
    m.rotation = columns(b.T, *b.N, *b.B) * transpose(columns(a.T, *a.N, *a.B));
    m.shift = to(tt) - m.rotation * from(tf);
    return m;
}

}  // namespace kslant
