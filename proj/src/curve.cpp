#include "kslant/curve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace kslant {

Curve3::Curve3(Interval domain, JetFn fn, int max_order)
    : domain_(domain), fn_(std::move(fn)), max_order_(max_order) {
    if (!(domain.hi > domain.lo)) throw Error(ErrorCode::BadParams, "curve domain is empty");
}

void Curve3::check_domain(double t) const {
    const double slack = 1e-12 * std::max(1.0, domain_.length());
    if (!domain_.contains(t, slack) || !std::isfinite(t))
        throw Error(ErrorCode::OutOfDomain, "t=" + std::to_string(t) + " outside [" + std::to_string(domain_.lo) +
                                                ", " + std::to_string(domain_.hi) + "]");
}

Vec3 Curve3::operator()(double t) const {
    check_domain(t);
    return fn_(std::clamp(t, domain_.lo, domain_.hi), 0).c[0];
}

VecJet Curve3::jet(double t, int order) const {
    check_domain(t);
    if (order > max_order_)
        throw Error(ErrorCode::OrderUnavailable,
                    "order " + std::to_string(order) + " above analytic order " + std::to_string(max_order_));
    return fn_(std::clamp(t, domain_.lo, domain_.hi), order).truncated(order);
}

bool Curve3::near_singular(double t, double window) const {
    return std::any_of(singular_points.begin(), singular_points.end(),
                       [&](double s) { return std::abs(t - s) <= window; });
}

namespace {

double fd_step(const Curve3& c, const DiffConfig& cfg) {
    if (cfg.step > 0) return cfg.step;
    if (c.fd_step > 0) return c.fd_step;
    return c.domain().length() * 1e-4;
}

// Points either side needed for a fourth-order central stencil.
int reach(int order) { return order == 0 ? 0 : (order <= 2 ? 2 : 3); }

bool analytic(const Curve3& c, int order, const DiffConfig& cfg) {
    return !cfg.force_finite_difference && order <= c.max_order();
}

}  // namespace

int available_order(const Curve3& curve, double t, const DiffConfig& cfg) {
    if (!cfg.force_finite_difference && curve.max_order() >= 4) return curve.max_order();
    const double h = fd_step(curve, cfg);
    const Interval& d = curve.domain();
    const double room = std::min(t - d.lo, d.hi - t) + 1e-9 * h;
    int best = cfg.force_finite_difference ? 0 : curve.max_order();
    for (int k = best + 1; k <= 4; ++k)
        if (reach(k) * h <= room) best = k;
    return best;
}

std::vector<Vec3> eval_derivatives(const Curve3& curve, double t, int order, const DiffConfig& cfg) {
    if (order < 0) throw Error(ErrorCode::BadParams, "negative derivative order");
    if (analytic(curve, order, cfg)) return curve.jet(t, order).derivatives();
    if (order > 4)
        throw Error(ErrorCode::OrderUnavailable,
                    "order " + std::to_string(order) + " needs analytic derivatives");
    const double h = fd_step(curve, cfg);
    const Interval& d = curve.domain();
    const int r = reach(order);
    const double slack = 1e-9 * h;
    if (t - r * h < d.lo - slack || t + r * h > d.hi + slack) {
        if (!d.contains(t)) curve(t);  // raises OutOfDomain
        throw Error(ErrorCode::OrderUnavailable,
                    "finite-difference stencil for order " + std::to_string(order) + " leaves the domain at t=" +
                        std::to_string(t));
    }
    std::vector<Vec3> f(2 * r + 1);
    for (int j = -r; j <= r; ++j) f[j + r] = j == 0 ? curve(t) : curve(t + j * h);
    std::vector<Vec3> out(order + 1);
    out[0] = f[r];
    for (int k = 1; k <= order; ++k) {
        const int rk = reach(k);
        std::vector<double> x;
        for (int j = -rk; j <= rk; ++j) x.push_back(j);
        const auto w = fornberg_weights(0.0, x, k);
        Vec3 acc{};
        for (int j = -rk; j <= rk; ++j) acc += w[k][j + rk] * f[j + r];
        out[k] = acc / std::pow(h, k);
    }
    return out;
}

VecJet local_jet(const Curve3& curve, double t, int order, const DiffConfig& cfg) {
    if (analytic(curve, order, cfg)) return curve.jet(t, order);
    return VecJet::from_derivatives(eval_derivatives(curve, t, order, cfg));
}

std::vector<Interval> regularity_mask(const Curve3& curve, int samples) {
    const Interval& d = curve.domain();
    std::vector<Interval> mask;
    std::optional<double> start;
    double last = d.lo;
    for (int i = 0; i < samples; ++i) {
        const double t = i + 1 == samples ? d.hi : d.lo + i * d.length() / (samples - 1);
        bool ok = false;
        if (available_order(curve, t) >= 1)
            ok = norm(eval_derivatives(curve, t, 1)[1]) >= curve.speed_floor;
        if (ok && !start) start = t;
        if (!ok && start) {
            mask.push_back({*start, last});
            start.reset();
        }
        last = t;
    }
    if (start) mask.push_back({*start, d.hi});
    // Known singular points can fall between samples.
    std::vector<Interval> split;
    for (Interval iv : mask) {
        for (double sp : curve.singular_points) {
            if (sp <= iv.lo || sp >= iv.hi) continue;
            split.push_back({iv.lo, sp});
            iv.lo = sp;
        }
        split.push_back(iv);
    }
    return split;
}

namespace {

struct ArcTable {
    Curve3 base;
    CumulativeIntegral<double> s_of_t;
    std::vector<double> t_knots, s_knots;

    double speed(double t) const { return norm(eval_derivatives(base, t, 1)[1]); }

    double invert(double s) const {
        const auto it = std::upper_bound(s_knots.begin(), s_knots.end(), s);
        size_t i = it == s_knots.begin() ? 0 : static_cast<size_t>(it - s_knots.begin()) - 1;
        i = std::min(i, t_knots.size() - 2);
        double lo = t_knots[i], hi = t_knots[i + 1];
        double t = lo + (hi - lo) * (s - s_knots[i]) / (s_knots[i + 1] - s_knots[i]);
        for (int it2 = 0; it2 < 60; ++it2) {
            const double g = s_of_t(t) - s;
            if (g > 0) hi = t; else lo = t;
            double next = t - g / speed(t);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t))) return next;
            t = next;
        }
        return t;
    }
};

}  // namespace

Curve3 arc_length_reparametrize(const Curve3& curve, const QuadratureConfig& cfg) {
    const Interval& d = curve.domain();
    const int n = 2048;
    for (int i = 0; i <= n; ++i) {
        const double t = d.lo + i * d.length() / n;
        if (available_order(curve, t) < 1) continue;
        if (norm(eval_derivatives(curve, t, 1)[1]) < curve.speed_floor)
            throw Error(ErrorCode::IrregularCurve, "speed below floor at t=" + std::to_string(t));
    }
    auto tab = std::make_shared<ArcTable>();
    tab->base = curve;
    // Finite-difference speed cannot be stenciled at the ends; integrate the
    // interior and extend linearly there.
    tab->s_of_t = CumulativeIntegral<double>(
        [c = curve](double t) {
            DiffConfig dc;
            const int avail = available_order(c, t, dc);
            if (avail >= 1) return norm(eval_derivatives(c, t, 1, dc)[1]);
            const double h = c.domain().length() * 1e-4 * 2;
            const double tt = std::clamp(t, c.domain().lo + h, c.domain().hi - h);
            return norm(eval_derivatives(c, tt, 1, dc)[1]);
        },
        d, cfg);
    const int knots = tab->s_of_t.panels();
    for (int i = 0; i <= knots; ++i) {
        const double t = i == knots ? d.hi : d.lo + i * d.length() / knots;
        tab->t_knots.push_back(t);
        tab->s_knots.push_back(tab->s_of_t(t));
    }
    const double length = tab->s_knots.back();
    const int order = curve.max_order();
    JetFn fn = [tab, order](double s, int n) {
        const double t = tab->invert(s);
        if (n == 0 || order == 0) return VecJet::constant(tab->base(t), 0);
        // dt/ds = 1/‖γ'(t(s))‖, solved order by order.
        Jet tj = Jet::constant(t, 0);
        for (int k = 1; k <= n; ++k) {
            const VecJet g = tab->base.jet(t, k);
            const Jet v = norm(compose(differentiate(g), tj));
            tj = integrate(Jet::constant(1.0, v.order()) / v, t);
        }
        return compose(tab->base.jet(t, n), tj);
    };
    Curve3 out({0.0, length}, fn, order);
    out.meta = curve.meta;
    out.meta.parameter = "s";
    out.speed_floor = curve.speed_floor;
    for (double sp : curve.singular_points) out.singular_points.push_back(tab->s_of_t(sp));
    return out;
}

Curve3 rigid_transform(const Curve3& curve, const Mat3& rotation, const Vec3& shift) {
    Curve3 base = curve;
    Curve3 out(curve.domain(),
               [base, rotation, shift](double t, int n) {
                   return transform(rotation, shift, n == 0 ? VecJet::constant(base(t), 0) : base.jet(t, n));
               },
               curve.max_order());
    out.speed_floor = curve.speed_floor;
    out.singular_points = curve.singular_points;
    out.signed_speed = curve.signed_speed;
    out.nodes = curve.nodes;
    out.fd_step = curve.fd_step;
    out.meta = curve.meta;
    return out;
}

void SampledCurve::validate() const {
    if (grid.size() != points.size())
        throw Error(ErrorCode::BadParams, "grid and points differ in length");
    if (grid.size() < 2) throw Error(ErrorCode::BadParams, "a sampled curve needs at least two points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw Error(ErrorCode::BadParams, "grid is not strictly increasing");
}

SampledCurve resample(const Curve3& curve, int n) {
    if (n < 2) throw Error(ErrorCode::BadParams, "resample needs n >= 2");
    SampledCurve out;
    const Interval& d = curve.domain();
    const double step = (d.hi - d.lo) / (n - 1);
    out.grid.resize(n);
    out.points.resize(n);
    for (int i = 0; i < n; ++i) {
        out.grid[i] = i + 1 == n ? d.hi : d.lo + i * step;
        out.points[i] = curve(out.grid[i]);
    }
    out.meta = curve.meta;
    out.meta.cusps = curve.singular_points;
    return out;
}

Curve3 from_samples(const SampledCurve& sampled) {
    sampled.validate();
    auto data = std::make_shared<SampledCurve>(sampled);
    JetFn fn = [data](double t, int) {
        const auto& g = data->grid;
        const auto it = std::lower_bound(g.begin(), g.end(), t);
        if (it != g.end() && *it == t) return VecJet::constant(data->points[it - g.begin()], 0);
        const int n = static_cast<int>(g.size());
        const int width = std::min(8, n);
        int first = static_cast<int>(it - g.begin()) - width / 2;
        first = std::clamp(first, 0, n - width);
        std::vector<double> x(g.begin() + first, g.begin() + first + width);
        const auto w = fornberg_weights(t, x, 0);
        Vec3 p{};
        for (int j = 0; j < width; ++j) p += w[0][j] * data->points[first + j];
        return VecJet::constant(p, 0);
    };
    Curve3 c({sampled.grid.front(), sampled.grid.back()}, fn, 0);
    c.nodes = sampled.grid;
    c.fd_step = (sampled.grid.back() - sampled.grid.front()) / static_cast<double>(sampled.grid.size() - 1);
    c.singular_points = sampled.meta.cusps;
    c.meta = sampled.meta;
    return c;
}

}  // namespace kslant
