#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "kslant/error.hpp"
#include "kslant/vec.hpp"

namespace kslant {

struct Interval {
    double lo = 0, hi = 1;

    double length() const { return hi - lo; }
    bool contains(double t, double slack = 0) const { return t >= lo - slack && t <= hi + slack; }
};

enum class Rule { GaussLegendre, Simpson };

struct QuadratureConfig {
    Rule rule = Rule::GaussLegendre;
    int panels = 0;                 // 0 picks max(min_panels, ceil(length * panels_per_unit))
    double panels_per_unit = 64;
    int min_panels = 16;
    int nodes = 8;                  // Gauss-Legendre nodes per panel
    bool richardson = false;

    int panel_count(const Interval& d) const;
};

struct GaussRule {
    std::vector<double> x, w;
};
// Cached nodes and weights on [-1, 1].
const GaussRule& gauss_legendre(int n);
// P_0..P_n at x.
std::vector<double> legendre_values(int n, double x);

namespace detail {
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const Vec3& v) { return isfinite(v); }
}  // namespace detail

// F(t) = integral of f from domain.lo to t. Inside a panel F integrates the
// panel's interpolant exactly, so F is smooth to the rule's accuracy.
template <class V>
class CumulativeIntegral {
public:
    CumulativeIntegral() = default;
    CumulativeIntegral(const std::function<V(double)>& f, Interval domain, QuadratureConfig cfg = {})
        : domain_(domain), cfg_(cfg) {
        if (!(domain.hi > domain.lo)) throw Error(ErrorCode::BadParams, "empty integration interval");
        coarse_ = build(f, cfg.panel_count(domain));
        if (cfg.richardson) fine_ = build(f, 2 * cfg.panel_count(domain));
    }

    V operator()(double t) const {
        if (!cfg_.richardson) return eval(coarse_, t);
        const V c = eval(coarse_, t), f = eval(fine_, t);
        const double p = cfg_.rule == Rule::Simpson ? 4.0 : 2.0 * cfg_.nodes;
        return f + (1.0 / (std::pow(2.0, p) - 1.0)) * (f - c);
    }

    V total() const { return (*this)(domain_.hi); }
    int panels() const { return coarse_.n; }
    const Interval& domain() const { return domain_; }

private:
    struct Table {
        int n = 0;
        double h = 0;
        std::vector<V> prefix;   // F at panel starts, size n+1
        std::vector<V> coef;     // per panel, `stride` coefficients
        int stride = 0;
    };

    Table build(const std::function<V(double)>& f, int n) const {
        Table tb;
        tb.n = n;
        tb.h = domain_.length() / n;
        tb.prefix.assign(n + 1, V{});
        auto sample = [&](double t) {
            V v = f(t);
            if (!detail::finite(v))
                throw Error(ErrorCode::NonFiniteSample, "integrand is not finite at t=" + std::to_string(t));
            return v;
        };
        if (cfg_.rule == Rule::Simpson) {
            tb.stride = 3;
            tb.coef.resize(3 * n);
            for (int i = 0; i < n; ++i) {
                const double a = domain_.lo + i * tb.h;
                const V f0 = sample(a), fm = sample(a + 0.5 * tb.h), f1 = sample(i + 1 == n ? domain_.hi : a + tb.h);
                tb.coef[3 * i] = fm;
                tb.coef[3 * i + 1] = 0.25 * (f1 - f0);
                tb.coef[3 * i + 2] = (1.0 / 6.0) * (f1 - 2.0 * fm + f0);
                tb.prefix[i + 1] = tb.prefix[i] + (tb.h / 6.0) * (f0 + 4.0 * fm + f1);
            }
            return tb;
        }
        const GaussRule& g = gauss_legendre(cfg_.nodes);
        const int q = cfg_.nodes;
        std::vector<std::vector<double>> P(q);
        for (int j = 0; j < q; ++j) P[j] = legendre_values(q - 1, g.x[j]);
        tb.stride = q;
        tb.coef.assign(static_cast<size_t>(q) * n, V{});
        std::vector<V> fv(q);
        for (int i = 0; i < n; ++i) {
            const double mid = domain_.lo + (i + 0.5) * tb.h;
            for (int j = 0; j < q; ++j) fv[j] = sample(mid + 0.5 * tb.h * g.x[j]);
            for (int k = 0; k < q; ++k) {
                V a{};
                for (int j = 0; j < q; ++j) a = a + (g.w[j] * P[j][k]) * fv[j];
                // Legendre projection coefficient, pre-divided for the antiderivative.
                tb.coef[static_cast<size_t>(i) * q + k] = (0.5 * (2 * k + 1) / (k == 0 ? 1.0 : 2 * k + 1)) * a;
            }
            tb.prefix[i + 1] = tb.prefix[i] + (tb.h) * tb.coef[static_cast<size_t>(i) * q];
        }
        return tb;
    }

    V eval(const Table& tb, double t) const {
        if (!domain_.contains(t, 1e-12 * std::max(1.0, domain_.length())))
            throw Error(ErrorCode::OutOfDomain, "t=" + std::to_string(t) + " outside integration interval");
        t = std::clamp(t, domain_.lo, domain_.hi);
        int i = static_cast<int>(std::floor((t - domain_.lo) / tb.h));
        i = std::clamp(i, 0, tb.n - 1);
        const double a = domain_.lo + i * tb.h;
        const double xi = std::clamp(2.0 * (t - a) / tb.h - 1.0, -1.0, 1.0);
        const V* c = &tb.coef[static_cast<size_t>(i) * tb.stride];
        if (cfg_.rule == Rule::Simpson) {
            const V part = (xi + 1) * c[0] + (xi * xi - 1) * c[1] + (xi * xi * xi + 1) * c[2];
            return tb.prefix[i] + (0.5 * tb.h) * part;
        }
        const std::vector<double> P = legendre_values(tb.stride, xi);
        V part = (xi + 1) * c[0];
        for (int k = 1; k < tb.stride; ++k) part = part + (P[k + 1] - P[k - 1]) * c[k];
        return tb.prefix[i] + (0.5 * tb.h) * part;
    }

    Interval domain_;
    QuadratureConfig cfg_;
    Table coarse_, fine_;
};

// Weights for the derivatives 0..m at z from values at nodes x (Fornberg).
// Result[k][j] multiplies f(x[j]) for the k-th derivative.
std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x, int m);

}  // namespace kslant
