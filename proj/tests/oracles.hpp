#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "kslant/curve.hpp"
#include "kslant/error.hpp"

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// J_n(x) = (1/2π) ∫_0^{2π} cos(nφ − x sin φ) dφ by the periodic trapezoid rule,
// which converges geometrically for this integrand.
inline double bessel_integral(int n, double x, int points = 256) {
    double s = 0;
    for (int i = 0; i < points; ++i) {
        const double phi = 2 * pi * i / points;
        s += std::cos(n * phi - x * std::sin(phi));
    }
    return s / points;
}

inline std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
    return g;
}

inline std::vector<double> grid(const kslant::Interval& d, int n) { return grid(d.lo, d.hi, n); }

inline double max_distance(const kslant::Curve3& a, const kslant::Curve3& b, const std::vector<double>& ts) {
    double m = 0;
    for (double t : ts) m = std::max(m, kslant::norm(a(t) - b(t)));
    return m;
}

inline double max_distance(const std::function<kslant::Vec3(double)>& a, const std::function<kslant::Vec3(double)>& b,
                           const std::vector<double>& ts) {
    double m = 0;
    for (double t : ts) m = std::max(m, kslant::norm(a(t) - b(t)));
    return m;
}

// Closed form of I(S¹((0,0,a), r)), typed independently of the library.
inline kslant::Vec3 spherical_helix(double a, double r, double th, double s) {
    const double w = 1 / r;
    const double p = w * (a + 1), m = w * (a - 1);
    return {0.5 * r * (std::sin(p * s + th) / p + std::sin(m * s + th) / m),
            0.5 * r * (-std::cos(p * s + th) / p + std::cos(m * s + th) / m), r * std::sin(a * w * s + th)};
}

// (a cos ws, a sin ws, b w s) and its first three derivatives.
struct Helix {
    double a, b, w;
    kslant::Vec3 d(int k, double s) const {
        const double c = std::cos(w * s), sn = std::sin(w * s), wk = std::pow(w, k);
        switch (k % 4) {
            case 0: return k == 0 ? kslant::Vec3{a * c, a * sn, b * w * s} : kslant::Vec3{a * wk * c, a * wk * sn, 0};
            case 1: return {-a * wk * sn, a * wk * c, k == 1 ? b * w : 0};
            case 2: return {-a * wk * c, -a * wk * sn, 0};
            default: return {a * wk * sn, -a * wk * c, 0};
        }
    }
};

// Error code raised by f, or nullopt when it returns normally.
template <class F>
std::optional<kslant::ErrorCode> code_of(F&& f) {
    try {
        f();
    } catch (const kslant::Error& e) {
        return e.code;
    }
    return std::nullopt;
}

// log2 of successive error ratios for a halving step.
inline double observed_order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

}  // namespace oracle
