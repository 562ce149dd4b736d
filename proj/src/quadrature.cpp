#include "kslant/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

namespace kslant {

int QuadratureConfig::panel_count(const Interval& d) const {
    if (panels > 0) return panels;
    return std::max(min_panels, static_cast<int>(std::ceil(d.length() * panels_per_unit)));
}

std::vector<double> legendre_values(int n, double x) {
    std::vector<double> p(n + 1);
    p[0] = 1.0;
    if (n >= 1) p[1] = x;
    for (int k = 1; k < n; ++k) p[k + 1] = ((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1);
    return p;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw Error(ErrorCode::BadParams, "Gauss-Legendre needs at least one node");
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            const std::vector<double> p = legendre_values(n, x);
            dp = n * (x * p[n] - p[n - 1]) / (x * x - 1);
            const double dx = p[n] / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const std::vector<double> p = legendre_values(n, x);
        dp = n * (x * p[n] - p[n - 1]) / (x * x - 1);
        g.x[i] = x;
        g.w[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(g)).first->second;
}

std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size()) - 1;
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

}  // namespace kslant
