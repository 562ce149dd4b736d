#include "kslant/bessel.hpp"

#include <cmath>
#include <string>

#include "kslant/error.hpp"

namespace kslant {

double bessel_j(int n, double x) {
    if (n < 0 || n > 64 || !(std::abs(x) <= 30))
        throw Error(ErrorCode::RangeExceeded, "bessel_j(" + std::to_string(n) + ", " + std::to_string(x) + ")");
    if (x < 0) return (n % 2 ? -1.0 : 1.0) * bessel_j(n, -x);
    const long double h = 0.5L * x;
    long double term = 1;
    for (int i = 1; i <= n; ++i) term *= h / i;
    long double sum = term;
    const long double h2 = h * h;
    for (int k = 1; k < 500; ++k) {
        term *= -h2 / (static_cast<long double>(k) * (k + n));
        sum += term;
        if (k > h && std::abs(term) <= 1e-21L * std::abs(sum)) break;
        if (term == 0) break;
    }
    return static_cast<double>(sum);
}

double cos_expansion(double x, double phi, int K) {
    double s = bessel_j(0, x);
    for (int k = 1; k <= K; ++k) s += 2 * (k % 2 ? -1.0 : 1.0) * bessel_j(2 * k, x) * std::cos(2 * k * phi);
    return s;
}

double sin_expansion(double x, double phi, int K) {
    double s = 0;
    for (int k = 1; k <= K; ++k)
        s += 2 * (k % 2 ? 1.0 : -1.0) * bessel_j(2 * k - 1, x) * std::cos((2 * k - 1) * phi);
    return s;
}

BesselTruncation expansion_tail(double x, int K) {
    // |J_n(x)| <= (|x|/2)^n / n!, summed until negligible.
    BesselTruncation b;
    b.K = K;
    const double h = 0.5 * std::abs(x);
    double term = 1;
    for (int n = 1; n <= 2 * K; ++n) term *= h / n;
    double tail = 0;
    for (int n = 2 * K + 1; n < 2 * K + 200; ++n) {
        term *= h / n;
        tail += 2 * term;
        if (term < 1e-300) break;
    }
    b.tail_bound = tail;
    return b;
}

}  // namespace kslant
