#pragma once

namespace kslant {

// Bessel function of the first kind by the ascending series, for 0 <= n <= 64
// and |x| <= 30. Outside that range RangeExceeded is raised.
double bessel_j(int n, double x);

struct BesselTruncation {
    int K = 30;
    double tail_bound = 0;
};

// cos(x cos φ) = J0(x) + 2 Σ_{k=1}^{K} (-1)^k J_{2k}(x) cos(2kφ)
double cos_expansion(double x, double phi, int K = 30);
// sin(x cos φ) = 2 Σ_{k=1}^{K} (-1)^{k-1} J_{2k-1}(x) cos((2k-1)φ)
double sin_expansion(double x, double phi, int K = 30);
// Bound on the terms dropped by either expansion at truncation K.
BesselTruncation expansion_tail(double x, int K);

}  // namespace kslant
