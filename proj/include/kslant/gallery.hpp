#pragma once

#include <optional>

#include "kslant/curve.hpp"

namespace kslant {

struct GalleryParams {
    double a = 0.6;
    double r = 0.8;
    double w = 1.25;
    double b = 0.8;
    int epsilon = 1;
    double theta0 = 0;
};

// Each component is c0 + c1·t + Σ amp·sin(freq·t + phase); derivatives of any order are exact.
struct TrigTerm {
    double amp = 0, freq = 0, phase = 0;
};
struct TrigComponent {
    double c0 = 0, c1 = 0;
    std::vector<TrigTerm> terms;
};
Curve3 trig_curve(const std::array<TrigComponent, 3>& xyz, Interval domain);

// Unit-speed circle of radius r centred at a_vec, in the plane normal to a_vec
// (the xy-plane when a_vec is zero). With `spherical` the circle must lie on
// the unit sphere. Default domain is one period.
Curve3 circle(const Vec3& a_vec, double r, bool spherical = true, std::optional<Interval> domain = std::nullopt);
// γ(t) = (-sin 2t/√2, sin 2t/√2, cos 2t) on [0, π]: a great circle with speed 2.
Curve3 example31_circle();
// Closed form of I(S¹((0,0,a), r)) with phase θ0; default domain [0, 4πr].
Curve3 spherical_helix(double a, double r, double theta0, std::optional<Interval> domain = std::nullopt);
// (a cos ws, a sin ws, b w s) with w = 1/√(a²+b²); default domain one turn.
Curve3 circular_helix(double a, double b, std::optional<Interval> domain = std::nullopt);
// Closed-form constant-precession curve, congruent to J²(circle); default domain [0, 2π].
Curve3 constant_precession(double a, double b, double w, int epsilon,
                           std::optional<Interval> domain = std::nullopt);

// Position of J³(circle of radius 1/w) with phases (c0, 0, -εa/b), cos c0 = εaw,
// sin c0 = bw, from the Jacobi-Anger expansion of the level-3 tangent truncated
// at K and integrated term by term. Needs (a²+b²)w² = 1.
Vec3 j3_partial_series(const GalleryParams& p, int K, double s);
Curve3 j3_series_curve(const GalleryParams& p, int K, std::optional<Interval> domain = std::nullopt);
// Mean z-velocity of that curve: -w(b J0(X) + εa J1(X)), X = εa/b.
double j3_secular_slope(const GalleryParams& p);
// Phase vector reproducing j3_partial_series with chain_J on circle(0, 1/w, planar).
std::vector<double> j3_phases(const GalleryParams& p);

}  // namespace kslant
