#include "kslant/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "kslant/bessel.hpp"

namespace kslant {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double eval_component(const TrigComponent& c, double t, int k) {
    double v = 0;
    if (k == 0) v = c.c0 + c.c1 * t;
    if (k == 1) v = c.c1;
    for (const TrigTerm& term : c.terms)
        v += term.amp * std::pow(term.freq, k) * std::sin(term.freq * t + term.phase + k * kHalfPi);
    return v;
}

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::BadParams, what);
}

// amp·cos(freq·s + phase)
struct CosTerm {
    double amp, freq, phase;
};
using Series = std::vector<CosTerm>;

Series operator*(const Series& a, const Series& b) {
    Series r;
    for (const CosTerm& x : a)
        for (const CosTerm& y : b) {
            r.push_back({0.5 * x.amp * y.amp, x.freq + y.freq, x.phase + y.phase});
            r.push_back({0.5 * x.amp * y.amp, x.freq - y.freq, x.phase - y.phase});
        }
    return r;
}

Series operator+(Series a, const Series& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Series scaled(Series a, double s) {
    for (CosTerm& t : a) t.amp *= s;
    return a;
}

struct J3Series {
    std::array<Series, 3> tangent;
};

J3Series build_j3(const GalleryParams& p, int K) {
    require(p.b != 0, "j3 series needs b != 0");
    require(p.w > 0, "j3 series needs w > 0");
    require(p.epsilon == 1 || p.epsilon == -1, "epsilon must be +1 or -1");
    require(std::abs((p.a * p.a + p.b * p.b) * p.w * p.w - 1) <= 1e-12, "j3 series needs (a²+b²)w² = 1");
    require(K >= 0, "truncation must be >= 0");
    const double as = p.epsilon * p.a;
    const double X = as / p.b;
    const double w = p.w;
    const double fphi = p.b * w * w;
    Series C{{bessel_j(0, X), 0, 0}}, S;
    for (int k = 1; k <= K; ++k) {
        C.push_back({2 * (k % 2 ? -1.0 : 1.0) * bessel_j(2 * k, X), 2 * k * fphi, 0});
        S.push_back({2 * (k % 2 ? 1.0 : -1.0) * bessel_j(2 * k - 1, X), (2 * k - 1) * fphi, 0});
    }
    const Series cos_phi{{1, fphi, 0}}, sin_phi{{1, fphi, -kHalfPi}};
    const Series cos_psi{{1, w, 0}}, sin_psi{{1, w, -kHalfPi}};
    const Series D = S * cos_phi, E = S * sin_phi;
    J3Series out;
    out.tangent[0] = scaled(C * cos_psi, -w * as) + scaled(D * cos_psi, w * p.b) + E * sin_psi;
    out.tangent[1] = scaled(C * sin_psi, -w * as) + scaled(D * sin_psi, w * p.b) + scaled(E * cos_psi, -1);
    out.tangent[2] = scaled(C, -w * p.b) + scaled(D, -w * as);
    for (int i = 0; i < 2; ++i)
        for (const CosTerm& t : out.tangent[i])
            if (t.amp != 0 && std::abs(t.freq) < 1e-3 * w)
                throw Error(ErrorCode::ResonantParameters, "a frequency w(1 ± n·bw) is within 1e-3 of zero");
    return out;
}

double integrate_from_zero(const Series& s, double x) {
    double v = 0;
    for (const CosTerm& t : s) {
        if (t.freq == 0)
            v += t.amp * std::cos(t.phase) * x;
        else
            v += t.amp * (std::sin(t.freq * x + t.phase) - std::sin(t.phase)) / t.freq;
    }
    return v;
}

double eval_series(const Series& s, double x, int k) {
    double v = 0;
    for (const CosTerm& t : s) v += t.amp * std::pow(t.freq, k) * std::cos(t.freq * x + t.phase + k * kHalfPi);
    return v;
}

}  // namespace

Curve3 trig_curve(const std::array<TrigComponent, 3>& xyz, Interval domain) {
    return Curve3(domain,
                  [xyz](double t, int order) {
                      VecJet j;
                      j.c.resize(order + 1);
                      for (int k = 0; k <= order; ++k)
                          j.c[k] = Vec3{eval_component(xyz[0], t, k), eval_component(xyz[1], t, k),
                                        eval_component(xyz[2], t, k)} /
                                   factorial(k);
                      return j;
                  },
                  kAnyOrder);
}

Curve3 circle(const Vec3& a_vec, double r, bool spherical, std::optional<Interval> domain) {
    require(r > 0, "circle radius must be positive");
    const double a = norm(a_vec);
    if (spherical) require(std::abs(a * a + r * r - 1) <= 1e-12, "spherical circle needs ‖a‖² + r² = 1");
    // Orthonormal e1, e2 spanning the plane normal to a_vec, oriented so that
    // a_vec = (0,0,a) gives (r cos ws, r sin ws, a).
    Vec3 n = a > 0 ? a_vec / a : Vec3{0, 0, 1};
    const Vec3 helper = std::abs(n.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 e1 = normalized(cross(helper, n));
    if (std::abs(n.z) >= 0.9) e1 = normalized(Vec3{n.z, 0, -n.x});
    const Vec3 e2 = cross(n, e1);
    const double w = 1 / r;
    std::array<TrigComponent, 3> c;
    for (int i = 0; i < 3; ++i) {
        c[i].c0 = a_vec[i];
        c[i].terms = {{r * e1[i], w, kHalfPi}, {r * e2[i], w, 0}};
    }
    Curve3 out = trig_curve(c, domain.value_or(Interval{0, 2 * kPi * r}));
    out.meta.seed = "circle";
    out.meta.parameter = "s";
    out.meta.extra = {{"a_vec", {a_vec.x, a_vec.y, a_vec.z}}, {"r", r}};
    return out;
}

Curve3 example31_circle() {
    const double k = 1 / std::sqrt(2.0);
    std::array<TrigComponent, 3> c;
    c[0].terms = {{-k, 2, 0}};
    c[1].terms = {{k, 2, 0}};
    c[2].terms = {{1, 2, kHalfPi}};
    Curve3 out = trig_curve(c, {0, kPi});
    out.meta.seed = "example31";
    return out;
}

Curve3 spherical_helix(double a, double r, double theta0, std::optional<Interval> domain) {
    require(std::abs(a * a + r * r - 1) <= 1e-12, "spherical helix needs a² + r² = 1");
    require(a != 0 && std::abs(a) != 1 && r > 0, "spherical helix needs 0 < |a| < 1");
    const double w = 1 / r;
    const double fp = w * (a + 1), fm = w * (a - 1);
    std::array<TrigComponent, 3> c;
    c[0].terms = {{0.5 * r / fp, fp, theta0}, {0.5 * r / fm, fm, theta0}};
    c[1].terms = {{0.5 * r / fp, fp, theta0 - kHalfPi}, {0.5 * r / fm, fm, theta0 + kHalfPi}};
    c[2].terms = {{r, a * w, theta0}};
    Curve3 out = trig_curve(c, domain.value_or(Interval{0, 4 * kPi * r}));
    // α' = cos(aws + θ0)·γ, so the speed vanishes where the cosine does.
    out.signed_speed = [=](double s) { return std::cos(a * w * s + theta0); };
    const Interval& d = out.domain();
    const double step = kPi / std::abs(a * w);
    const double first = (kHalfPi - theta0) / (a * w);
    for (double n = std::ceil((d.lo - first) / step); first + n * step <= d.hi; n += 1) {
        const double s = first + n * step;
        if (s >= d.lo) out.singular_points.push_back(s);
    }
    std::sort(out.singular_points.begin(), out.singular_points.end());
    out.meta.cusps = out.singular_points;
    out.meta.seed = "spherical-helix";
    out.meta.parameter = "s";
    out.meta.extra = {{"a", a}, {"r", r}, {"theta0", theta0}};
    return out;
}

Curve3 circular_helix(double a, double b, std::optional<Interval> domain) {
    require(a > 0, "helix needs a > 0");
    require(b != 0, "helix needs b != 0");
    const double w = 1 / std::sqrt(a * a + b * b);
    std::array<TrigComponent, 3> c;
    c[0].terms = {{a, w, kHalfPi}};
    c[1].terms = {{a, w, 0}};
    c[2].c1 = b * w;
    Curve3 out = trig_curve(c, domain.value_or(Interval{0, 2 * kPi / w}));
    out.meta.seed = "circular-helix";
    out.meta.parameter = "s";
    out.meta.extra = {{"a", a}, {"b", b}};
    return out;
}

Curve3 constant_precession(double a, double b, double w, int epsilon, std::optional<Interval> domain) {
    require(a > 0, "constant precession needs a > 0");
    require(b != 0, "constant precession needs b != 0 (z divides by bw)");
    require(w > 0, "constant precession needs w > 0");
    require(epsilon == 1 || epsilon == -1, "epsilon must be +1 or -1");
    require(std::abs(1 - b * w) > 1e-12, "constant precession needs bw != 1");
    const double e = epsilon;
    const double fp = w * (1 + b * w), fm = w * (1 - b * w);
    const double k = e * a * a * w / 2;
    std::array<TrigComponent, 3> c;
    c[0].terms = {{k / ((1 + b * w) * (1 + b * w)), fp, 0}, {k / ((1 - b * w) * (1 - b * w)), fm, 0}};
    c[1].terms = {{-k / ((1 + b * w) * (1 + b * w)), fp, kHalfPi}, {-k / ((1 - b * w) * (1 - b * w)), fm, kHalfPi}};
    c[2].terms = {{-e * a / (b * w), b * w * w, kHalfPi}};
    Curve3 out = trig_curve(c, domain.value_or(Interval{0, 2 * kPi}));
    out.meta.seed = "constant-precession";
    out.meta.parameter = "s";
    out.meta.extra = {{"a", a}, {"b", b}, {"w", w}, {"epsilon", epsilon}};
    return out;
}

Vec3 j3_partial_series(const GalleryParams& p, int K, double s) {
    const J3Series js = build_j3(p, K);
    return {integrate_from_zero(js.tangent[0], s), integrate_from_zero(js.tangent[1], s),
            integrate_from_zero(js.tangent[2], s)};
}

Curve3 j3_series_curve(const GalleryParams& p, int K, std::optional<Interval> domain) {
    auto js = std::make_shared<const J3Series>(build_j3(p, K));
    Curve3 out(domain.value_or(Interval{0, 2 * kPi}),
               [js](double s, int order) {
                   VecJet j;
                   j.c.resize(order + 1);
                   for (int i = 0; i < 3; ++i) j.c[0][i] = integrate_from_zero(js->tangent[i], s);
                   for (int k = 1; k <= order; ++k)
                       for (int i = 0; i < 3; ++i) j.c[k][i] = eval_series(js->tangent[i], s, k - 1) / factorial(k);
                   return j;
               },
               kAnyOrder);
    out.meta.seed = "j3-series";
    out.meta.parameter = "s";
    out.meta.extra = {{"a", p.a}, {"b", p.b}, {"w", p.w}, {"epsilon", p.epsilon}, {"K", K}};
    return out;
}

double j3_secular_slope(const GalleryParams& p) {
    const double as = p.epsilon * p.a;
    const double X = as / p.b;
    return -p.w * (p.b * bessel_j(0, X) + as * bessel_j(1, X));
}

std::vector<double> j3_phases(const GalleryParams& p) {
    const double as = p.epsilon * p.a;
    return {std::atan2(p.b * p.w, as * p.w), 0.0, -as / p.b};
}

}  // namespace kslant
