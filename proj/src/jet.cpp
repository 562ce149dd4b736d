#include "kslant/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kslant {

namespace {

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

template <class T>
std::vector<T> zip(const std::vector<T>& a, const std::vector<T>& b, auto op) {
    const size_t n = std::min(a.size(), b.size());
    std::vector<T> r(n);
    for (size_t i = 0; i < n; ++i) r[i] = op(a[i], b[i]);
    return r;
}

}  // namespace

Jet Jet::constant(double v, int order) {
    Jet j;
    j.c.assign(order + 1, 0.0);
    j.c[0] = v;
    return j;
}

Jet Jet::variable(double t0, int order) {
    Jet j = constant(t0, order);
    if (order >= 1) j.c[1] = 1.0;
    return j;
}

double Jet::derivative(int k) const { return c.at(k) * factorial(k); }

Jet Jet::truncated(int order) const {
    if (order > this->order()) throw std::logic_error("jet order too low");
    return Jet({c.begin(), c.begin() + order + 1});
}

Jet operator+(const Jet& a, const Jet& b) { return Jet(zip(a.c, b.c, std::plus<>())); }
Jet operator-(const Jet& a, const Jet& b) { return Jet(zip(a.c, b.c, std::minus<>())); }
Jet operator-(const Jet& a) { return -1.0 * a; }

Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.c[0] += s;
    return r;
}

Jet operator*(double s, const Jet& a) {
    Jet r = a;
    for (double& v : r.c) v *= s;
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    const size_t n = std::min(a.c.size(), b.c.size());
    Jet r;
    r.c.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k <= i; ++k) r.c[i] += a.c[k] * b.c[i - k];
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    const size_t n = std::min(a.c.size(), b.c.size());
    Jet y;
    y.c.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double s = a.c[i];
        for (size_t k = 1; k <= i; ++k) s -= b.c[k] * y.c[i - k];
        y.c[i] = s / b.c[0];
    }
    return y;
}

Jet sqrt(const Jet& a) {
    const size_t n = a.c.size();
    Jet r;
    r.c.assign(n, 0.0);
    r.c[0] = std::sqrt(a.c[0]);
    for (size_t i = 1; i < n; ++i) {
        double s = a.c[i];
        for (size_t k = 1; k < i; ++k) s -= r.c[k] * r.c[i - k];
        r.c[i] = s / (2 * r.c[0]);
    }
    return r;
}

std::pair<Jet, Jet> sincos(const Jet& a) {
    const size_t n = a.c.size();
    Jet s, c;
    s.c.assign(n, 0.0);
    c.c.assign(n, 0.0);
    s.c[0] = std::sin(a.c[0]);
    c.c[0] = std::cos(a.c[0]);
    for (size_t i = 1; i < n; ++i) {
        double ss = 0, cc = 0;
        for (size_t k = 1; k <= i; ++k) {
            ss += k * a.c[k] * c.c[i - k];
            cc -= k * a.c[k] * s.c[i - k];
        }
        s.c[i] = ss / i;
        c.c[i] = cc / i;
    }
    return {s, c};
}

Jet differentiate(const Jet& a) {
    if (a.c.size() < 2) throw std::logic_error("cannot differentiate an order-0 jet");
    Jet r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 0; i + 1 < a.c.size(); ++i) r.c[i] = (i + 1) * a.c[i + 1];
    return r;
}

Jet integrate(const Jet& a, double value0) {
    Jet r;
    r.c.resize(a.c.size() + 1);
    r.c[0] = value0;
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i + 1] = a.c[i] / (i + 1);
    return r;
}

VecJet VecJet::constant(const Vec3& v, int order) {
    VecJet j;
    j.c.assign(order + 1, Vec3{});
    j.c[0] = v;
    return j;
}

VecJet VecJet::from_derivatives(const std::vector<Vec3>& d) {
    VecJet j;
    j.c.resize(d.size());
    for (size_t i = 0; i < d.size(); ++i) j.c[i] = d[i] / factorial(static_cast<int>(i));
    return j;
}

Vec3 VecJet::derivative(int k) const { return c.at(k) * factorial(k); }

std::vector<Vec3> VecJet::derivatives() const {
    std::vector<Vec3> d(c.size());
    for (size_t i = 0; i < c.size(); ++i) d[i] = derivative(static_cast<int>(i));
    return d;
}

Jet VecJet::component(int i) const {
    Jet j;
    j.c.resize(c.size());
    for (size_t k = 0; k < c.size(); ++k) j.c[k] = c[k][i];
    return j;
}

VecJet VecJet::truncated(int order) const {
    if (order > this->order()) throw std::logic_error("jet order too low");
    return VecJet({c.begin(), c.begin() + order + 1});
}

VecJet operator+(const VecJet& a, const VecJet& b) { return VecJet(zip(a.c, b.c, std::plus<>())); }
VecJet operator-(const VecJet& a, const VecJet& b) { return VecJet(zip(a.c, b.c, std::minus<>())); }
VecJet operator-(const VecJet& a) { return -1.0 * a; }

VecJet operator*(double s, const VecJet& v) {
    VecJet r = v;
    for (Vec3& x : r.c) x *= s;
    return r;
}

VecJet operator*(const Jet& s, const VecJet& v) {
    const size_t n = std::min(s.c.size(), v.c.size());
    VecJet r;
    r.c.assign(n, Vec3{});
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k <= i; ++k) r.c[i] += s.c[k] * v.c[i - k];
    return r;
}

Jet dot(const VecJet& a, const VecJet& b) {
    const size_t n = std::min(a.c.size(), b.c.size());
    Jet r;
    r.c.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k <= i; ++k) r.c[i] += dot(a.c[k], b.c[i - k]);
    return r;
}

VecJet cross(const VecJet& a, const VecJet& b) {
    const size_t n = std::min(a.c.size(), b.c.size());
    VecJet r;
    r.c.assign(n, Vec3{});
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k <= i; ++k) r.c[i] += cross(a.c[k], b.c[i - k]);
    return r;
}

Jet norm(const VecJet& a) { return sqrt(dot(a, a)); }

VecJet normalized(const VecJet& a) {
    const Jet inv = Jet::constant(1.0, a.order()) / norm(a);
    return inv * a;
}

VecJet differentiate(const VecJet& a) {
    if (a.c.size() < 2) throw std::logic_error("cannot differentiate an order-0 jet");
    VecJet r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 0; i + 1 < a.c.size(); ++i) r.c[i] = static_cast<double>(i + 1) * a.c[i + 1];
    return r;
}

VecJet integrate(const VecJet& a, const Vec3& value0) {
    VecJet r;
    r.c.resize(a.c.size() + 1);
    r.c[0] = value0;
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i + 1] = a.c[i] / static_cast<double>(i + 1);
    return r;
}

VecJet transform(const Mat3& r, const Vec3& shift, const VecJet& a) {
    VecJet out = a;
    for (Vec3& v : out.c) v = r * v;
    out.c[0] += shift;
    return out;
}

Jet compose(const Jet& outer, const Jet& inner) {
    const int n = std::min(outer.order(), inner.order());
    Jet d = inner.truncated(n);
    d.c[0] = 0.0;
    // Horner in powers of (g - g0).
    Jet r = Jet::constant(outer.c[n], n);
    for (int i = n - 1; i >= 0; --i) r = (r * d) + outer.c[i];
    return r;
}

VecJet compose(const VecJet& outer, const Jet& inner) {
    const int n = std::min(outer.order(), inner.order());
    Jet d = inner.truncated(n);
    d.c[0] = 0.0;
    VecJet r = VecJet::constant(outer.c[n], n);
    for (int i = n - 1; i >= 0; --i) {
        r = d * r;
        r.c[0] += outer.c[i];
    }
    return r;
}

}  // namespace kslant
