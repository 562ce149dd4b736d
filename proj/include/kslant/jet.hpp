#pragma once

// Truncated Taylor series. c[i] is f^(i)(t0)/i!, so the order is c.size()-1.
// Binary operations truncate to the smaller order.

#include <vector>

#include "kslant/vec.hpp"

namespace kslant {

struct Jet {
    std::vector<double> c;

    Jet() = default;
    explicit Jet(std::vector<double> coeffs) : c(std::move(coeffs)) {}
    static Jet constant(double v, int order);
    static Jet variable(double t0, int order);

    int order() const { return static_cast<int>(c.size()) - 1; }
    double value() const { return c.at(0); }
    double derivative(int k) const;
    Jet truncated(int order) const;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, const Jet& a);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(const Jet& a, double s);

Jet sqrt(const Jet& a);
// Joint recurrence; returns {sin, cos}.
std::pair<Jet, Jet> sincos(const Jet& a);
Jet differentiate(const Jet& a);
// Antiderivative with the given value at t0.
Jet integrate(const Jet& a, double value0);

struct VecJet {
    std::vector<Vec3> c;

    VecJet() = default;
    explicit VecJet(std::vector<Vec3> coeffs) : c(std::move(coeffs)) {}
    static VecJet constant(const Vec3& v, int order);
    static VecJet from_derivatives(const std::vector<Vec3>& d);

    int order() const { return static_cast<int>(c.size()) - 1; }
    Vec3 value() const { return c.at(0); }
    Vec3 derivative(int k) const;
    std::vector<Vec3> derivatives() const;
    Jet component(int i) const;
    VecJet truncated(int order) const;
};

VecJet operator+(const VecJet& a, const VecJet& b);
VecJet operator-(const VecJet& a, const VecJet& b);
VecJet operator-(const VecJet& a);
VecJet operator*(const Jet& s, const VecJet& v);
VecJet operator*(double s, const VecJet& v);
Jet dot(const VecJet& a, const VecJet& b);
VecJet cross(const VecJet& a, const VecJet& b);
Jet norm(const VecJet& a);
VecJet normalized(const VecJet& a);
VecJet differentiate(const VecJet& a);
VecJet integrate(const VecJet& a, const Vec3& value0);
// Rotation-and-shift applied coefficientwise: the constant term is shifted.
VecJet transform(const Mat3& r, const Vec3& shift, const VecJet& a);

// f(g(t)) where `outer` is the jet of f at g(t0) and `inner` the jet of g at t0.
Jet compose(const Jet& outer, const Jet& inner);
VecJet compose(const VecJet& outer, const Jet& inner);

}  // namespace kslant
