#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kslant/jet.hpp"
#include "oracles.hpp"

using namespace kslant;

namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace

TEST_CASE("variable and constant jets") {
    const Jet x = Jet::variable(2.5, 4);
    CHECK(x.order() == 4);
    CHECK(x.value() == 2.5);
    CHECK(x.derivative(1) == 1);
    CHECK(x.derivative(2) == 0);
    const Jet c = Jet::constant(3, 2);
    CHECK(c.derivative(0) == 3);
    CHECK(c.derivative(1) == 0);
}

TEST_CASE("products and quotients match symbolic derivatives") {
    const double t0 = 0.7;
    const Jet x = Jet::variable(t0, 6);
    const Jet p = (x + 1.0) * (x + 1.0) * (x + 1.0);
    CHECK(p.derivative(0) == doctest::Approx(std::pow(t0 + 1, 3)));
    CHECK(p.derivative(1) == doctest::Approx(3 * std::pow(t0 + 1, 2)));
    CHECK(p.derivative(2) == doctest::Approx(6 * (t0 + 1)));
    CHECK(p.derivative(3) == doctest::Approx(6));
    CHECK(std::abs(p.derivative(4)) < 1e-12);

    const Jet q = Jet::constant(1, 6) / (x + 1.0);
    for (int k = 0; k <= 6; ++k) {
        const double expect = std::pow(-1.0, k) * factorial(k) / std::pow(1 + t0, k + 1);
        CHECK(q.derivative(k) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("sqrt matches the power rule") {
    const double t0 = 2.0;
    const Jet s = sqrt(Jet::variable(t0, 5));
    double coef = 1;
    for (int k = 0; k <= 5; ++k) {
        CHECK(s.derivative(k) == doctest::Approx(coef * std::pow(t0, 0.5 - k)).epsilon(1e-12));
        coef *= 0.5 - k;
    }
}

TEST_CASE("sincos derivatives cycle") {
    const double t0 = 0.3;
    const auto [s, c] = sincos(Jet::variable(t0, 8));
    for (int k = 0; k <= 8; ++k) {
        CHECK(s.derivative(k) == doctest::Approx(std::sin(t0 + k * oracle::pi / 2)).epsilon(1e-12));
        CHECK(c.derivative(k) == doctest::Approx(std::cos(t0 + k * oracle::pi / 2)).epsilon(1e-12));
    }
}

TEST_CASE("sin(t^2) by composition and by direct propagation agree") {
    const double t0 = 0.9;
    const Jet x = Jet::variable(t0, 6);
    const Jet inner = x * x;
    const Jet outer = sincos(Jet::variable(t0 * t0, 6)).first;
    const Jet a = compose(outer, inner);
    const Jet b = sincos(inner).first;
    for (int k = 0; k <= 6; ++k) CHECK(a.derivative(k) == doctest::Approx(b.derivative(k)).epsilon(1e-11));
    // d/dt sin(t²) = 2t cos(t²)
    CHECK(a.derivative(1) == doctest::Approx(2 * t0 * std::cos(t0 * t0)));
}

TEST_CASE("integrate and differentiate are inverse") {
    const Jet x = Jet::variable(0.4, 7);
    const Jet f = sincos(x).second * (x + 2.0);
    const Jet F = integrate(f, 1.5);
    CHECK(F.value() == 1.5);
    const Jet back = differentiate(F);
    for (int k = 0; k <= f.order(); ++k) CHECK(back.derivative(k) == doctest::Approx(f.derivative(k)).epsilon(1e-12));
}

TEST_CASE("truncation keeps the leading coefficients") {
    const Jet x = Jet::variable(1, 5);
    const Jet t = (x * x).truncated(2);
    CHECK(t.order() == 2);
}

TEST_CASE("vector jets reproduce helix derivatives") {
    const oracle::Helix h{0.6, 0.8, 1.0};
    const double s0 = 1.3;
    std::vector<Vec3> d;
    for (int k = 0; k <= 5; ++k) d.push_back(h.d(k, s0));
    const VecJet g = VecJet::from_derivatives(d);
    for (int k = 0; k <= 5; ++k) CHECK(norm(g.derivative(k) - d[k]) < 1e-13);

    // Unit speed: the norm of γ' is constant to every order.
    const Jet sp = norm(differentiate(g));
    CHECK(sp.value() == doctest::Approx(1.0));
    for (int k = 1; k <= sp.order(); ++k) CHECK(std::abs(sp.derivative(k)) < 1e-12);

    // T × T' has length κ = a w².
    const VecJet T = normalized(differentiate(g));
    CHECK(norm(cross(T, differentiate(T)).value()) == doctest::Approx(0.6));
    CHECK(dot(T, T).value() == doctest::Approx(1.0));
    CHECK(T.component(2).value() == doctest::Approx(0.8));
}

TEST_CASE("rigid transform of a vector jet shifts only the value") {
    const VecJet g = VecJet::from_derivatives({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const Mat3 R{{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};
    const VecJet h = transform(R, {1, 2, 3}, g);
    CHECK(h.value() == Vec3{1, 3, 3});
    CHECK(h.derivative(1) == Vec3{-1, 0, 0});
    CHECK(h.derivative(2) == Vec3{0, 0, 1});
}

TEST_CASE("vector integration inverts differentiation") {
    const oracle::Helix h{0.6, 0.8, 1.0};
    std::vector<Vec3> d;
    for (int k = 0; k <= 4; ++k) d.push_back(h.d(k, 0.2));
    const VecJet g = VecJet::from_derivatives(d);
    const VecJet back = integrate(differentiate(g), g.value());
    for (int k = 0; k <= 4; ++k) CHECK(norm(back.derivative(k) - d[k]) < 1e-13);
}
