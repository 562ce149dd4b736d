#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kslant/frames.hpp"
#include "kslant/gallery.hpp"
#include "kslant/slant_ops.hpp"
#include "oracles.hpp"

using namespace kslant;

namespace {

const double a = 0.6, r = 0.8, w = 1 / r;
const double c0 = std::atan2(0.8, 0.6);

Curve3 small_circle() { return circle({0, 0, a}, r); }

}  // namespace

TEST_CASE("weight of a great circle is 2 cos theta0") {
    for (double th : {0.0, 0.7, 2.0}) {
        const SGamma g = s_gamma(example31_circle(), th);
        for (double t : {0.0, 1.0, 3.0}) {
            CHECK(g.weight_fn(t) == doctest::Approx(2 * std::cos(th)));
            CHECK(g.theta_fn(t) == doctest::Approx(th));
        }
    }
}

TEST_CASE("weight of a small circle is cos(aws + theta0)") {
    const SGamma g = s_gamma(small_circle(), 0.3);
    for (double s : oracle::grid(small_circle().domain(), 17))
        CHECK(g.weight_fn(s) == doctest::Approx(std::cos(a * w * s + 0.3)).epsilon(1e-12));
    CHECK(std::abs(s_gamma(small_circle(), oracle::pi / 2).weight_fn(0)) < 1e-15);
}

TEST_CASE("I of the speed-2 great circle") {
    const ChainLevel L = apply_I(example31_circle(), 0);
    for (double t : oracle::grid(0, oracle::pi, 25)) {
        const Vec3 expect{std::cos(2 * t) / std::sqrt(2.0), -std::cos(2 * t) / std::sqrt(2.0), std::sin(2 * t)};
        CHECK(norm(L.curve(t) - expect) < 1e-13);
    }
}

TEST_CASE("I of the small circle starts at (0,-1,0) and stays orthogonal to the seed") {
    const Curve3 seed = small_circle();
    const ChainLevel L = apply_I(seed, 0);
    CHECK(norm(L.curve(0) - Vec3{0, -1, 0}) < 1e-14);
    for (double th : {0.0, 1.3, 4.0}) {
        const ChainLevel M = apply_I(seed, th);
        for (double s : oracle::grid(seed.domain(), 50)) {
            CHECK(std::abs(dot(M.curve(s), seed(s))) < 1e-13);
            CHECK(std::abs(norm(M.curve(s)) - 1) < 1e-13);
        }
    }
}

TEST_CASE("derivative of an I level is the weight times its parent") {
    const auto chain = chain_I(small_circle(), 3, {0.2, 0.9, 0.4});
    for (int m = 1; m <= 3; ++m)
        for (double s : oracle::grid(small_circle().domain(), 20)) {
            const Vec3 d = eval_derivatives(chain[m].curve, s, 1)[1];
            CHECK(norm(d - chain[m].weight_fn(s) * chain[m - 1].curve(s)) < 1e-10);
        }
}

TEST_CASE("frame form and quadrature form of I agree") {
    const auto chain = chain_I(small_circle(), 3, {0.2, 0.9, 0.4});
    for (int m = 1; m <= 3; ++m) {
        const Curve3 q = apply_I_quadrature(chain[m]);
        CHECK(oracle::max_distance(q, chain[m].curve, oracle::grid(q.domain(), 257)) <= tol_chain(m));
    }
}

TEST_CASE("theta recursion holds against finite differences") {
    const Curve3 seed = small_circle();
    const auto chain = chain_I(seed, 2, {0.4, 0.1});
    const double h = 1e-4;
    for (double t : oracle::grid(1.0, 4.0, 13)) {
        // θ_1' = ‖γ'‖ sin θ_0, with γ the seed and θ_0 the level-1 phase function.
        const double fd = (chain[2].theta_fn(t + h) - chain[2].theta_fn(t - h)) / (2 * h);
        const double speed = norm(eval_derivatives(seed, t, 1)[1]);
        CHECK(fd == doctest::Approx(speed * std::sin(chain[1].theta_fn(t))).epsilon(1e-7));
        // Independent route: det(α, α', α'')/‖α'‖² on the level-1 curve.
        const auto d = eval_derivatives(chain[1].curve, t, 2);
        const double omega = det(d[0], d[1], d[2]) / dot(d[1], d[1]);
        CHECK(fd == doctest::Approx(omega).epsilon(1e-7));
    }
}

TEST_CASE("tangent indicatrix examples") {
    std::array<TrigComponent, 3> xyz;
    xyz[0].c1 = 1;
    const Curve3 line = tangent_indicatrix(trig_curve(xyz, {0, 1}));
    CHECK(norm(line(0.3) - Vec3{1, 0, 0}) < 1e-15);

    const Curve3 t = tangent_indicatrix(circular_helix(0.6, 0.8));
    for (double s : {0.0, 2.0, 5.0}) {
        CHECK(std::hypot(t(s).x, t(s).y) == doctest::Approx(0.6));
        CHECK(t(s).z == doctest::Approx(0.8));
    }
}

TEST_CASE("tangent indicatrix undoes I even through cusps") {
    const Curve3 seed = small_circle();
    const ChainLevel L = apply_I(seed, 0);
    REQUIRE(L.curve.singular_points.size() == 1);
    CHECK(L.curve.singular_points[0] == doctest::Approx(oracle::pi / 2 / (a * w)));
    const Curve3 back = tangent_indicatrix(L.curve);
    for (double s : oracle::grid(seed.domain(), 400)) {
        if (std::abs(L.weight_fn(s)) < 1e-3) continue;
        CHECK(norm(back(s) - seed(s)) < 1e-10);
    }
}

TEST_CASE("the negation formula is a different map") {
    const Curve3 g = circle({}, 1);
    const ChainLevel p = apply_I(g, 0);
    const ChainLevel n = negate_then_I(g, 0);
    for (double s : {0.0, 1.0, 2.5}) CHECK(norm(n.curve(s) + p.curve(s)) < 1e-14);
    CHECK(norm(tangent_indicatrix(p.curve)(1.0) - n.curve(1.0)) > 0.5);
}

TEST_CASE("chain_I bookkeeping") {
    const auto c0chain = chain_I(small_circle(), 0, {});
    REQUIRE(c0chain.size() == 1);
    CHECK(norm(c0chain[0].curve(1.0) - small_circle()(1.0)) == 0);
    const auto chain = chain_I(small_circle(), 2, {0.5, 0.25});
    CHECK(chain[2].level == 2);
    CHECK(chain[2].op == Op::I);
    CHECK(chain[2].parent == 1);
    CHECK(chain[2].curve.meta.phases == std::vector<double>{0.5, 0.25});
    CHECK(chain[1].curve.meta.cusps == chain[1].curve.singular_points);
    CHECK(oracle::code_of([] { chain_I(small_circle(), 5, {}); }) == ErrorCode::DepthLimit);
    ChainConfig unsafe;
    unsafe.unsafe_depth = true;
    CHECK(chain_I(small_circle(), 5, {}, unsafe).size() == 6);
    CHECK(oracle::code_of([] { chain_I(small_circle(), 2, {0.1}); }) == ErrorCode::BadParams);
    CHECK(oracle::code_of([] { chain_I(circular_helix(0.6, 0.8), 1, {}); }) == ErrorCode::NotSpherical);
    CHECK(oracle::code_of([] { chain_I(spherical_helix(0.6, 0.8, 0.1, Interval{0.1, 1.5}), 1, {}); }) ==
          ErrorCode::BadParams);
    CHECK_NOTHROW(chain_I(spherical_helix(0.6, 0.8, 0.1, Interval{0.1, 1.5}), 1, {}, {}, false));
}

TEST_CASE("J of the unit circle is the helix") {
    const auto [L, pair] = apply_J(circle({}, 1, false), c0);
    for (double s : {0.0, 1.0, 4.0}) {
        CHECK(pair.kappa_bar(s) == doctest::Approx(0.6));
        CHECK(pair.tau_bar(s) == doctest::Approx(0.8));
        const FrenetData f = frenet_apparatus(L.curve, s);
        CHECK(f.kappa == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(std::abs(*f.tau) == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(std::abs(dot(f.T, {0, 0, 1})) == doctest::Approx(0.8));
    }
    CHECK(norm(L.curve(0)) == 0);
}

TEST_CASE("J with theta0 = 0 keeps a planar seed planar") {
    const auto [L, pair] = apply_J(circle({}, 1, false), 0);
    CHECK(plane_normal(L.curve).has_value());
    CHECK(pair.kappa_bar(2.0) == doctest::Approx(1));
    CHECK(std::abs(pair.tau_bar(2.0)) < 1e-15);
}

TEST_CASE("J of the helix has constant-precession curvatures") {
    const Curve3 helix = circular_helix(0.6, 0.8);
    const auto [L, pair] = apply_J(helix, 0);
    for (double s : oracle::grid(0.3, 6.0, 23)) {
        const double kb = pair.kappa_bar(s), tb = pair.tau_bar(s);
        CHECK(std::abs(kb) == doctest::Approx(std::abs(0.6 * std::cos(0.8 * s))).epsilon(1e-10));
        CHECK(std::abs(tb) == doctest::Approx(std::abs(0.6 * std::sin(0.8 * s))).epsilon(1e-10));
        CHECK(kb * kb + tb * tb == doctest::Approx(0.36));
        if (std::abs(kb) > 1e-2) {
            const FrenetData f = frenet_apparatus(L.curve, s);
            CHECK(f.kappa == doctest::Approx(std::abs(kb)).epsilon(1e-6));
            CHECK(std::abs(*f.tau) == doctest::Approx(std::abs(tb)).epsilon(1e-6));
        }
    }
}

TEST_CASE("second derivative of a J level is the weight times the parent tangent") {
    const Curve3 helix = circular_helix(0.6, 0.8);
    const auto [L, pair] = apply_J(helix, 0.7);
    for (double s : oracle::grid(0.0, 6.0, 19)) {
        const auto d = eval_derivatives(L.curve, s, 2);
        const Vec3 T = eval_derivatives(helix, s, 1)[1];
        CHECK(norm(d[2] - pair.kappa_bar(s) * T) < 1e-12);
        CHECK(norm(d[1]) == doctest::Approx(1));
    }
}

TEST_CASE("J preconditions") {
    CHECK(oracle::code_of([] { apply_J(example31_circle(), 0); }) == ErrorCode::NotUnitSpeed);
    std::array<TrigComponent, 3> xyz;
    xyz[0].c1 = 1;
    const Curve3 line = trig_curve(xyz, {0, 1});
    CHECK(oracle::code_of([&] { apply_J(line, 0); }) == ErrorCode::InflectionPoint);
    CHECK(oracle::code_of([] { chain_J(circular_helix(0.6, 0.8), 1, {}); }) == ErrorCode::BadParams);
    CHECK(oracle::code_of([] { chain_J(circle({}, 1, false), 5, {}); }) == ErrorCode::DepthLimit);
    const auto zero = chain_J(circle({}, 1, false), 0, {});
    REQUIRE(zero.size() == 1);
    CHECK(norm(zero[0].curve(0.5) - circle({}, 1, false)(0.5)) == 0);
}

TEST_CASE("J levels are unit speed") {
    const auto chain = chain_J(circle({}, 1, false), 3, {c0, 0.3, 0.2});
    for (int m = 1; m <= 3; ++m)
        for (double s : oracle::grid(chain[m].curve.domain(), 40))
            CHECK(norm(eval_derivatives(chain[m].curve, s, 1)[1]) == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("predicted curvatures") {
    const double wc = 2.0;
    const CurvaturePair p = predicted_curvatures([=](double) { return wc; }, [](double) { return 0.0; }, c0, {0, 3});
    CHECK(p.kappa_bar(1.0) == doctest::Approx(wc * 0.6));
    CHECK(p.tau_bar(2.0) == doctest::Approx(wc * 0.8));

    const CurvaturePair q = predicted_curvatures([](double) { return 1.5; }, [](double) { return 0.0; }, 0, {0, 3});
    CHECK(q.kappa_bar(1.0) == doctest::Approx(1.5));
    CHECK(q.tau_bar(1.0) == 0);

    const double A = 0.6, B = 0.8, W = 1, th = 0.3;
    auto kap = [=](double s) { return A * W * W * std::cos(B * W * W * s); };
    auto tau = [=](double s) { return A * W * W * std::sin(B * W * W * s); };
    const CurvaturePair c = predicted_curvatures(kap, tau, th, {0, 5});
    for (double s : oracle::grid(0, 5, 11)) {
        const double arg = (A / B) * (1 - std::cos(B * W * W * s)) + th;
        CHECK(c.kappa_bar(s) == doctest::Approx(kap(s) * std::cos(arg)).epsilon(1e-12));
        CHECK(c.tau_bar(s) == doctest::Approx(kap(s) * std::sin(arg)).epsilon(1e-12));
    }
}

TEST_CASE("predicted curvatures match the J chain") {
    const auto chain = chain_J(circle({}, 1, false), 2, {c0, 0.4});
    const CurvaturePair p = predicted_curvatures(chain[1].weight_fn, [&](double s) { return chain[1].node->omega(s); },
                                                 0.4, chain[1].curve.domain());
    for (double s : oracle::grid(chain[1].curve.domain(), 15)) {
        CHECK(p.kappa_bar(s) == doctest::Approx(chain[2].weight_fn(s)).epsilon(1e-12));
        CHECK(p.tau_bar(s) == doctest::Approx(chain[2].node->omega(s)).epsilon(1e-12));
    }
}
