#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kslant/jet.hpp"
#include "kslant/quadrature.hpp"

namespace kslant {

// Highest order offered by closed-form and chain curves.
inline constexpr int kAnyOrder = 24;

using JetFn = std::function<VecJet(double t, int order)>;
using ScalarFn = std::function<double(double)>;

struct CurveMeta {
    std::string seed;
    std::string op;          // "I", "J" or empty
    int level = 0;
    std::vector<double> phases;
    std::string parameter = "t";
    std::vector<double> cusps;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

class Curve3 {
public:
    Curve3() = default;
    // `fn` must honour orders up to max_order; order 0 must always work.
    Curve3(Interval domain, JetFn fn, int max_order);

    const Interval& domain() const { return domain_; }
    int max_order() const { return max_order_; }
    Vec3 operator()(double t) const;
    // Analytic jet; throws OrderUnavailable above max_order.
    VecJet jet(double t, int order) const;

    double speed_floor = 1e-8;
    // Sorted parameters where the curve (or a frame it carries) degenerates, e.g. cusps.
    std::vector<double> singular_points;
    // Oriented speed, when the curve knows one (negative past a cusp).
    ScalarFn signed_speed;
    // Nodes of the underlying sample grid for sampled curves.
    std::vector<double> nodes;
    // Preferred finite-difference step; 0 means domain length * 1e-4.
    double fd_step = 0;
    CurveMeta meta;

    bool near_singular(double t, double window) const;

private:
    void check_domain(double t) const;

    Interval domain_;
    JetFn fn_;
    int max_order_ = 0;
};

struct DiffConfig {
    double step = 0;     // 0 uses the curve's preference
    bool force_finite_difference = false;
};

// [γ(t), γ'(t), ..., γ^(order)(t)].
std::vector<Vec3> eval_derivatives(const Curve3& curve, double t, int order, const DiffConfig& cfg = {});
// Same data as a Taylor jet.
VecJet local_jet(const Curve3& curve, double t, int order, const DiffConfig& cfg = {});
// Highest order eval_derivatives can deliver at t.
int available_order(const Curve3& curve, double t, const DiffConfig& cfg = {});

// Subintervals where ‖γ'‖ >= speed_floor, judged on `samples` uniform points and
// split at the known singular points.
std::vector<Interval> regularity_mask(const Curve3& curve, int samples = 1024);

Curve3 arc_length_reparametrize(const Curve3& curve, const QuadratureConfig& cfg = {});

Curve3 rigid_transform(const Curve3& curve, const Mat3& rotation, const Vec3& shift);

struct SampledCurve {
    std::vector<double> grid;
    std::vector<Vec3> points;
    CurveMeta meta;

    void validate() const;
};

SampledCurve resample(const Curve3& curve, int n);
// Local 8-point interpolation through the samples; derivatives come from
// finite differences with the grid spacing as step.
Curve3 from_samples(const SampledCurve& sampled);

}  // namespace kslant
