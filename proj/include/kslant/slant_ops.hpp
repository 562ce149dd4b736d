#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "kslant/frame_chain.hpp"

namespace kslant {

using PhaseVector = std::vector<double>;

struct ChainConfig {
    QuadratureConfig quad;
    int max_depth = 4;
    bool unsafe_depth = false;
    int cusp_scan = 4096;
    double cusp_window = 1e-2;
};

// Sphericity budget of chain level m.
double tol_chain(int level);

struct ChainLevel {
    int level = 0;
    Op op = Op::I;
    Curve3 curve;
    ScalarFn theta_fn;   // θ_{level-1}; empty at the seed
    ScalarFn weight_fn;  // signed S = ρ_{level-1} cos θ_{level-1}; the seed's signed speed or κ at level 0
    int parent = -1;     // index in the chain, -1 at the seed
    std::shared_ptr<const FrameNode> node;
};

struct SGamma {
    ScalarFn theta_fn, weight_fn;
};

SGamma s_gamma(const Curve3& curve, double theta0, const QuadratureConfig& cfg = {});

ChainLevel apply_I(const Curve3& curve, double theta0, const ChainConfig& cfg = {});
// α(t_min) + ∫ S γ du, the integral form of I, seeded from the frame form.
Curve3 apply_I_quadrature(const ChainLevel& level, const QuadratureConfig& cfg = {});
Curve3 tangent_indicatrix(const Curve3& curve);
// I(-γ): I applied to the antipodal curve. Not the inverse of I.
ChainLevel negate_then_I(const Curve3& curve, double theta0, const ChainConfig& cfg = {});

// Levels 0..n. `strict` requires the seed to be a circle on the unit sphere.
std::vector<ChainLevel> chain_I(const Curve3& seed, int n, const PhaseVector& phases, const ChainConfig& cfg = {},
                                bool strict = true);

struct CurvaturePair {
    ScalarFn kappa_bar, tau_bar;
};

std::pair<ChainLevel, CurvaturePair> apply_J(const Curve3& curve, double theta0, const ChainConfig& cfg = {});
// Levels 0..n from a planar unit-speed seed.
std::vector<ChainLevel> chain_J(const Curve3& seed, int n, const PhaseVector& phases, const ChainConfig& cfg = {});
CurvaturePair predicted_curvatures(const ScalarFn& kappa, const ScalarFn& tau, double theta0, const Interval& domain,
                                   const QuadratureConfig& cfg = {});

// Normal of the plane containing the curve, if it is planar.
std::optional<Vec3> plane_normal(const Curve3& curve, double tol = 1e-10);

}  // namespace kslant
