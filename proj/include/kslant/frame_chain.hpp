#pragma once

// Shared engine behind the I and J operators.
//
// Every level carries an orthonormal triple (E1, E2, E3) obeying
//   E1' = ρ E2,  E2' = -ρ E1 + ω E3,  E3' = -ω E2
// (for I the seed triple is γ, γ'/‖γ'‖, γ × γ'/‖γ'‖ with ρ = ‖γ'‖ and
// ω = det(γ, γ', γ'')/‖γ'‖²; for J it is the Frenet frame with ρ = κ, ω = τ).
// With θ = ∫ω + phase the next level is
//   E1 ← -cos θ E2 + sin θ E3,  E2 ← E1,  E3 ← cos θ E3 + sin θ E2,
//   ρ ← ρ cos θ,  ω ← ρ sin θ,
// which again satisfies the same equations. The I-curve of a level is its E1;
// the J-curve is ∫E1. ρ keeps its sign through cusps, so θ stays continuous.

#include <memory>
#include <optional>

#include "kslant/curve.hpp"

namespace kslant {

enum class Op { I, J };

class FrameNode {
public:
    struct Frames {
        VecJet E1, E2, E3;
        Jet rho, omega;
    };

    static std::shared_ptr<const FrameNode> spherical_root(const Curve3& seed);
    // `plane_normal` selects the signed-curvature frame of a planar seed.
    static std::shared_ptr<const FrameNode> euclidean_root(const Curve3& seed, std::optional<Vec3> plane_normal);
    static std::shared_ptr<const FrameNode> push(std::shared_ptr<const FrameNode> parent, double phase,
                                                 const QuadratureConfig& cfg);

    Op op() const { return op_; }
    int level() const { return level_; }
    const Interval& domain() const { return seed_.domain(); }
    const Curve3& seed() const { return seed_; }
    const std::shared_ptr<const FrameNode>& parent() const { return parent_; }
    double phase() const { return phase_; }

    Frames frames(double t, int order) const;
    // θ used to build this level from its parent (θ_{level-1}).
    double theta(double t) const;
    double rho(double t) const { return frames(t, 0).rho.value(); }
    double omega(double t) const { return frames(t, 0).omega.value(); }

    // Jet of the level's curve: E1 for I, ∫E1 from the domain start for J.
    VecJet curve_jet(double t, int order) const;
    int max_order() const;

private:
    FrameNode() = default;

    Op op_ = Op::I;
    int level_ = 0;
    Curve3 seed_;
    std::optional<Vec3> plane_normal_;
    std::shared_ptr<const FrameNode> parent_;
    double phase_ = 0;
    CumulativeIntegral<double> theta_int_;
    CumulativeIntegral<Vec3> position_;
};

// Sign changes of f on `scan` uniform cells, refined by bisection.
std::vector<double> find_zeros(const ScalarFn& f, const Interval& d, int scan = 4096);

}  // namespace kslant
