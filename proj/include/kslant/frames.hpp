#pragma once

#include <optional>
#include <vector>

#include "kslant/curve.hpp"

namespace kslant {

struct FrenetData {
    double t = 0;
    Vec3 T;
    std::optional<Vec3> N, B;
    double kappa = 0;
    std::optional<double> tau;
    double speed = 0;

    bool inflection() const { return !N.has_value(); }
};

// N, B and tau are left empty where ‖γ'×γ''‖ is below `inflection_tol`·‖γ'‖³.
// With strict set an inflection raises InflectionPoint instead.
FrenetData frenet_apparatus(const Curve3& curve, double t, const DiffConfig& cfg = {}, bool strict = false,
                            double inflection_tol = 1e-10);

struct SabbanData {
    double t = 0;
    Vec3 gamma, T, Y;
    double kappa_g = 0;
};

SabbanData sabban_frame(const Curve3& curve, double s, const DiffConfig& cfg = {}, double tol = 1e-6);

struct PsiLevel {
    int k = 0;
    std::optional<Vec3> psi;   // ψ_0 only exists for spherical curves
    std::optional<double> kappa, tau, sigma;
};

std::vector<PsiLevel> psi_hierarchy(const Curve3& curve, int k_max, double t, bool spherical = false,
                                    const DiffConfig& cfg = {});

// Level-k Frenet apparatus: T_k = ψ_{k+1}, N_k = ψ_{k+2}, B_k = T_k × N_k.
struct LevelFrame {
    double t = 0;
    Vec3 T, N, B;
    double kappa = 0, tau = 0;
};

LevelFrame level_frame(const Curve3& curve, int k, double t, const DiffConfig& cfg = {});

// Level frames at increasing parameters with signs chosen so that T and N
// vary continuously; kappa and tau are re-signed to match.
std::vector<LevelFrame> level_frames_along(const Curve3& curve, int k, const std::vector<double>& ts,
                                           const DiffConfig& cfg = {});

// ψ_j at each parameter, sign-aligned with the previous sample.
std::vector<Vec3> psi_along(const Curve3& curve, int j, const std::vector<double>& ts, const DiffConfig& cfg = {});

struct DarbouxData {
    int k = 0;
    Vec3 W;
    std::optional<Vec3> A;
    std::optional<double> omega;
};

// A_k = W_k + sign·Ω N_k.
DarbouxData centrode(const Curve3& curve, int k, double t, std::optional<double> omega = std::nullopt,
                     int sign = 1, const DiffConfig& cfg = {});

struct RigidMotion {
    Mat3 rotation{};
    Vec3 shift;
};

// Motion carrying the point and Frenet frame of `from` at tf onto those of `to` at tt.
RigidMotion align_frames(const Curve3& from, double tf, const Curve3& to, double tt);

}  // namespace kslant
