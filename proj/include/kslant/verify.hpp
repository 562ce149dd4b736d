#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kslant/frames.hpp"
#include "kslant/slant_ops.hpp"

namespace kslant {

struct CheckResult {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool passed = false;
    int samples = 0;
    std::vector<std::string> notes;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

struct VerifyConfig {
    int samples = 1024;
    double cusp_window = 1e-2;
    DiffConfig diff;
};

// Sample parameters for a check: the curve's own nodes when it is sampled,
// otherwise a uniform grid; points whose stencil would leave the domain or that
// fall inside a cusp window are dropped and noted.
struct SamplePlan {
    std::vector<double> ts;
    std::vector<std::string> notes;
};
SamplePlan sample_plan(const Curve3& curve, int n, int order, const VerifyConfig& cfg);

CheckResult check_spherical(const Curve3& curve, std::optional<Vec3> center = std::nullopt,
                            std::optional<double> R = std::nullopt, double tol = 1e-8, const VerifyConfig& cfg = {});
CheckResult check_unit_speed(const Curve3& curve, double tol = 1e-8, const VerifyConfig& cfg = {});
CheckResult check_k_slant(const Curve3& curve, int k, const Vec3& axis, double tol = 1e-6,
                          const VerifyConfig& cfg = {256});
// 1 = κ cos(∫τ ds + θ0), anchored afresh on every regular arc between cusp windows.
CheckResult check_spherical_characterization(const Curve3& curve, double tol = 1e-4, const VerifyConfig& cfg = {});
// |κ̄² + τ̄² - κ²| with κ̄, τ̄ measured on the J image and κ that of its parent.
// The default pipeline uses finite differences with step 5e-3.
CheckResult check_mannheim(const ChainLevel& level, double tol = 1e-5, std::optional<VerifyConfig> cfg = std::nullopt);
// x² + y² - (b²/a²) z² against rhs, which defaults to b²/(a⁴w⁴).
CheckResult check_hyperboloid(const Curve3& curve, double a, double b, double w, double tol = 1e-10,
                              std::optional<double> rhs = std::nullopt, const VerifyConfig& cfg = {});
// Passes when the curve is prime: R0 = sup 1/κ <= 1 - tol.
CheckResult check_prime(const Curve3& curve, double tol = 1e-6, const VerifyConfig& cfg = {4096});

struct MagneticField {
    Vec3 xi;          // components in (T, N, B)
    double Omega = 0;
};

struct LorentzMatrices {
    Mat3 force{};      // rows φ(T), φ(N), φ(B) with φ(X) = ξ × X
    Mat3 transport{};  // Frenet matrix minus force, as in the Z-magnetic condition
};

LorentzMatrices lorentz_force(const MagneticField& field, const FrenetData& frame);

// ξ = τ_k T_k - Ω N_k + κ_k B_k must be constant; also fits κ_k = R cos(Ωs + c0),
// τ_k = -R sin(Ωs + c0) and reports that residual in details.
CheckResult check_Nk_magnetic(const Curve3& curve, int k, double Omega, double tol = 1e-5,
                              const VerifyConfig& cfg = {});

struct VerificationReport {
    nlohmann::ordered_json curve_meta = nlohmann::ordered_json::object();
    std::vector<CheckResult> checks;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

    bool all_passed() const;
};

// Runs the checks concurrently and orders the results by name.
VerificationReport run_report(const std::vector<std::function<CheckResult()>>& checks,
                              nlohmann::ordered_json curve_meta = nlohmann::ordered_json::object());
nlohmann::ordered_json to_json(const CheckResult& r);
nlohmann::ordered_json to_json(const VerificationReport& r);
std::string to_table(const VerificationReport& r);

}  // namespace kslant
