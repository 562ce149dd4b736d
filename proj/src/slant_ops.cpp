#include "kslant/slant_ops.hpp"

#include <cmath>

#include "kslant/frames.hpp"

namespace kslant {

double tol_chain(int level) { return 1e-8 * std::pow(4.0, level); }

namespace {

std::vector<double> sample_params(const Interval& d, int n) {
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = d.lo + (i + 0.5) * d.length() / n;
    return ts;
}

void require_spherical(const Curve3& c) {
    for (double t : sample_params(c.domain(), 64)) {
        if (std::abs(norm(c(t)) - 1) > 1e-6)
            throw Error(ErrorCode::NotSpherical, "curve leaves the unit sphere at t=" + std::to_string(t));
        if (norm(eval_derivatives(c, t, 1)[1]) < c.speed_floor)
            throw Error(ErrorCode::IrregularCurve, "speed below floor at t=" + std::to_string(t));
    }
}

void require_unit_speed(const Curve3& c) {
    for (double t : sample_params(c.domain(), 64))
        if (std::abs(norm(eval_derivatives(c, t, 1)[1]) - 1) > 1e-6)
            throw Error(ErrorCode::NotUnitSpeed, "J needs a unit-speed curve");
}

void require_depth(int n, const ChainConfig& cfg) {
    if (n < 0) throw Error(ErrorCode::BadParams, "negative chain depth");
    if (n > cfg.max_depth && !cfg.unsafe_depth)
        throw Error(ErrorCode::DepthLimit, "depth " + std::to_string(n) + " exceeds the limit " +
                                               std::to_string(cfg.max_depth));
}

ChainLevel make_level(std::shared_ptr<const FrameNode> node, const ChainConfig& cfg, const std::string& seed_name,
                      const PhaseVector& phases) {
    ChainLevel L;
    L.level = node->level();
    L.op = node->op();
    L.node = node;
    L.parent = L.level - 1;
    const FrameNode* raw = node.get();
    auto keep = node;
    if (L.level == 0) {
        L.curve = node->seed();
    } else {
        L.curve = Curve3(node->domain(), [keep](double t, int n) { return keep->curve_jet(t, n); },
                         node->max_order());
        L.curve.singular_points = find_zeros([raw](double t) { return raw->rho(t); }, node->domain(), cfg.cusp_scan);
        L.theta_fn = [keep](double t) { return keep->theta(t); };
        if (L.op == Op::I) L.curve.signed_speed = [keep](double t) { return keep->rho(t); };
        L.curve.meta.parameter = node->seed().meta.parameter;
    }
    L.weight_fn = [keep](double t) { return keep->rho(t); };
    L.curve.meta.seed = seed_name;
    L.curve.meta.op = L.level == 0 ? "" : (L.op == Op::I ? "I" : "J");
    L.curve.meta.level = L.level;
    L.curve.meta.phases.assign(phases.begin(), phases.begin() + L.level);
    L.curve.meta.cusps = L.curve.singular_points;
    return L;
}

std::string seed_name(const Curve3& c) { return c.meta.seed.empty() ? "custom" : c.meta.seed; }

}  // namespace

SGamma s_gamma(const Curve3& curve, double theta0, const QuadratureConfig& cfg) {
    require_spherical(curve);
    auto node = FrameNode::push(FrameNode::spherical_root(curve), theta0, cfg);
    return {[node](double t) { return node->theta(t); }, [node](double t) { return node->rho(t); }};
}

ChainLevel apply_I(const Curve3& curve, double theta0, const ChainConfig& cfg) {
    require_spherical(curve);
    auto node = FrameNode::push(FrameNode::spherical_root(curve), theta0, cfg.quad);
    return make_level(node, cfg, seed_name(curve), {theta0});
}

Curve3 apply_I_quadrature(const ChainLevel& level, const QuadratureConfig& cfg) {
    if (level.op != Op::I || level.level == 0 || !level.node)
        throw Error(ErrorCode::BadParams, "quadrature form needs an I level");
    auto node = level.node;
    auto parent = node->parent();
    const Interval d = node->domain();
    auto integral = std::make_shared<CumulativeIntegral<Vec3>>(
        [node, parent](double t) { return node->rho(t) * parent->curve_jet(t, 0).value(); }, d, cfg);
    const Vec3 start = node->curve_jet(d.lo, 0).value();
    Curve3 c(d, [integral, start](double t, int) { return VecJet::constant(start + (*integral)(t), 0); }, 0);
    c.meta = level.curve.meta;
    return c;
}

Curve3 tangent_indicatrix(const Curve3& curve) {
    Curve3 base = curve;
    const int order = std::max(0, curve.max_order() - 1);
    Curve3 out(curve.domain(),
               [base](double t, int n) {
                   VecJet d = base.max_order() >= n + 1
                                  ? differentiate(base.jet(t, n + 1))
                                  : VecJet::constant(eval_derivatives(base, t, 1)[1], 0);
                   if (norm(d.value()) < base.speed_floor)
                       throw Error(ErrorCode::IrregularCurve, "speed below floor at t=" + std::to_string(t));
                   VecJet u = normalized(d);
                   if (base.signed_speed && base.signed_speed(t) < 0) u = -u;
                   return u;
               },
               order);
    out.singular_points = curve.singular_points;
    out.meta = curve.meta;
    out.meta.op = "T";
    return out;
}

ChainLevel negate_then_I(const Curve3& curve, double theta0, const ChainConfig& cfg) {
    return apply_I(rigid_transform(curve, {{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}, {}), theta0, cfg);
}

std::vector<ChainLevel> chain_I(const Curve3& seed, int n, const PhaseVector& phases, const ChainConfig& cfg,
                                bool strict) {
    require_depth(n, cfg);
    PhaseVector ph = phases.empty() ? PhaseVector(n, 0.0) : phases;
    if (static_cast<int>(ph.size()) != n) throw Error(ErrorCode::BadParams, "phase vector length must equal depth");
    require_spherical(seed);
    if (strict) {
        // A circle on the sphere has constant geodesic curvature.
        auto root = FrameNode::spherical_root(seed);
        const auto ts = sample_params(seed.domain(), 32);
        const double kg0 = root->omega(ts[0]) / root->rho(ts[0]);
        for (double t : ts)
            if (std::abs(root->omega(t) / root->rho(t) - kg0) > 1e-8)
                throw Error(ErrorCode::BadParams, "strict chain_I needs a circle seed");
    }
    std::vector<ChainLevel> out;
    std::shared_ptr<const FrameNode> node = FrameNode::spherical_root(seed);
    out.push_back(make_level(node, cfg, seed_name(seed), ph));
    for (int m = 0; m < n; ++m) {
        node = FrameNode::push(node, ph[m], cfg.quad);
        out.push_back(make_level(node, cfg, seed_name(seed), ph));
    }
    return out;
}

std::optional<Vec3> plane_normal(const Curve3& curve, double tol) {
    const auto ts = sample_params(curve.domain(), 64);
    std::optional<Vec3> n;
    const Vec3 p0 = curve(ts[0]);
    double scale = 0;
    for (double t : ts) scale = std::max(scale, norm(curve(t) - p0));
    for (double t : ts) {
        const FrenetData f = frenet_apparatus(curve, t);
        if (f.inflection()) continue;
        if (!n) n = *f.B;
        if (std::abs(std::abs(dot(*n, *f.B)) - 1) > tol) return std::nullopt;
    }
    if (!n) return std::nullopt;
    for (double t : ts)
        if (std::abs(dot(curve(t) - p0, *n)) > tol * std::max(1.0, scale)) return std::nullopt;
    return n;
}

std::pair<ChainLevel, CurvaturePair> apply_J(const Curve3& curve, double theta0, const ChainConfig& cfg) {
    require_unit_speed(curve);
    const std::optional<Vec3> pn = plane_normal(curve);
    if (!pn) {
        for (double t : sample_params(curve.domain(), 64))
            frenet_apparatus(curve, t, {}, true);
    }
    auto node = FrameNode::push(FrameNode::euclidean_root(curve, pn), theta0, cfg.quad);
    ChainLevel L = make_level(node, cfg, seed_name(curve), {theta0});
    CurvaturePair cp{[node](double t) { return node->rho(t); }, [node](double t) { return node->omega(t); }};
    return {L, cp};
}

std::vector<ChainLevel> chain_J(const Curve3& seed, int n, const PhaseVector& phases, const ChainConfig& cfg) {
    require_depth(n, cfg);
    PhaseVector ph = phases.empty() ? PhaseVector(n, 0.0) : phases;
    if (static_cast<int>(ph.size()) != n) throw Error(ErrorCode::BadParams, "phase vector length must equal depth");
    require_unit_speed(seed);
    const std::optional<Vec3> pn = plane_normal(seed);
    if (!pn) throw Error(ErrorCode::BadParams, "chain_J needs a planar seed");
    std::vector<ChainLevel> out;
    std::shared_ptr<const FrameNode> node = FrameNode::euclidean_root(seed, pn);
    out.push_back(make_level(node, cfg, seed_name(seed), ph));
    for (int m = 0; m < n; ++m) {
        node = FrameNode::push(node, ph[m], cfg.quad);
        out.push_back(make_level(node, cfg, seed_name(seed), ph));
    }
    return out;
}

CurvaturePair predicted_curvatures(const ScalarFn& kappa, const ScalarFn& tau, double theta0, const Interval& domain,
                                   const QuadratureConfig& cfg) {
    auto theta = std::make_shared<CumulativeIntegral<double>>(tau, domain, cfg);
    return {[kappa, theta, theta0](double s) { return kappa(s) * std::cos((*theta)(s) + theta0); },
            [kappa, theta, theta0](double s) { return kappa(s) * std::sin((*theta)(s) + theta0); }};
}

}  // namespace kslant
