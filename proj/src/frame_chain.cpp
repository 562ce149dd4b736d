#include "kslant/frame_chain.hpp"

#include <cmath>

namespace kslant {

std::shared_ptr<const FrameNode> FrameNode::spherical_root(const Curve3& seed) {
    auto n = std::shared_ptr<FrameNode>(new FrameNode());
    n->op_ = Op::I;
    n->seed_ = seed;
    return n;
}

std::shared_ptr<const FrameNode> FrameNode::euclidean_root(const Curve3& seed, std::optional<Vec3> plane_normal) {
    auto n = std::shared_ptr<FrameNode>(new FrameNode());
    n->op_ = Op::J;
    n->seed_ = seed;
    n->plane_normal_ = plane_normal;
    return n;
}

std::shared_ptr<const FrameNode> FrameNode::push(std::shared_ptr<const FrameNode> parent, double phase,
                                                 const QuadratureConfig& cfg) {
    auto n = std::shared_ptr<FrameNode>(new FrameNode());
    n->op_ = parent->op_;
    n->level_ = parent->level_ + 1;
    n->seed_ = parent->seed_;
    n->plane_normal_ = parent->plane_normal_;
    n->parent_ = parent;
    n->phase_ = phase;
    const FrameNode* p = parent.get();
    n->theta_int_ = CumulativeIntegral<double>([p](double t) { return p->omega(t); }, n->domain(), cfg);
    if (n->op_ == Op::J) {
        const FrameNode* self = n.get();
        n->position_ = CumulativeIntegral<Vec3>([self](double t) { return self->frames(t, 0).E1.value(); },
                                                n->domain(), cfg);
    }
    return n;
}

double FrameNode::theta(double t) const {
    if (!parent_) throw Error(ErrorCode::BadParams, "the seed level has no phase function");
    return phase_ + theta_int_(t);
}

int FrameNode::max_order() const {
    if (!parent_) return seed_.max_order();
    const int lost = op_ == Op::I ? 2 : (plane_normal_ ? 2 : 3);
    const int base = seed_.max_order() - lost + (op_ == Op::J && level_ > 0 ? 1 : 0);
    return std::max(0, std::min(base, kAnyOrder));
}

FrameNode::Frames FrameNode::frames(double t, int order) const {
    if (parent_) {
        const Frames f = parent_->frames(t, order);
        const double th0 = theta(t);
        const Jet th = order == 0 ? Jet::constant(th0, 0) : integrate(f.omega.truncated(order - 1), th0);
        const auto [s, c] = sincos(th);
        Frames g;
        g.E1 = s * f.E3 - c * f.E2;
        g.E2 = f.E1;
        g.E3 = c * f.E3 + s * f.E2;
        g.rho = f.rho * c;
        g.omega = f.rho * s;
        return g;
    }
    Frames g;
    if (op_ == Op::I) {
        const VecJet x = seed_.jet(t, order + 2);
        const VecJet d1 = differentiate(x), d2 = differentiate(d1);
        const Jet v = norm(d1);
        g.E1 = x.truncated(order);
        g.E2 = normalized(d1).truncated(order);
        g.E3 = cross(g.E1, g.E2);
        g.rho = v.truncated(order);
        g.omega = (dot(x, cross(d1, d2)) / (v * v)).truncated(order);
        return g;
    }
    if (plane_normal_) {
        const VecJet x = seed_.jet(t, order + 2);
        const VecJet d1 = differentiate(x);
        const Jet v = norm(d1);
        const VecJet T = normalized(d1);
        const VecJet B = VecJet::constant(*plane_normal_, order + 1);
        const VecJet N = cross(B, T);
        g.E1 = T.truncated(order);
        g.E2 = N.truncated(order);
        g.E3 = B.truncated(order);
        g.rho = (dot(differentiate(T), N) / v).truncated(order);
        g.omega = Jet::constant(0.0, order);
        return g;
    }
    const VecJet x = seed_.jet(t, order + 3);
    const VecJet d1 = differentiate(x), d2 = differentiate(d1), d3 = differentiate(d2);
    const Jet v = norm(d1);
    const VecJet c = cross(d1, d2);
    const Jet cn = norm(c);
    const VecJet T = normalized(d1), B = normalized(c);
    g.E1 = T.truncated(order);
    g.E3 = B.truncated(order);
    g.E2 = cross(g.E3, g.E1);
    g.rho = (cn / (v * v * v)).truncated(order);
    g.omega = (dot(c.truncated(order), d3) / (cn * cn).truncated(order)).truncated(order);
    return g;
}

VecJet FrameNode::curve_jet(double t, int order) const {
    if (op_ == Op::I || !parent_) {
        if (!parent_) return seed_.jet(t, order);
        return frames(t, order).E1;
    }
    const Vec3 p0 = position_(t);
    if (order == 0) return VecJet::constant(p0, 0);
    return integrate(frames(t, order - 1).E1, p0);
}

std::vector<double> find_zeros(const ScalarFn& f, const Interval& d, int scan) {
    std::vector<double> zeros;
    double a = d.lo, fa = f(a);
    if (fa == 0) zeros.push_back(a);
    for (int i = 1; i <= scan; ++i) {
        const double b = i == scan ? d.hi : d.lo + i * d.length() / scan;
        const double fb = f(b);
        if (fb == 0) {
            zeros.push_back(b);
        } else if (fa != 0 && (fa < 0) != (fb < 0)) {
            double lo = a, hi = b, flo = fa;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
                const double m = 0.5 * (lo + hi);
                const double fm = f(m);
                if (fm == 0) { lo = hi = m; break; }
                if ((fm < 0) == (flo < 0)) { lo = m; flo = fm; } else { hi = m; }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    return zeros;
}

}  // namespace kslant
