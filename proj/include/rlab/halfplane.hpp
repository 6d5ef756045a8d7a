#pragma once

// Closed-form geometry of the upper half-plane H: Mobius isometries,
// hyperbolic distance, geodesic and horocyclic flows, Poisson kernel.
//
// Unit tangent vectors are stored as (xi_minus, xi_plus, s): the two
// boundary endpoints of the directed geodesic plus signed arclength along
// it, with s = 0 at the point of the geodesic closest to i. The geodesic
// flow is then exact addition in s. Boundary points are homogeneous real
// pairs so that infinity needs no special cases in Mobius arithmetic.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "rlab/rng.hpp"

namespace rlab {

using cplx = std::complex<double>;

struct HPoint {
    double x = 0.0;
    double y = 1.0;
    HPoint() = default;
    HPoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0)) throw std::invalid_argument("HPoint: Im <= 0");
    }
    explicit HPoint(cplx z) : HPoint(z.real(), z.imag()) {}
    cplx c() const { return {x, y}; }
};

// A point of RP^1 = boundary of H, as a homogeneous pair [a : b] ~ a/b.
// Infinity is [1 : 0].
struct BoundaryPoint {
    double a = 0.0;
    double b = 1.0;
    BoundaryPoint() = default;
    BoundaryPoint(double a_, double b_) : a(a_), b(b_) {
        const double n = std::hypot(a, b);
        if (n == 0.0) throw std::invalid_argument("BoundaryPoint: (0,0)");
        a /= n;
        b /= n;
    }
    static BoundaryPoint infinity() { return BoundaryPoint(1.0, 0.0); }
    static BoundaryPoint of(double v) { return BoundaryPoint(v, 1.0); }
    bool is_infinite(double tol = 1e-14) const { return std::abs(b) <= tol; }
    double value() const { return a / b; }  // +-inf when b == 0
};

// Projective (chordal) distance on RP^1: |a1 b2 - a2 b1| on unit pairs.
inline double boundary_dist(const BoundaryPoint& p, const BoundaryPoint& q) {
    return std::abs(p.a * q.b - q.a * p.b);
}

// Element of PSL(2,R): 2x2 real matrix, det renormalized to 1. The sign
// ambiguity M ~ -M is resolved only at comparison time.
struct RealMoebius {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    RealMoebius() = default;
    RealMoebius(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        const double det = a * d - b * c;
        if (!(det > 0.0)) throw std::invalid_argument("RealMoebius: det <= 0");
        const double s = std::sqrt(det);
        a /= s; b /= s; c /= s; d /= s;
    }
    static RealMoebius identity() { return {}; }
    static RealMoebius translation(double t) { return {1.0, t, 0.0, 1.0}; }
    static RealMoebius scaling(double l) { return {std::sqrt(l), 0.0, 0.0, 1.0 / std::sqrt(l)}; }

    RealMoebius inverse() const {
        RealMoebius m;
        m.a = d; m.b = -b; m.c = -c; m.d = a;
        return m;
    }
    RealMoebius operator*(const RealMoebius& o) const {
        RealMoebius m;
        m.a = a * o.a + b * o.c;
        m.b = a * o.b + b * o.d;
        m.c = c * o.a + d * o.c;
        m.d = c * o.b + d * o.d;
        // renormalize drift
        const double det = m.a * m.d - m.b * m.c;
        const double s = std::sqrt(det);
        m.a /= s; m.b /= s; m.c /= s; m.d /= s;
        return m;
    }
    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    cplx apply(cplx z) const { return (a * z + b) / (c * z + d); }
    HPoint apply(const HPoint& z) const {
        const cplx num = a * z.c() + b;
        const cplx den = c * z.c() + d;
        const double n2 = std::norm(den);
        return {(num * std::conj(den)).real() / n2, z.y / n2};  // Im(mz) = Im z / |cz+d|^2
    }
    BoundaryPoint apply(const BoundaryPoint& p) const {
        return {a * p.a + b * p.b, c * p.a + d * p.b};
    }
};

// Projective equality up to sign, as a sine-of-angle distance.
inline double proj_dist(const RealMoebius& m, const RealMoebius& n) {
    const double ip = m.a * n.a + m.b * n.b + m.c * n.c + m.d * n.d;
    const double nm = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
    const double nn = n.a * n.a + n.b * n.b + n.c * n.c + n.d * n.d;
    const double c2 = std::min(1.0, ip * ip / (nm * nn));
    return std::sqrt(std::max(0.0, 1.0 - c2));
}

inline double dist_h(const HPoint& z1, const HPoint& z2) {
    // cosh d = 1 + |z1-z2|^2 / (2 y1 y2), evaluated as 2 asinh for stability.
    const double q = std::hypot(z1.x - z2.x, z1.y - z2.y) / (2.0 * std::sqrt(z1.y * z2.y));
    return 2.0 * std::asinh(q);
}

struct UnitTangent {
    BoundaryPoint xi_minus;  // c_v(-infinity)
    BoundaryPoint xi_plus;   // c_v(+infinity)
    double s = 0.0;          // arclength; s = 0 at the geodesic point nearest i
    UnitTangent() : xi_minus(0.0, 1.0), xi_plus(1.0, 0.0) {}
    UnitTangent(const BoundaryPoint& em, const BoundaryPoint& ep, double s_)
        : xi_minus(em), xi_plus(ep), s(s_) {
        if (boundary_dist(em, ep) < 1e-14)
            throw std::invalid_argument("UnitTangent: coincident endpoints");
    }
};

// Canonical chart of the geodesic (em, ep): a det-1 real Mobius N with
// N(em) = 0, N(ep) = infinity, orientation-preserving. Unique up to a
// positive scaling of the target, which the parametrization below quotients
// out via |N(i)|.
inline RealMoebius geodesic_chart(const BoundaryPoint& em, const BoundaryPoint& ep) {
    double r1a = em.b, r1b = -em.a;   // row vanishing at em
    double r2a = ep.b, r2b = -ep.a;   // row vanishing at ep
    const double det = r1a * r2b - r1b * r2a;
    if (det < 0.0) { r2a = -r2a; r2b = -r2b; }
    return {r1a, r1b, r2a, r2b};
}

namespace detail {
// |N(z)| for the chart: the image of an on-geodesic point is i * that.
inline double chart_modulus(const RealMoebius& N, cplx z) {
    return std::abs((N.a * z + N.b) / (N.c * z + N.d));
}
inline cplx chart_inverse(const RealMoebius& N, cplx w) {
    return (N.d * w - N.b) / (-N.c * w + N.a);
}
}  // namespace detail

inline HPoint base_point(const UnitTangent& v) {
    const RealMoebius N = geodesic_chart(v.xi_minus, v.xi_plus);
    const double mu = detail::chart_modulus(N, {0.0, 1.0});  // nearest point to i at s=0
    return HPoint(detail::chart_inverse(N, cplx(0.0, mu * std::exp(v.s))));
}

// Euclidean angle of the tangent direction at the base point.
inline double direction_angle(const UnitTangent& v) {
    const RealMoebius N = geodesic_chart(v.xi_minus, v.xi_plus);
    const double mu = detail::chart_modulus(N, {0.0, 1.0});
    const cplx w(0.0, mu * std::exp(v.s));
    // d/ds N^{-1}(i mu e^s) = (N^{-1})'(w) * w
    const cplx den = -N.c * w + N.a;
    const cplx dir = w / (den * den);
    return std::atan2(dir.imag(), dir.real());
}

inline std::pair<BoundaryPoint, BoundaryPoint> endpoints(const UnitTangent& v) {
    return {v.xi_minus, v.xi_plus};
}

inline UnitTangent geodesic_flow(const UnitTangent& v, double t) {
    UnitTangent w = v;
    w.s += t;
    return w;
}

inline UnitTangent reverse(const UnitTangent& v) {
    return {v.xi_plus, v.xi_minus, -v.s};
}

// Unit tangent at z with euclidean direction angle phi.
inline UnitTangent tangent_from_point_angle(const HPoint& z, double phi) {
    const double al = phi - 0.5 * kPi;  // rotation from the upward vector at i
    const double co = std::cos(0.5 * al), si = std::sin(0.5 * al);
    // S: i -> z with positive real derivative; R rotates the tangent at i by al.
    const RealMoebius S{std::sqrt(z.y), z.x / std::sqrt(z.y), 0.0, 1.0 / std::sqrt(z.y)};
    const RealMoebius R{co, si, -si, co};
    const RealMoebius M = S * R;
    const BoundaryPoint em = M.apply(BoundaryPoint(0.0, 1.0));
    const BoundaryPoint ep = M.apply(BoundaryPoint(1.0, 0.0));
    const RealMoebius N = geodesic_chart(em, ep);
    const double mu = detail::chart_modulus(N, {0.0, 1.0});
    const double s = std::log(detail::chart_modulus(N, z.c()) / mu);
    return {em, ep, s};
}

// Push a unit tangent by an isometry (derivative action).
inline UnitTangent apply_isometry(const RealMoebius& m, const UnitTangent& v) {
    const BoundaryPoint em = m.apply(v.xi_minus);
    const BoundaryPoint ep = m.apply(v.xi_plus);
    const HPoint z = m.apply(base_point(v));
    const RealMoebius N = geodesic_chart(em, ep);
    const double mu = detail::chart_modulus(N, {0.0, 1.0});
    const double s = std::log(detail::chart_modulus(N, z.c()) / mu);
    return {em, ep, s};
}

enum class HorocycleKind { Stable, Unstable };

// Horocycle: center on the boundary plus a size parameter. For a finite
// center the height is the euclidean diameter of the tangent circle; for
// center infinity it is the Im-level of the horizontal line.
struct Horocycle {
    BoundaryPoint center;
    double height = 1.0;
    Horocycle(const BoundaryPoint& c, double h) : center(c), height(h) {
        if (!(h > 0.0)) throw std::invalid_argument("Horocycle: height <= 0");
    }
};

// The stable (centered at xi_plus) or unstable (xi_minus) horocycle through
// the base point of v.
inline Horocycle horocycle_through(const UnitTangent& v, HorocycleKind kind) {
    const BoundaryPoint c = (kind == HorocycleKind::Stable) ? v.xi_plus : v.xi_minus;
    const HPoint z = base_point(v);
    if (c.is_infinite()) return {c, z.y};
    const double xi = c.value();
    const double d2 = (z.x - xi) * (z.x - xi) + z.y * z.y;
    return {c, d2 / z.y};  // diameter of circle tangent at xi through z
}

inline bool on_horocycle(const HPoint& z, const Horocycle& h, double tol = 1e-9) {
    if (h.center.is_infinite()) return std::abs(z.y - h.height) <= tol * (1.0 + h.height);
    const double xi = h.center.value();
    const double r = 0.5 * h.height;
    const double dd = std::hypot(z.x - xi, z.y - r);
    return std::abs(dd - r) <= tol * (1.0 + r);
}

// Arclength along the horocycle between two of its points.
inline double dist_horocyclic(const HPoint& z1, const HPoint& z2, const Horocycle& h) {
    if (!on_horocycle(z1, h) || !on_horocycle(z2, h))
        throw std::invalid_argument("dist_horocyclic: point off the horocycle");
    if (h.center.is_infinite()) return std::abs(z1.x - z2.x) / h.height;
    // map center to infinity by K(z) = -1/(z - xi); line level is 1/diameter
    const double xi = h.center.value();
    const cplx w1 = -1.0 / (z1.c() - xi);
    const cplx w2 = -1.0 / (z2.c() - xi);
    return std::abs(w1.real() - w2.real()) * h.height;
}

// Stable/unstable horocyclic flows. In the canonical chart of v the stable
// flow moves the base along Im = Y by +t*Y and keeps the vector orthogonal
// to the horocycle; the unstable flow is the time-reversed conjugate.
inline UnitTangent horocycle_flow(const UnitTangent& v, double t, HorocycleKind kind) {
    if (kind == HorocycleKind::Unstable) {
        return reverse(horocycle_flow(reverse(v), -t, HorocycleKind::Stable));
    }
    const RealMoebius N = geodesic_chart(v.xi_minus, v.xi_plus);
    const double mu = detail::chart_modulus(N, {0.0, 1.0});
    const double Y = mu * std::exp(v.s);
    const BoundaryPoint em_new = N.inverse().apply(BoundaryPoint(t * Y, 1.0));
    const BoundaryPoint ep = v.xi_plus;
    const HPoint z(detail::chart_inverse(N, cplx(t * Y, Y)));
    const RealMoebius N2 = geodesic_chart(em_new, ep);
    const double mu2 = detail::chart_modulus(N2, {0.0, 1.0});
    const double s2 = std::log(detail::chart_modulus(N2, z.c()) / mu2);
    return {em_new, ep, s2};
}

inline double poisson_kernel(const HPoint& z, double xi) {
    const double dx = z.x - xi;
    return z.y / (dx * dx + z.y * z.y);
}

// Poisson kernel against the angular measure on RP^1 (homogeneous form):
// equals k(z,xi) * (1+xi^2) in the affine chart and y at xi = infinity.
// Finite everywhere, which is the chart-swap convention for k(z, infinity).
inline double poisson_kernel_angle(const HPoint& z, const BoundaryPoint& xi) {
    const double u = xi.b * z.x - xi.a;
    const double w = xi.b * z.y;
    return z.y * (xi.a * xi.a + xi.b * xi.b) / (u * u + w * w);
}

// Euclidean radius of the geodesic through x+iy with one endpoint xi
// (Lemma form R = ((xi-x)^2 + y^2) / (2|xi-x|); always >= y by AM-GM).
inline double geodesic_euclidean_radius(double x, double y, double xi) {
    if (xi == x) throw std::invalid_argument("geodesic_euclidean_radius: vertical geodesic");
    const double d = xi - x;
    return (d * d + y * y) / (2.0 * std::abs(d));
}

// Second endpoint of the geodesic through z with endpoint xi.
inline BoundaryPoint geodesic_other_endpoint(const HPoint& z, const BoundaryPoint& xi) {
    if (xi.is_infinite()) return BoundaryPoint::of(z.x);
    const double x0 = xi.value();
    if (z.x == x0) return BoundaryPoint::infinity();
    const double c = (z.x * z.x + z.y * z.y - x0 * x0) / (2.0 * (z.x - x0));
    return BoundaryPoint::of(2.0 * c - x0);
}

// Unit tangent based at z whose forward endpoint is xi.
inline UnitTangent tangent_toward(const HPoint& z, const BoundaryPoint& xi) {
    const BoundaryPoint em = geodesic_other_endpoint(z, xi);
    const RealMoebius N = geodesic_chart(em, xi);
    const double mu = detail::chart_modulus(N, {0.0, 1.0});
    const double s = std::log(detail::chart_modulus(N, z.c()) / mu);
    return {em, xi, s};
}

// Point at hyperbolic distance r from z in euclidean direction phi.
inline HPoint circle_point(const HPoint& z, double phi, double r) {
    return base_point(geodesic_flow(tangent_from_point_angle(z, phi), r));
}

}  // namespace rlab
