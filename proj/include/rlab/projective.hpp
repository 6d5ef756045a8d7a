#pragma once

// CP^1 as normalized homogeneous pairs, complex Mobius maps with a
// log-scale ledger for long cocycle products, the chordal metric, and
// fixed-point classification.
//
// Metric convention: the chordal distance d(p,q) = |w1(p)w2(q)-w2(p)w1(q)|
// on unit pairs (d = sin of the Fubini-Study arc distance). Exact in
// floating point, no trigonometric calls.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "rlab/halfplane.hpp"

namespace rlab {

struct SpherePoint {
    cplx w1{0.0, 0.0};
    cplx w2{1.0, 0.0};
    SpherePoint() = default;
    SpherePoint(cplx a, cplx b) : w1(a), w2(b) {
        const double n = std::sqrt(std::norm(w1) + std::norm(w2));
        if (n == 0.0) throw std::invalid_argument("SpherePoint: zero vector");
        w1 /= n;
        w2 /= n;
    }
    static SpherePoint from_complex(cplx z) { return {z, {1.0, 0.0}}; }
    static SpherePoint infinity() { return {{1.0, 0.0}, {0.0, 0.0}}; }
    static SpherePoint from_boundary(const BoundaryPoint& p) { return {{p.a, 0.0}, {p.b, 0.0}}; }
    static SpherePoint from_hpoint(const HPoint& z) { return from_complex(z.c()); }

    bool is_infinite(double tol = 1e-14) const { return std::abs(w2) <= tol; }
    cplx affine() const { return w1 / w2; }

    // CP^1 -> S^2 (unit sphere in R^3); chordal distance is half the
    // euclidean distance between these vectors.
    std::array<double, 3> bloch() const {
        const cplx c = w1 * std::conj(w2);
        return {2.0 * c.real(), 2.0 * c.imag(), std::norm(w1) - std::norm(w2)};
    }
};

inline double chordal_dist(const SpherePoint& p, const SpherePoint& q) {
    const double d = std::abs(p.w1 * q.w2 - p.w2 * q.w1);
    return d > 1.0 ? 1.0 : d;
}

// Element of PSL(2,C). Stored as e^{log_scale} * m with m Frobenius-
// normalized; the implied matrix has det 1 (checked in logs). The ledger
// is what keeps ||A_t|| ~ e^{lambda t} representable past t ~ 1400/lambda.
struct ProjectiveMap {
    std::array<cplx, 4> m{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)};
    double log_scale = 0.0;

    ProjectiveMap() { renorm(); }

    static ProjectiveMap from_matrix(cplx a, cplx b, cplx c, cplx d) {
        const cplx det = a * d - b * c;
        if (std::abs(det) == 0.0) throw std::invalid_argument("ProjectiveMap: singular");
        const cplx s = std::sqrt(det);
        ProjectiveMap p;
        p.m = {a / s, b / s, c / s, d / s};
        p.log_scale = 0.0;
        p.renorm();
        return p;
    }
    static ProjectiveMap from_real(const RealMoebius& r) {
        return from_matrix({r.a, 0}, {r.b, 0}, {r.c, 0}, {r.d, 0});
    }
    static ProjectiveMap identity() { return {}; }

    double frob() const {
        return std::sqrt(std::norm(m[0]) + std::norm(m[1]) + std::norm(m[2]) + std::norm(m[3]));
    }
    void renorm() {
        const double f = frob();
        for (auto& e : m) e /= f;
        log_scale += std::log(f);
    }

    ProjectiveMap operator*(const ProjectiveMap& o) const {
        ProjectiveMap r;
        r.m[0] = m[0] * o.m[0] + m[1] * o.m[2];
        r.m[1] = m[0] * o.m[1] + m[1] * o.m[3];
        r.m[2] = m[2] * o.m[0] + m[3] * o.m[2];
        r.m[3] = m[2] * o.m[1] + m[3] * o.m[3];
        r.log_scale = log_scale + o.log_scale;
        r.renorm();
        return r;
    }

    // (e^L m)^{-1} = e^L adj(m) when the implied det is 1.
    ProjectiveMap inverse() const {
        ProjectiveMap r;
        r.m = {m[3], -m[1], -m[2], m[0]};
        r.log_scale = log_scale;
        r.renorm();
        return r;
    }

    SpherePoint apply(const SpherePoint& p) const {
        return {m[0] * p.w1 + m[1] * p.w2, m[2] * p.w1 + m[3] * p.w2};
    }

    cplx det_m() const { return m[0] * m[3] - m[1] * m[2]; }

    // |log det| of the implied matrix; should stay ~ 0.
    double det_residual() const {
        const cplx d = det_m();
        return std::abs(std::log(std::abs(d)) + 2.0 * log_scale) + std::abs(std::arg(d));
    }

    // trace of the det-1 representative (guarded: meaningless if the ledger
    // is astronomically large, which only happens for long products where
    // nobody asks for a trace).
    cplx trace_sl2() const {
        if (std::abs(log_scale) > 300.0)
            throw std::runtime_error("trace_sl2: ledger too large");
        return std::exp(log_scale) * (m[0] + m[3]);
    }

    // log of the operator norm of the implied det-1 matrix.
    double log_op_norm() const;
};

// Projective distance between maps, phase- and scale-invariant.
inline double proj_dist(const ProjectiveMap& p, const ProjectiveMap& q) {
    cplx ip(0.0, 0.0);
    double np = 0.0, nq = 0.0;
    for (int i = 0; i < 4; ++i) {
        ip += p.m[i] * std::conj(q.m[i]);
        np += std::norm(p.m[i]);
        nq += std::norm(q.m[i]);
    }
    const double c2 = std::min(1.0, std::norm(ip) / (np * nq));
    return std::sqrt(std::max(0.0, 1.0 - c2));
}

// Singular structure of the stored (Frobenius-normalized) matrix. The
// ledger cancels in ratios and directions.
struct Svd2 {
    double log_s1 = 0.0, log_s2 = 0.0;   // of the implied det-1 matrix
    SpherePoint v1, v2;                  // right singular directions (max, min)
    SpherePoint u1, u2;                  // left singular directions
};

namespace detail {
// top eigenvector of the hermitian psd matrix [[A, C],[conj(C), B]]
inline SpherePoint top_eigvec(double A, double B, cplx C, double l1) {
    if (std::abs(C) == 0.0)
        return A >= B ? SpherePoint({1, 0}, {0, 0}) : SpherePoint({0, 0}, {1, 0});
    const double n1 = std::norm(C) + (l1 - A) * (l1 - A);
    const double n2 = (l1 - B) * (l1 - B) + std::norm(C);
    if (n1 >= n2) return {C, cplx(l1 - A, 0.0)};
    return {cplx(l1 - B, 0.0), std::conj(C)};
}
inline SpherePoint orth(const SpherePoint& p) {
    return {-std::conj(p.w2), std::conj(p.w1)};
}
}  // namespace detail

inline Svd2 svd2(const ProjectiveMap& p) {
    const cplx a = p.m[0], b = p.m[1], c = p.m[2], d = p.m[3];
    // right vectors from m^* m, left vectors from m m^*; shared spectrum
    const double Ah = std::norm(a) + std::norm(c);
    const double Bh = std::norm(b) + std::norm(d);
    const cplx Ch = std::conj(a) * b + std::conj(c) * d;
    const double Ag = std::norm(a) + std::norm(b);
    const double Bg = std::norm(c) + std::norm(d);
    const cplx Cg = a * std::conj(c) + b * std::conj(d);
    const double tr = Ah + Bh;
    const double disc = std::sqrt(std::max(0.0, (Ah - Bh) * (Ah - Bh) + 4.0 * std::norm(Ch)));
    const double l1 = 0.5 * (tr + disc);
    Svd2 r;
    r.log_s1 = 0.5 * std::log(l1) + p.log_scale;
    // s1 s2 = |det m|; may underflow to -inf for gaps beyond double range
    const double adet = std::abs(a * d - b * c);
    r.log_s2 = (adet > 0.0 ? std::log(adet) - 0.5 * std::log(l1) : -HUGE_VAL) + p.log_scale;
    r.v1 = detail::top_eigvec(Ah, Bh, Ch, l1);
    r.v2 = detail::orth(r.v1);
    r.u1 = detail::top_eigvec(Ag, Bg, Cg, l1);
    r.u2 = detail::orth(r.u1);
    return r;
}

inline double ProjectiveMap::log_op_norm() const { return svd2(*this).log_s1; }

// log || (implied matrix) * x || for a unit homogeneous vector x.
inline double log_apply_norm(const ProjectiveMap& p, const SpherePoint& x) {
    const cplx y1 = p.m[0] * x.w1 + p.m[1] * x.w2;
    const cplx y2 = p.m[2] * x.w1 + p.m[3] * x.w2;
    return p.log_scale + 0.5 * std::log(std::norm(y1) + std::norm(y2));
}

enum class MoebiusClass { Identity, Parabolic, Elliptic, Loxodromic };

struct Classification {
    MoebiusClass cls = MoebiusClass::Identity;
    bool within_tolerance = false;    // parabolic only up to the tolerance band
    int n_fixed = 0;
    SpherePoint fixed[2];             // [0] attracting for loxodromic
};

// Classification by tr^2/det (scale-free): 4 -> parabolic, real in [0,4) ->
// elliptic, otherwise loxodromic with fixed points ordered by eigenvalue
// modulus.
inline Classification classify(const ProjectiveMap& p, double tol = 1e-9) {
    Classification r;
    const cplx tr = p.m[0] + p.m[3];
    const cplx t2 = tr * tr / p.det_m();
    if (proj_dist(p, ProjectiveMap::identity()) < tol) {
        r.cls = MoebiusClass::Identity;
        return r;
    }
    auto eigvec = [&](cplx lam) -> SpherePoint {
        // kernel of (m - lam I), pick the numerically larger row construction
        const cplx r1a = p.m[0] - lam, r1b = p.m[1];
        const cplx r2a = p.m[2], r2b = p.m[3] - lam;
        const cplx cand1_1 = -r1b, cand1_2 = r1a;     // orthogonal to row 1
        const cplx cand2_1 = -r2b, cand2_2 = r2a;
        if (std::norm(cand1_1) + std::norm(cand1_2) >= std::norm(cand2_1) + std::norm(cand2_2))
            return {cand1_1, cand1_2};
        return {cand2_1, cand2_2};
    };
    if (std::abs(t2 - 4.0) <= tol) {
        r.cls = MoebiusClass::Parabolic;
        r.within_tolerance = std::abs(t2 - 4.0) > 0.0;
        r.n_fixed = 1;
        r.fixed[0] = eigvec(0.5 * tr);
        return r;
    }
    const cplx det = p.det_m();
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
    const bool elliptic = std::abs(t2.imag()) <= tol && t2.real() >= 0.0 && t2.real() < 4.0;
    r.cls = elliptic ? MoebiusClass::Elliptic : MoebiusClass::Loxodromic;
    r.n_fixed = 2;
    if (std::abs(l1) >= std::abs(l2)) {
        r.fixed[0] = eigvec(l1);
        r.fixed[1] = eigvec(l2);
    } else {
        r.fixed[0] = eigvec(l2);
        r.fixed[1] = eigvec(l1);
    }
    return r;
}

}  // namespace rlab
