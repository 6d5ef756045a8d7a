#pragma once

// Finite-type hyperbolic surfaces H/Gamma: fundamental ideal polygon,
// reduction to the domain with word tracking, cusp horoballs, Liouville
// sampling, and exact polygon-crossing trackers for geodesic and
// horocyclic arcs (geodesic-side intersections in closed form, no
// stepping).
//
// Built-in model: Gamma(2), the thrice-punctured sphere, with the ideal
// quadrilateral |Re z| <= 1, |2z+1| >= 1, |2z-1| >= 1 and cusps at
// infinity, 0 and +-1. All matrices are integer and every peripheral
// element is parabolic.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rlab/halfplane.hpp"
#include "rlab/rng.hpp"

namespace rlab {

// Letters: 0 = A, 1 = A^-1, 2 = B, 3 = B^-1. Inverse letter is l ^ 1.
struct GroupWord {
    std::vector<std::int8_t> letters;

    void append(std::int8_t l) {
        if (!letters.empty() && letters.back() == (l ^ 1))
            letters.pop_back();
        else
            letters.push_back(l);
    }
    void append(const GroupWord& w) {
        for (std::int8_t l : w.letters) append(l);
    }
    GroupWord inverse() const {
        GroupWord w;
        w.letters.reserve(letters.size());
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            w.letters.push_back(static_cast<std::int8_t>(*it ^ 1));
        return w;
    }
    bool empty() const { return letters.empty(); }
    size_t size() const { return letters.size(); }
    bool operator==(const GroupWord& o) const { return letters == o.letters; }
    std::string str() const {
        static const char* sym = "AaBb";
        std::string s;
        s.reserve(letters.size());
        for (std::int8_t l : letters) s.push_back(sym[l]);
        return s;
    }
    static GroupWord parse(const std::string& s) {
        GroupWord w;
        for (char c : s) {
            switch (c) {
                case 'A': w.append(0); break;
                case 'a': w.append(1); break;
                case 'B': w.append(2); break;
                case 'b': w.append(3); break;
                default: throw std::invalid_argument("GroupWord::parse");
            }
        }
        return w;
    }
};

// Geodesic side of the polygon; crossing it from inside P enters letter*P.
struct Side {
    bool is_line = false;
    double line_x = 0.0;    // vertical line x = line_x
    double center = 0.0;    // euclidean half-circle otherwise
    double radius = 1.0;
    int letter = 0;
};

struct Cusp {
    BoundaryPoint point;
    GroupWord peripheral;
    RealMoebius chart;      // isometry sending the cusp point to infinity
    double strip_x0 = -1.0; // fundamental strip of the peripheral action, chart coords
    double strip_x1 = 1.0;
    double level = 1.0;     // horoball boundary Im-level in chart coords
    // charts detecting every P-corner copy of the horoball (a cusp may touch
    // the polygon at several ideal vertices, e.g. +-1 in the Gamma(2) model)
    std::vector<RealMoebius> lift_charts;
    double mass() const { return (strip_x1 - strip_x0) / level; }
};

struct SurfaceModel {
    std::array<RealMoebius, 2> gens;
    std::array<std::string, 2> labels{{"A", "B"}};
    std::vector<Side> sides;
    std::vector<Cusp> cusps;
    int genus = 0;
    double core_ymin = 0.1;  // compact core bounding box (after cusp removal)
    double core_ymax = 1.0;

    double area() const { return 2.0 * kPi * (2 * genus - 2 + static_cast<int>(cusps.size())); }
    double cusp_mass() const {
        double m = 0.0;
        for (const auto& c : cusps) m += c.mass();
        return m;
    }
    double core_mass() const { return area() - cusp_mass(); }

    RealMoebius letter_matrix(int l) const {
        const RealMoebius& g = gens[static_cast<size_t>(l >> 1)];
        return (l & 1) ? g.inverse() : g;
    }
    RealMoebius word_matrix(const GroupWord& w) const {
        RealMoebius m;
        for (std::int8_t l : w.letters) m = m * letter_matrix(l);
        return m;
    }
    // Pointwise action of a word; safe for words far too long for a matrix.
    HPoint word_apply(const GroupWord& w, HPoint z) const {
        for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
            z = letter_matrix(*it).apply(z);
        return z;
    }

    double side_violation(const Side& s, const HPoint& z) const {
        if (s.is_line) {
            // positive when z is beyond the side, i.e. outside P
            return (s.line_x > 0.0) ? (z.x - s.line_x) : (s.line_x - z.x);
        }
        return s.radius - std::hypot(z.x - s.center, z.y);  // positive inside circle
    }
    int violated_side(const HPoint& z, double tol = 1e-12) const {
        for (size_t i = 0; i < sides.size(); ++i)
            if (side_violation(sides[i], z) > tol) return static_cast<int>(i);
        return -1;
    }
    bool contains(const HPoint& z, double tol = 1e-12) const { return violated_side(z, tol) < 0; }

    bool in_cusp_region(const HPoint& z, size_t i) const {
        for (const auto& k : cusps[i].lift_charts)
            if (k.apply(z).y > cusps[i].level) return true;
        return false;
    }
};

// The Gamma(2) model. Generators A: z -> z+2 and B: z -> z/(-2z+1); the
// third peripheral class (AB)^-1 has trace -2 and fixes 1.
inline SurfaceModel thrice_punctured_sphere() {
    SurfaceModel m;
    m.gens[0] = RealMoebius(1.0, 2.0, 0.0, 1.0);
    m.gens[1] = RealMoebius(1.0, 0.0, -2.0, 1.0);
    m.genus = 0;
    m.sides = {
        Side{true, -1.0, 0.0, 0.0, 1},   // x = -1, enters A^-1 P
        Side{true, 1.0, 0.0, 0.0, 0},    // x = +1, enters A P
        Side{false, 0.0, -0.5, 0.5, 2},  // |z+1/2| = 1/2, enters B P
        Side{false, 0.0, 0.5, 0.5, 3},   // |z-1/2| = 1/2, enters B^-1 P
    };
    Cusp cinf;
    cinf.point = BoundaryPoint::infinity();
    cinf.peripheral = GroupWord::parse("A");
    cinf.chart = RealMoebius::identity();
    cinf.strip_x0 = -1.0;
    cinf.strip_x1 = 1.0;
    cinf.level = 1.0;
    cinf.lift_charts = {cinf.chart};
    Cusp c0;
    c0.point = BoundaryPoint::of(0.0);
    c0.peripheral = GroupWord::parse("B");
    c0.chart = RealMoebius(0.0, -1.0, 1.0, 0.0);  // -1/z
    c0.strip_x0 = -1.0;
    c0.strip_x1 = 1.0;
    c0.level = 2.0;  // horoball of euclidean diameter 1/2 at 0
    c0.lift_charts = {c0.chart};
    Cusp c1;
    c1.point = BoundaryPoint::of(1.0);
    c1.peripheral = GroupWord::parse("AB").inverse();
    c1.chart = RealMoebius(0.0, 1.0, -1.0, 1.0);  // 1/(1-z)
    c1.strip_x0 = -1.0;
    c1.strip_x1 = 1.0;
    c1.level = 2.0;  // horoball of euclidean diameter 1/2 at 1
    // the cusp touches P at both +1 and -1; the -1 corner is seen through A
    c1.lift_charts = {c1.chart, c1.chart * m.gens[0]};
    m.cusps = {cinf, c0, c1};
    // corners of the core: horoball circles meet the polygon arcs at y = 0.4
    m.core_ymin = 0.4;
    m.core_ymax = 1.0;
    return m;
}

struct Reduction {
    HPoint z;
    GroupWord word;   // z_original = word * z
    int iterations = 0;
};

// Bring z into the closed fundamental polygon, tracking the deck word.
// Boundary ties are resolved by the fixed side order of the model.
inline Reduction reduce_to_domain(const SurfaceModel& model, HPoint z, int max_iter = 200000) {
    Reduction r;
    for (int it = 0; it < max_iter; ++it) {
        const int si = model.violated_side(z);
        if (si < 0) {
            r.z = z;
            r.iterations = it;
            return r;
        }
        const Side& s = model.sides[static_cast<size_t>(si)];
        const RealMoebius g = model.letter_matrix(s.letter);
        if (s.is_line && g.c == 0.0 && g.a == g.d) {
            // translation side: jump all copies at once
            const double t = g.b / g.d;
            const int k = static_cast<int>(std::ceil((model.side_violation(s, z)) / std::abs(t)));
            const double shift = (s.line_x > 0.0 ? -1.0 : 1.0) * std::abs(t) * k;
            z = HPoint(z.x + shift, z.y);
            for (int j = 0; j < k; ++j) r.word.append(static_cast<std::int8_t>(s.letter));
        } else {
            z = g.inverse().apply(z);
            r.word.append(static_cast<std::int8_t>(s.letter));
        }
    }
    throw std::runtime_error("reduce_to_domain: max_iter exceeded (word so far: " +
                             r.word.str() + ")");
}

// ---------------------------------------------------------------------------
// Crossing trackers
// ---------------------------------------------------------------------------

namespace detail {

// Euclidean shape of a geodesic or horocycle in the current frame.
struct CurveShape {
    bool is_line = false;    // vertical line (geodesic) or horizontal line (horocycle)
    double line_x = 0.0;     // geodesic: x = line_x
    double line_y = 0.0;     // horocycle centered at infinity: y = line_y
    bool horizontal = false;
    double center_x = 0.0, center_y = 0.0, radius = 0.0;
};

inline CurveShape geodesic_shape(const BoundaryPoint& em, const BoundaryPoint& ep) {
    CurveShape s;
    if (em.is_infinite() || ep.is_infinite()) {
        s.is_line = true;
        s.line_x = em.is_infinite() ? ep.value() : em.value();
        return s;
    }
    const double u = em.value(), v = ep.value();
    s.center_x = 0.5 * (u + v);
    s.center_y = 0.0;
    s.radius = 0.5 * std::abs(u - v);
    return s;
}

inline CurveShape horocycle_shape(const BoundaryPoint& center, const HPoint& through) {
    CurveShape s;
    if (center.is_infinite()) {
        s.is_line = true;
        s.horizontal = true;
        s.line_y = through.y;
        return s;
    }
    const double xi = center.value();
    const double diam = ((through.x - xi) * (through.x - xi) + through.y * through.y) / through.y;
    s.center_x = xi;
    s.center_y = 0.5 * diam;
    s.radius = 0.5 * diam;
    return s;
}

// Intersections of a curve shape with a polygon side, as points in H.
inline int intersect_side(const CurveShape& c, const Side& s, HPoint out[2]) {
    int n = 0;
    auto push = [&](double x, double y) {
        if (y > 1e-300) out[n++] = HPoint(x, y);
    };
    if (c.is_line && !c.horizontal) {           // vertical curve
        if (s.is_line) return 0;                // parallel verticals
        const double dx = c.line_x - s.center;
        const double y2 = s.radius * s.radius - dx * dx;
        if (y2 > 0.0) push(c.line_x, std::sqrt(y2));
        return n;
    }
    if (c.is_line && c.horizontal) {            // horizontal horocycle line
        if (s.is_line) {
            push(s.line_x, c.line_y);
            return n;
        }
        const double dy = c.line_y - 0.0;
        const double x2 = s.radius * s.radius - dy * dy;
        if (x2 > 0.0) {
            push(s.center + std::sqrt(x2), c.line_y);
            push(s.center - std::sqrt(x2), c.line_y);
        }
        return n;
    }
    // circle curve
    if (s.is_line) {
        const double dx = s.line_x - c.center_x;
        const double y2 = c.radius * c.radius - dx * dx;
        if (y2 > 0.0) {
            const double rt = std::sqrt(y2);
            if (c.center_y + rt > 0.0) push(s.line_x, c.center_y + rt);
            if (c.center_y - rt > 0.0) push(s.line_x, c.center_y - rt);
        }
        return n;
    }
    // circle-circle: radical line x = const when both centers are on
    // y = 0 (geodesics); general case when the curve is a horocycle.
    const double dcx = s.center - c.center_x;
    const double dcy = 0.0 - c.center_y;
    const double d2 = dcx * dcx + dcy * dcy;
    if (d2 < 1e-28) return 0;  // concentric
    // solve |p - cc|^2 = cr^2, |p - sc|^2 = sr^2
    const double cr2 = c.radius * c.radius, sr2 = s.radius * s.radius;
    const double k = (cr2 - sr2 + d2) / (2.0 * d2);
    const double h2 = cr2 / d2 - k * k;
    if (h2 < 0.0) return 0;
    const double h = std::sqrt(h2);
    const double px = c.center_x + k * dcx, py = c.center_y + k * dcy;
    push(px - h * dcy, py + h * dcx);
    push(px + h * dcy, py - h * dcx);
    return n;
}

}  // namespace detail

// Exact crossing tracker for the lifted geodesic of a unit tangent. The
// geodesic is pulled back to the current tile after every crossing, so all
// coordinates stay bounded regardless of horizon; the crossing word is the
// deck word w with lifted-point(t) in w*P.
class GeodesicTracker {
public:
    GeodesicTracker(const SurfaceModel& model, const UnitTangent& v)
        : model_(&model), em_(v.xi_minus), ep_(v.xi_plus) {
        const HPoint z0 = base_point(v);
        if (!model.contains(z0, 1e-9))
            throw std::invalid_argument("GeodesicTracker: base point not in the polygon");
        rebase(z0, 0.0);
    }

    // Advance the global time to t; on_cross(letter, tau, z_pre) fires at
    // each side crossing with the crossing point in the pre-crossing frame.
    template <typename F>
    void advance_to(double t, F&& on_cross) {
        while (t_cur_ < t) {
            int side = -1;
            double tau_best = 0.0;
            HPoint zbest;
            find_next_crossing(t, side, tau_best, zbest);
            if (side < 0) {
                t_cur_ = t;
                return;
            }
            const int letter = model_->sides[static_cast<size_t>(side)].letter;
            on_cross(letter, tau_best, zbest);
            word_.append(static_cast<std::int8_t>(letter));
            const RealMoebius g = model_->letter_matrix(letter).inverse();
            em_ = g.apply(em_);
            ep_ = g.apply(ep_);
            rebase(g.apply(zbest), tau_best);
            if (++crossings_ > max_crossings_)
                throw std::runtime_error("GeodesicTracker: crossing budget exceeded");
        }
    }
    void advance_to(double t) {
        advance_to(t, [](int, double, const HPoint&) {});
    }

    const GroupWord& word() const { return word_; }
    double time() const { return t_cur_; }
    int tie_events() const { return tie_events_; }

    // Current point in the current frame (the reduced position).
    HPoint point() const {
        return HPoint(detail::chart_inverse(chart_, cplx(0.0, std::exp(mulog_ + t_cur_))));
    }
    // Reduced representative of g_t(v) at the current time.
    UnitTangent vector() const {
        const double mu_i = detail::chart_modulus(chart_, {0.0, 1.0});
        return {em_, ep_, mulog_ + t_cur_ - std::log(mu_i)};
    }

private:
    void rebase(const HPoint& z, double tau) {
        chart_ = geodesic_chart(em_, ep_);
        mulog_ = std::log(detail::chart_modulus(chart_, z.c())) - tau;
        t_cur_ = tau;
    }
    void find_next_crossing(double t_max, int& side, double& tau, HPoint& zc) const {
        const detail::CurveShape shape = detail::geodesic_shape(em_, ep_);
        side = -1;
        double best = t_max;
        for (size_t i = 0; i < model_->sides.size(); ++i) {
            HPoint pts[2];
            const int n = detail::intersect_side(shape, model_->sides[i], pts);
            for (int j = 0; j < n; ++j) {
                const double tb =
                    std::log(detail::chart_modulus(chart_, pts[j].c())) - mulog_;
                if (tb <= t_cur_ + step_eps_) continue;
                if (tb < best - tie_eps_) {
                    best = tb;
                    side = static_cast<int>(i);
                    zc = pts[j];
                } else if (side >= 0 && std::abs(tb - best) <= tie_eps_) {
                    ++const_cast<GeodesicTracker*>(this)->tie_events_;
                }
            }
        }
        tau = best;
    }

    const SurfaceModel* model_;
    BoundaryPoint em_, ep_;
    RealMoebius chart_;
    double mulog_ = 0.0, t_cur_ = 0.0;
    GroupWord word_;
    long crossings_ = 0;
    long max_crossings_ = 100000000;
    int tie_events_ = 0;
    static constexpr double step_eps_ = 1e-12;
    static constexpr double tie_eps_ = 1e-12;
};

// Same idea along a stable or unstable horocyclic arc. Parametrized by
// arclength with the sign convention of horocycle_flow.
class HorocycleTracker {
public:
    HorocycleTracker(const SurfaceModel& model, const UnitTangent& v, HorocycleKind kind)
        : model_(&model) {
        const HPoint z0 = base_point(v);
        if (!model.contains(z0, 1e-9))
            throw std::invalid_argument("HorocycleTracker: base point not in the polygon");
        center_ = (kind == HorocycleKind::Stable) ? v.xi_plus : v.xi_minus;
        dir_ = (kind == HorocycleKind::Stable) ? 1.0 : -1.0;
        rebase(z0, 0.0);
    }

    template <typename F>
    void advance_to(double u, F&& on_cross) {
        const double sgn = (u >= u_cur_) ? 1.0 : -1.0;
        while (sgn * (u - u_cur_) > 0.0) {
            int side = -1;
            double ub = 0.0;
            HPoint zb;
            find_next_crossing(u, sgn, side, ub, zb);
            if (side < 0) {
                u_cur_ = u;
                return;
            }
            const int letter = model_->sides[static_cast<size_t>(side)].letter;
            on_cross(letter, ub, zb);
            word_.append(static_cast<std::int8_t>(letter));
            const RealMoebius g = model_->letter_matrix(letter).inverse();
            center_ = g.apply(center_);
            rebase(g.apply(zb), ub);
            if (++crossings_ > max_crossings_)
                throw std::runtime_error("HorocycleTracker: crossing budget exceeded");
        }
    }
    void advance_to(double u) {
        advance_to(u, [](int, double, const HPoint&) {});
    }

    const GroupWord& word() const { return word_; }
    HPoint point() const { return point_at(u_cur_); }

private:
    RealMoebius chart() const {
        if (center_.is_infinite()) return RealMoebius::identity();
        // det-1 map sending the center to infinity
        const double a = center_.a, b = center_.b;
        return RealMoebius(-a, -b, b, -a);
    }
    void rebase(const HPoint& z, double u) {
        K_ = chart();
        const cplx w = K_.apply(z.c());
        Y_ = w.imag();
        X_ = w.real();
        u_cur_ = u;
    }
    HPoint point_at(double u) const {
        const cplx w(X_ + dir_ * (u - u_cur_) * Y_, Y_);
        return HPoint(detail::chart_inverse(K_, w));
    }
    void find_next_crossing(double u_max, double sgn, int& side, double& ub, HPoint& zb) const {
        const detail::CurveShape shape = detail::horocycle_shape(center_, point_at(u_cur_));
        side = -1;
        double best = u_max;
        for (size_t i = 0; i < model_->sides.size(); ++i) {
            HPoint pts[2];
            const int n = detail::intersect_side(shape, model_->sides[i], pts);
            for (int j = 0; j < n; ++j) {
                const cplx w = K_.apply(pts[j].c());
                const double u = u_cur_ + dir_ * (w.real() - X_) / Y_;
                if (sgn * (u - u_cur_) <= step_eps_) continue;
                if (sgn * (u - best) < -tie_eps_) {
                    best = u;
                    side = static_cast<int>(i);
                    zb = pts[j];
                } else if (side >= 0 && std::abs(u - best) <= tie_eps_) {
                    ++const_cast<HorocycleTracker*>(this)->tie_events_;
                }
            }
        }
        ub = best;
    }

    const SurfaceModel* model_;
    BoundaryPoint center_{1.0, 0.0};
    RealMoebius K_;
    double dir_ = 1.0, Y_ = 1.0, X_ = 0.0, u_cur_ = 0.0;
    GroupWord word_;
    long crossings_ = 0;
    long max_crossings_ = 100000000;
    int tie_events_ = 0;
    static constexpr double step_eps_ = 1e-12;
    static constexpr double tie_eps_ = 1e-12;
};

// Deck word of the geodesic orbit segment g_[0,t](v); base(v) must be in P.
inline GroupWord geodesic_word(const SurfaceModel& model, const UnitTangent& v, double t) {
    if (t >= 0.0) {
        GeodesicTracker tr(model, v);
        tr.advance_to(t);
        return tr.word();
    }
    GeodesicTracker tr(model, reverse(v));
    tr.advance_to(-t);
    return tr.word();
}

inline GroupWord horocycle_word(const SurfaceModel& model, const UnitTangent& v, double t,
                                HorocycleKind kind) {
    HorocycleTracker tr(model, v, kind);
    tr.advance_to(t);
    return tr.word();
}

// ---------------------------------------------------------------------------
// Liouville sampling
// ---------------------------------------------------------------------------

struct LiouvilleSampler {
    const SurfaceModel* model;
    long proposed = 0;
    long accepted = 0;

    explicit LiouvilleSampler(const SurfaceModel& m) : model(&m) {}

    HPoint sample_base(Rng& rng) {
        const double total = model->area();
        double pick = rng.u01() * total;
        for (const auto& c : model->cusps) {
            if (pick < c.mass()) {
                const double x = rng.uniform(c.strip_x0, c.strip_x1);
                const double y = c.level / (1.0 - rng.u01());
                const HPoint z(c.chart.inverse().apply(cplx(x, y)));
                return reduce_to_domain(*model, z).z;  // cusp strips may span two P corners
            }
            pick -= c.mass();
        }
        // compact core: exact 1/y^2 marginal in the bounding box, rejection on shape
        const double y0 = model->core_ymin, y1 = model->core_ymax;
        for (int tries = 0; tries < 4000000; ++tries) {
            ++proposed;
            const double x = rng.uniform(-1.0, 1.0);
            const double u = rng.u01();
            const double y = 1.0 / (1.0 / y0 - u * (1.0 / y0 - 1.0 / y1));
            const HPoint z(x, y);
            bool in_cusp = false;
            for (size_t i = 0; i < model->cusps.size(); ++i)
                if (model->in_cusp_region(z, i)) { in_cusp = true; break; }
            if (!in_cusp && model->contains(z)) {
                ++accepted;
                return z;
            }
            if (proposed > 10000 && accepted < proposed / 10000)
                throw std::runtime_error("LiouvilleSampler: rejection efficiency below 1e-4");
        }
        throw std::runtime_error("LiouvilleSampler: rejection failed");
    }

    UnitTangent sample(Rng& rng) {
        const HPoint z = sample_base(rng);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        return tangent_from_point_angle(z, phi);
    }
};

inline std::vector<UnitTangent> sample_liouville(const SurfaceModel& model, int n, Rng& rng) {
    LiouvilleSampler s(model);
    std::vector<UnitTangent> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(s.sample(rng));
    return out;
}

// Monte Carlo area of the polygon: exact cusp-strip masses plus a
// rejection estimate of the compact core (the Gauss-Bonnet oracle).
inline double estimate_polygon_area(const SurfaceModel& model, int n, Rng& rng) {
    const double y0 = model.core_ymin, y1 = model.core_ymax;
    const double box_mass = 2.0 * (1.0 / y0 - 1.0 / y1);
    int acc = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.uniform(-1.0, 1.0);
        const double u = rng.u01();
        const double y = 1.0 / (1.0 / y0 - u * (1.0 / y0 - 1.0 / y1));
        const HPoint z(x, y);
        bool in_cusp = false;
        for (size_t c = 0; c < model.cusps.size(); ++c)
            if (model.in_cusp_region(z, c)) { in_cusp = true; break; }
        if (!in_cusp && model.contains(z)) ++acc;
    }
    return model.cusp_mass() + box_mass * acc / n;
}

// ---------------------------------------------------------------------------
// JSON round trip (matrices as row-major arrays of reals)
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const RealMoebius& m) {
    return nlohmann::json::array({m.a, m.b, m.c, m.d});
}
inline RealMoebius real_moebius_from_json(const nlohmann::json& j) {
    return RealMoebius(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
                       j.at(3).get<double>());
}

inline nlohmann::json to_json(const SurfaceModel& m) {
    nlohmann::json j;
    j["generators"] = {to_json(m.gens[0]), to_json(m.gens[1])};
    j["labels"] = m.labels;
    j["genus"] = m.genus;
    j["core_ymin"] = m.core_ymin;
    j["core_ymax"] = m.core_ymax;
    j["sides"] = nlohmann::json::array();
    for (const auto& s : m.sides)
        j["sides"].push_back({{"is_line", s.is_line},
                              {"line_x", s.line_x},
                              {"center", s.center},
                              {"radius", s.radius},
                              {"letter", s.letter}});
    j["cusps"] = nlohmann::json::array();
    for (const auto& c : m.cusps)
        j["cusps"].push_back({{"point", {c.point.a, c.point.b}},
                              {"peripheral", c.peripheral.str()},
                              {"chart", to_json(c.chart)},
                              {"strip", {c.strip_x0, c.strip_x1}},
                              {"level", c.level}});
    return j;
}

inline SurfaceModel surface_from_json(const nlohmann::json& j) {
    SurfaceModel m;
    m.gens[0] = real_moebius_from_json(j.at("generators").at(0));
    m.gens[1] = real_moebius_from_json(j.at("generators").at(1));
    m.labels[0] = j.at("labels").at(0).get<std::string>();
    m.labels[1] = j.at("labels").at(1).get<std::string>();
    m.genus = j.at("genus").get<int>();
    m.core_ymin = j.at("core_ymin").get<double>();
    m.core_ymax = j.at("core_ymax").get<double>();
    for (const auto& js : j.at("sides")) {
        Side s;
        s.is_line = js.at("is_line").get<bool>();
        s.line_x = js.at("line_x").get<double>();
        s.center = js.at("center").get<double>();
        s.radius = js.at("radius").get<double>();
        s.letter = js.at("letter").get<int>();
        m.sides.push_back(s);
    }
    for (const auto& jc : j.at("cusps")) {
        Cusp c;
        c.point = BoundaryPoint(jc.at("point").at(0).get<double>(),
                                jc.at("point").at(1).get<double>());
        c.peripheral = GroupWord::parse(jc.at("peripheral").get<std::string>());
        c.chart = real_moebius_from_json(jc.at("chart"));
        c.strip_x0 = jc.at("strip").at(0).get<double>();
        c.strip_x1 = jc.at("strip").at(1).get<double>();
        c.level = jc.at("level").get<double>();
        m.cusps.push_back(c);
    }
    return m;
}

}  // namespace rlab
