#pragma once

// Representations of the surface group into PSL(2,C), the holonomy cocycle
// A_t(v) of the suspension over the geodesic flow, the horocyclic cocycles
// B^{u,s}_t, and hypothesis validation (peripheral parabolicity,
// elementarity heuristic).
//
// Convention (locked by the Fuchsian pinning test, not by prose): A_t(v) is
// rho(w)^-1 for the crossing word w of the orbit segment, which is the
// unique sign/side choice making D(g_t v) = A_t(v)^-1 sigma0(g_t v) an
// identity when the developing map is the inclusion.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rlab/projective.hpp"
#include "rlab/surface.hpp"

namespace rlab {

enum class Elementarity { Elementary, NonElementary, Inconclusive };

struct CuspTrace {
    std::string word;
    cplx trace;          // of the det-1 representative (sign is projective)
    double tr2_defect;   // |tr^2 - 4|
    bool parabolic;
};

struct ParabolicReport {
    std::vector<CuspTrace> cusps;
    bool all_parabolic = true;
};

struct Representation {
    std::array<ProjectiveMap, 2> gen;
    std::array<ProjectiveMap, 2> gen_inv;
    ParabolicReport parabolic;
    Elementarity elementarity = Elementarity::Inconclusive;
    std::string name;

    const ProjectiveMap& letter_map(int l) const {
        return (l & 1) ? gen_inv[static_cast<size_t>(l >> 1)] : gen[static_cast<size_t>(l >> 1)];
    }
};

inline ProjectiveMap rho_of_word(const Representation& rep, const GroupWord& w) {
    ProjectiveMap m;
    for (std::int8_t l : w.letters) m = m * rep.letter_map(l);
    return m;
}

inline ParabolicReport check_parabolic(const std::array<ProjectiveMap, 2>& gens,
                                       const SurfaceModel& model, double tol = 1e-9) {
    ParabolicReport rep;
    Representation tmp;
    tmp.gen = gens;
    tmp.gen_inv = {gens[0].inverse(), gens[1].inverse()};
    for (const auto& c : model.cusps) {
        const ProjectiveMap m = rho_of_word(tmp, c.peripheral);
        CuspTrace ct;
        ct.word = c.peripheral.str();
        ct.trace = m.trace_sl2();
        ct.tr2_defect = std::abs(ct.trace * ct.trace - 4.0);
        ct.parabolic = ct.tr2_defect <= tol;
        rep.all_parabolic = rep.all_parabolic && ct.parabolic;
        rep.cusps.push_back(ct);
    }
    return rep;
}

inline ParabolicReport check_parabolic(const Representation& rep, const SurfaceModel& model,
                                       double tol = 1e-9) {
    return check_parabolic(rep.gen, model, tol);
}

namespace detail {

// Fixed-point data of a sampled word, for the elementarity heuristic.
struct SampledFix {
    MoebiusClass cls;
    int n;
    SpherePoint fp[2];
};

inline std::vector<GroupWord> heuristic_words(int max_len) {
    std::vector<GroupWord> out;
    std::vector<std::int8_t> cur;
    struct Rec {
        std::vector<GroupWord>& out;
        int max_len;
        void go(std::vector<std::int8_t>& cur) {
            if (!cur.empty()) {
                GroupWord w;
                w.letters = cur;
                out.push_back(w);
            }
            if (static_cast<int>(cur.size()) == max_len) return;
            for (std::int8_t l = 0; l < 4; ++l) {
                if (!cur.empty() && cur.back() == (l ^ 1)) continue;
                cur.push_back(l);
                go(cur);
                cur.pop_back();
            }
        }
    } rec{out, max_len};
    rec.go(cur);
    return out;
}

}  // namespace detail

// Verdict-style elementarity test on sampled words. Elementary if a common
// fixed point or a common invariant pair is found; non-elementary if at
// least two loxodromics have disjoint fixed sets and no common fixed point
// exists; inconclusive otherwise.
inline Elementarity elementary_heuristic(const Representation& rep, double tol = 1e-6,
                                         int max_len = 4) {
    std::vector<detail::SampledFix> fixes;
    int n_lox = 0;
    for (const auto& w : detail::heuristic_words(max_len)) {
        const ProjectiveMap m = rho_of_word(rep, w);
        const Classification c = classify(m, 1e-9);
        if (c.cls == MoebiusClass::Identity) continue;
        detail::SampledFix f;
        f.cls = c.cls;
        f.n = c.n_fixed;
        f.fp[0] = c.fixed[0];
        f.fp[1] = c.fixed[1];
        if (c.cls == MoebiusClass::Loxodromic) ++n_lox;
        fixes.push_back(f);
    }
    if (fixes.empty()) return Elementarity::Elementary;  // trivial image
    // common fixed point: intersect candidate sets of the first map
    for (int k = 0; k < fixes[0].n; ++k) {
        const SpherePoint cand = fixes[0].fp[k];
        bool common = true;
        for (const auto& f : fixes) {
            bool hit = false;
            for (int j = 0; j < f.n; ++j)
                if (chordal_dist(cand, f.fp[j]) < tol) { hit = true; break; }
            if (!hit) { common = false; break; }
        }
        if (common) return Elementarity::Elementary;
    }
    // common invariant pair {p,q}: every sampled map fixes or swaps it
    for (const auto& f0 : fixes) {
        if (f0.n != 2) continue;
        const SpherePoint p = f0.fp[0], q = f0.fp[1];
        bool invariant = true;
        for (const auto& w : detail::heuristic_words(2)) {
            const ProjectiveMap m = rho_of_word(rep, w);
            const SpherePoint mp = m.apply(p), mq = m.apply(q);
            const bool keeps = chordal_dist(mp, p) < tol && chordal_dist(mq, q) < tol;
            const bool swaps = chordal_dist(mp, q) < tol && chordal_dist(mq, p) < tol;
            if (!keeps && !swaps) { invariant = false; break; }
        }
        if (invariant) return Elementarity::Elementary;
        break;  // one pair candidate is enough; others are Mobius-equivalent here
    }
    // two loxodromics with separated fixed sets
    if (n_lox >= 2) {
        for (size_t i = 0; i < fixes.size(); ++i) {
            if (fixes[i].cls != MoebiusClass::Loxodromic) continue;
            for (size_t j = i + 1; j < fixes.size(); ++j) {
                if (fixes[j].cls != MoebiusClass::Loxodromic) continue;
                double sep = 2.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        sep = std::min(sep, chordal_dist(fixes[i].fp[a], fixes[j].fp[b]));
                if (sep > tol) return Elementarity::NonElementary;
            }
        }
    }
    return Elementarity::Inconclusive;
}

inline Representation make_representation(const std::array<ProjectiveMap, 2>& gens,
                                          const SurfaceModel& model,
                                          const std::string& name = "") {
    Representation r;
    r.gen = gens;
    r.gen_inv = {gens[0].inverse(), gens[1].inverse()};
    r.parabolic = check_parabolic(gens, model);
    r.elementarity = elementary_heuristic(r);
    r.name = name;
    return r;
}

// The identity embedding of the surface group (developing map = inclusion).
inline Representation fuchsian_baseline(const SurfaceModel& model) {
    return make_representation(
        {ProjectiveMap::from_real(model.gens[0]), ProjectiveMap::from_real(model.gens[1])}, model,
        "fuchsian");
}

// rho(A) = [[1,a],[0,1]], rho(B) = [[1,0],[-4/a,1]]; every peripheral word
// is parabolic for every a != 0 (tr rho(AB) = 2 + a(-4/a) = -2), and a = 2
// recovers the Fuchsian baseline.
inline Representation parabolic_family(cplx a, const SurfaceModel& model) {
    if (std::abs(a) == 0.0) throw std::invalid_argument("parabolic_family: a = 0");
    const ProjectiveMap ga = ProjectiveMap::from_matrix({1, 0}, a, {0, 0}, {1, 0});
    const ProjectiveMap gb = ProjectiveMap::from_matrix({1, 0}, {0, 0}, -4.0 / a, {1, 0});
    Representation r = make_representation({ga, gb}, model, "family");
    return r;
}

// Holonomy cocycle over the geodesic flow: A_t(v) = rho(w)^-1, w the
// crossing word of g_[0,t](v).
inline ProjectiveMap cocycle(const Representation& rep, const SurfaceModel& model,
                             const UnitTangent& v, double t) {
    return rho_of_word(rep, geodesic_word(model, v, t)).inverse();
}

inline ProjectiveMap horocycle_cocycle(const Representation& rep, const SurfaceModel& model,
                                       const UnitTangent& v, double t, HorocycleKind kind) {
    return rho_of_word(rep, horocycle_word(model, v, t, kind)).inverse();
}

// ---------------------------------------------------------------------------
// JSON (complex entries as [re, im])
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const ProjectiveMap& m) {
    nlohmann::json a = nlohmann::json::array();
    const double s = std::exp(m.log_scale);  // representation matrices are small
    for (int i = 0; i < 4; ++i) a.push_back({s * m.m[i].real(), s * m.m[i].imag()});
    return a;
}
inline ProjectiveMap projective_from_json(const nlohmann::json& j) {
    auto c = [&](int i) {
        return cplx(j.at(i).at(0).get<double>(), j.at(i).at(1).get<double>());
    };
    return ProjectiveMap::from_matrix(c(0), c(1), c(2), c(3));
}

inline nlohmann::json to_json(const Representation& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["generators"] = {to_json(r.gen[0]), to_json(r.gen[1])};
    return j;
}
inline Representation representation_from_json(const nlohmann::json& j,
                                               const SurfaceModel& model) {
    return make_representation(
        {projective_from_json(j.at("generators").at(0)),
         projective_from_json(j.at("generators").at(1))},
        model, j.value("name", std::string("custom")));
}

}  // namespace rlab
