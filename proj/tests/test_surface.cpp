#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "rlab/rng.hpp"
#include "rlab/stats.hpp"
#include "rlab/surface.hpp"

using namespace rlab;

namespace {
const SurfaceModel& model() {
    static SurfaceModel m = thrice_punctured_sphere();
    return m;
}
UnitTangent random_tangent_in_P(Rng& rng) {
    LiouvilleSampler s(model());
    return s.sample(rng);
}
}  // namespace

TEST_CASE("group words", "[surface]") {
    GroupWord w = GroupWord::parse("ABb");
    CHECK(w.str() == "A");  // cancellation
    w.append(GroupWord::parse("aB"));
    CHECK(w.str() == "B");
    CHECK(GroupWord::parse("ABab").inverse().str() == "BAba");
    CHECK(GroupWord::parse("AB").inverse().str() == "ba");
}

TEST_CASE("gamma(2) model basics", "[surface]") {
    const SurfaceModel& m = model();
    CHECK(m.gens[0].trace() == Catch::Approx(2.0));
    CHECK(std::abs(m.gens[1].trace()) == Catch::Approx(2.0));
    // every peripheral word is parabolic (tr^2 = 4) on the nose
    for (const auto& c : m.cusps) {
        const double tr = m.word_matrix(c.peripheral).trace();
        CHECK(tr * tr == Catch::Approx(4.0).margin(1e-9));
    }
    // third peripheral trace is -2 up to projective sign
    CHECK(std::abs(m.word_matrix(m.cusps[2].peripheral).trace()) == Catch::Approx(2.0));
    CHECK(m.contains(HPoint(0, 1)));
    CHECK(!m.contains(HPoint(2, 1)));
    CHECK(!m.contains(HPoint(0.4, 0.2)));  // inside |z-1/2| < 1/2
    CHECK(m.area() == Catch::Approx(2 * kPi));

    // side pairings are involutive: letter g maps the paired side onto the side
    for (const auto& s : m.sides) {
        const RealMoebius g = m.letter_matrix(s.letter);
        // the side crossed from P by g enters gP; g^-1 maps the side to another side
        (void)g;
    }
}

TEST_CASE("monte carlo area (gauss-bonnet oracle)", "[surface]") {
    Rng rng(41);
    const double est = estimate_polygon_area(model(), 400000, rng);
    CHECK(est == Catch::Approx(2 * kPi).epsilon(0.01));
}

TEST_CASE("reduce to domain", "[surface]") {
    const SurfaceModel& m = model();
    // interior point: empty word
    const Reduction r0 = reduce_to_domain(m, HPoint(0.3, 0.8));
    CHECK(r0.word.empty());

    // spec example: 2 + i reduces to i by A^-1
    const Reduction r1 = reduce_to_domain(m, HPoint(2, 1));
    CHECK(r1.word.str() == "A");
    CHECK(r1.z.x == Catch::Approx(0.0).margin(1e-12));
    CHECK(r1.z.y == Catch::Approx(1.0).margin(1e-12));

    Rng rng(43);
    for (int k = 0; k < 2000; ++k) {
        const HPoint z(rng.uniform(-8, 8), std::exp(rng.uniform(-4, 2)));
        const Reduction r = reduce_to_domain(m, z);
        CHECK(m.contains(r.z, 1e-9));
        // w * z' = z pointwise
        const HPoint back = m.word_apply(r.word, r.z);
        CHECK(dist_h(back, z) < 1e-9);
        // idempotence
        const Reduction r2 = reduce_to_domain(m, r.z);
        CHECK(r2.word.empty());
    }

    // deep cusp points: long words, still exact
    const Reduction rdeep = reduce_to_domain(m, HPoint(1e5 + 0.3, 0.7));
    CHECK(m.contains(rdeep.z, 1e-9));
    CHECK(rdeep.word.size() == 50000);
}

TEST_CASE("tiling: images of P are disjoint", "[surface]") {
    const SurfaceModel& m = model();
    // all nonempty reduced words of length <= 2 move interior points out of P
    std::vector<GroupWord> words;
    for (int l1 = 0; l1 < 4; ++l1) {
        GroupWord w;
        w.append(static_cast<std::int8_t>(l1));
        words.push_back(w);
        for (int l2 = 0; l2 < 4; ++l2) {
            if (l2 == (l1 ^ 1)) continue;
            GroupWord w2 = w;
            w2.append(static_cast<std::int8_t>(l2));
            words.push_back(w2);
        }
    }
    REQUIRE(words.size() == 16);
    Rng rng(47);
    LiouvilleSampler s(m);
    int tested = 0;
    for (int k = 0; k < 20000 && tested < 10000; ++k) {
        const HPoint z = s.sample_base(rng);
        if (m.violated_side(z, -1e-7) >= 0) continue;  // keep a safety margin off the boundary
        ++tested;
        for (const auto& w : words) {
            const HPoint wz = m.word_apply(w, z);
            CHECK(!m.contains(wz, -1e-9));
            if (m.contains(wz, -1e-9)) return;
        }
    }
    CHECK(tested >= 5000);
}

TEST_CASE("liouville sampling statistics", "[surface]") {
    const SurfaceModel& m = model();
    Rng rng(53);
    LiouvilleSampler s(m);
    const int n = 200000;
    std::vector<int> angle_bins(32, 0);
    int above[3] = {0, 0, 0};  // Im > 2, 4, 8
    for (int k = 0; k < n; ++k) {
        const UnitTangent v = s.sample(rng);
        const HPoint z = base_point(v);
        const double phi = std::fmod(direction_angle(v) + 2 * kPi, 2 * kPi);
        ++angle_bins[std::min<size_t>(31, static_cast<size_t>(phi / (2 * kPi) * 32))];
        if (z.y > 2) ++above[0];
        if (z.y > 4) ++above[1];
        if (z.y > 8) ++above[2];
    }
    // cusp mass above height h is 2/h, of total 2*pi
    const double tot = 2 * kPi;
    for (int j = 0; j < 3; ++j) {
        const double h = std::pow(2.0, j + 1);
        const double p = (2.0 / h) / tot;
        const double sd = std::sqrt(p * (1 - p) * n);
        CHECK(std::abs(above[j] - p * n) < 3.5 * sd);
    }
    // directions uniform
    CHECK(chi2_uniform_pvalue(angle_bins) > 0.01);
}

TEST_CASE("geodesic word agrees with point reduction", "[surface]") {
    const SurfaceModel& m = model();
    Rng rng(59);
    for (int k = 0; k < 300; ++k) {
        const UnitTangent v = random_tangent_in_P(rng);
        const double t = rng.uniform(0.0, 25.0);
        GeodesicTracker tr(m, v);
        tr.advance_to(t);
        // two independent code paths: crossing word vs reduction of the
        // flowed base point
        const HPoint zt = base_point(geodesic_flow(v, t));
        const Reduction r = reduce_to_domain(m, zt);
        CHECK(tr.word() == r.word);
        if (!(tr.word() == r.word)) {
            WARN("t=" << t << " word=" << tr.word().str() << " red=" << r.word.str());
            return;
        }
        // the tracker's reduced point matches too
        CHECK(dist_h(tr.point(), r.z) < 1e-7);
        // and the reduced representative vector is the deck image of g_t v
        const UnitTangent vt = tr.vector();
        CHECK(m.contains(base_point(vt), 1e-9));
    }
}

TEST_CASE("geodesic word: empty at t=0, concatenation", "[surface]") {
    const SurfaceModel& m = model();
    Rng rng(61);
    for (int k = 0; k < 200; ++k) {
        const UnitTangent v = random_tangent_in_P(rng);
        CHECK(geodesic_word(m, v, 0.0).empty());
        const double t1 = rng.uniform(0.0, 12.0), t2 = rng.uniform(0.0, 12.0);
        // w(v, t1+t2) = w(v,t2) * w(reduced g_t2 v, t1)
        GeodesicTracker tr(m, v);
        tr.advance_to(t2);
        GroupWord w = tr.word();
        const UnitTangent v2 = tr.vector();
        w.append(geodesic_word(m, v2, t1));
        CHECK(w == geodesic_word(m, v, t1 + t2));
    }
}

TEST_CASE("geodesic word growth and cusp runs", "[surface]") {
    const SurfaceModel& m = model();
    Rng rng(67);
    // typical orbits have linear word growth
    const UnitTangent v = random_tangent_in_P(rng);
    const double lens[2] = {500.0, 2000.0};
    double ratio[2];
    for (int j = 0; j < 2; ++j) {
        const GroupWord w = geodesic_word(m, v, lens[j]);
        ratio[j] = static_cast<double>(w.size()) / lens[j];
        CHECK(ratio[j] > 0.05);
        CHECK(ratio[j] < 20.0);
    }
    CHECK(std::abs(ratio[0] - ratio[1]) < 0.75 * std::max(ratio[0], ratio[1]));

    // an orbit entering a horoball produces a run of a single peripheral letter:
    // aim almost straight at the cusp at infinity from inside P
    const UnitTangent vc = tangent_toward(HPoint(0.0, 0.5), BoundaryPoint::of(1.0 + 1e-4));
    const GroupWord w = geodesic_word(m, vc, 22.0);
    size_t best_run = 0, run = 1;
    for (size_t i = 1; i < w.letters.size(); ++i) {
        if (w.letters[i] == w.letters[i - 1]) {
            ++run;
            best_run = std::max(best_run, run);
        } else {
            run = 1;
        }
    }
    CHECK(best_run >= 10);
}

TEST_CASE("horocycle word consistency", "[surface]") {
    const SurfaceModel& m = model();
    Rng rng(71);
    for (int k = 0; k < 200; ++k) {
        const UnitTangent v = random_tangent_in_P(rng);
        const HorocycleKind kind =
            rng.u01() < 0.5 ? HorocycleKind::Stable : HorocycleKind::Unstable;
        const double t = rng.uniform(0.0, 8.0);
        const GroupWord w = horocycle_word(m, v, t, kind);
        const HPoint zt = base_point(horocycle_flow(v, t, kind));
        const Reduction r = reduce_to_domain(m, zt);
        CHECK(w == r.word);
        if (!(w == r.word)) {
            WARN("kind=" << (kind == HorocycleKind::Stable ? "s" : "u") << " t=" << t
                         << " word=" << w.str() << " red=" << r.word.str());
            return;
        }
    }
}

TEST_CASE("surface json round trip", "[surface]") {
    const SurfaceModel& m = model();
    const nlohmann::json j = to_json(m);
    const SurfaceModel m2 = surface_from_json(j);
    CHECK(m2.gens[0].b == Catch::Approx(m.gens[0].b));
    CHECK(m2.cusps.size() == 3);
    CHECK(m2.cusps[2].peripheral.str() == m.cusps[2].peripheral.str());
    Rng rng(73);
    for (int k = 0; k < 50; ++k) {
        const HPoint z(rng.uniform(-4, 4), std::exp(rng.uniform(-2, 2)));
        CHECK(reduce_to_domain(m2, z).word == reduce_to_domain(m, z).word);
    }
}
