#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rlab/projective.hpp"
#include "rlab/rng.hpp"

using namespace rlab;

namespace {
ProjectiveMap random_map(Rng& rng, double spread = 1.5) {
    return ProjectiveMap::from_matrix({rng.uniform(-spread, spread), rng.uniform(-spread, spread)},
                                      {rng.uniform(-spread, spread), rng.uniform(-spread, spread)},
                                      {rng.uniform(-spread, spread), rng.uniform(-spread, spread)},
                                      {rng.uniform(-spread, spread), rng.uniform(-spread, spread)});
}
SpherePoint random_point(Rng& rng) {
    return SpherePoint({rng.normal(), rng.normal()}, {rng.normal(), rng.normal()});
}
}  // namespace

TEST_CASE("sphere apply", "[projective]") {
    Rng rng(1);
    const SpherePoint p = random_point(rng);
    const ProjectiveMap id;
    CHECK(chordal_dist(id.apply(p), p) < 1e-15);

    const ProjectiveMap d = ProjectiveMap::from_matrix({2, 0}, {0, 0}, {0, 0}, {0.5, 0});
    const SpherePoint one = SpherePoint::from_complex({1, 0});
    CHECK(std::abs(d.apply(one).affine() - cplx(4, 0)) < 1e-14);

    for (int k = 0; k < 1000; ++k) {
        const ProjectiveMap m = random_map(rng);
        const SpherePoint q = random_point(rng);
        CHECK(chordal_dist(m.apply(m.inverse().apply(q)), q) < 1e-10);
    }
}

TEST_CASE("chordal distance", "[projective]") {
    const SpherePoint zero = SpherePoint::from_complex({0, 0});
    const SpherePoint inf = SpherePoint::infinity();
    const SpherePoint one = SpherePoint::from_complex({1, 0});
    CHECK(chordal_dist(zero, inf) == Catch::Approx(1.0));
    CHECK(chordal_dist(zero, zero) == 0.0);
    CHECK(chordal_dist(zero, one) == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    Rng rng(2);
    for (int k = 0; k < 500; ++k) {
        const SpherePoint p = random_point(rng), q = random_point(rng);
        CHECK(chordal_dist(p, q) == Catch::Approx(chordal_dist(q, p)).margin(1e-15));
        CHECK(chordal_dist(p, q) <= 1.0);
        // half the euclidean distance of bloch vectors
        const auto bp = p.bloch(), bq = q.bloch();
        const double e = std::sqrt((bp[0] - bq[0]) * (bp[0] - bq[0]) +
                                   (bp[1] - bq[1]) * (bp[1] - bq[1]) +
                                   (bp[2] - bq[2]) * (bp[2] - bq[2]));
        CHECK(chordal_dist(p, q) == Catch::Approx(0.5 * e).margin(1e-12));
    }
}

TEST_CASE("ledger products", "[projective]") {
    // ||A^n|| for A = diag(2, 1/2) is 2^n, far past double overflow for n ~ 2000
    const ProjectiveMap d = ProjectiveMap::from_matrix({2, 0}, {0, 0}, {0, 0}, {0.5, 0});
    ProjectiveMap p;
    const int n = 200;
    for (int i = 0; i < n; ++i) p = p * d;
    CHECK(p.log_op_norm() == Catch::Approx(n * std::log(2.0)).epsilon(1e-12));
    CHECK(p.det_residual() < 1e-9);

    // inverse keeps the implied det-1 and flips the norm exponents
    const Svd2 s = svd2(p.inverse());
    CHECK(s.log_s1 == Catch::Approx(n * std::log(2.0)).epsilon(1e-12));
    CHECK(s.log_s2 == Catch::Approx(-n * std::log(2.0)).epsilon(1e-12));

    // far past double overflow the top exponent stays computable
    ProjectiveMap q;
    for (int i = 0; i < 3000; ++i) q = q * d;
    CHECK(q.log_op_norm() == Catch::Approx(3000 * std::log(2.0)).epsilon(1e-12));
    CHECK(std::isfinite(q.log_scale));
}

TEST_CASE("classification", "[projective]") {
    const ProjectiveMap par = ProjectiveMap::from_matrix({1, 0}, {1, 0}, {0, 0}, {1, 0});
    const Classification cp = classify(par);
    CHECK(cp.cls == MoebiusClass::Parabolic);
    REQUIRE(cp.n_fixed == 1);
    CHECK(chordal_dist(cp.fixed[0], SpherePoint::infinity()) < 1e-9);

    const ProjectiveMap lox = ProjectiveMap::from_matrix({2, 0}, {0, 0}, {0, 0}, {0.5, 0});
    const Classification cl = classify(lox);
    CHECK(cl.cls == MoebiusClass::Loxodromic);
    CHECK(chordal_dist(cl.fixed[0], SpherePoint::infinity()) < 1e-9);  // attracting
    CHECK(chordal_dist(cl.fixed[1], SpherePoint::from_complex({0, 0})) < 1e-9);

    // [[1,2],[0,1]] * [[1,0],[-2,1]] = [[-3,2],[-2,1]], trace -2: parabolic
    const ProjectiveMap m =
        ProjectiveMap::from_matrix({1, 0}, {2, 0}, {0, 0}, {1, 0}) *
        ProjectiveMap::from_matrix({1, 0}, {0, 0}, {-2, 0}, {1, 0});
    CHECK(std::abs(m.trace_sl2() + 2.0) < 1e-12);
    CHECK(classify(m).cls == MoebiusClass::Parabolic);

    const ProjectiveMap rot = ProjectiveMap::from_matrix({0, 0}, {1, 0}, {-1, 0}, {0, 0});
    CHECK(classify(rot).cls == MoebiusClass::Elliptic);
    CHECK(classify(ProjectiveMap::identity()).cls == MoebiusClass::Identity);

    // fixed points are fixed; classification is conjugation invariant
    Rng rng(3);
    for (int k = 0; k < 500; ++k) {
        const ProjectiveMap m2 = random_map(rng);
        const Classification c = classify(m2);
        for (int j = 0; j < c.n_fixed; ++j)
            CHECK(chordal_dist(m2.apply(c.fixed[j]), c.fixed[j]) < 1e-9);
        const ProjectiveMap g = random_map(rng);
        const Classification cc = classify(g * m2 * g.inverse());
        CHECK(cc.cls == c.cls);
    }
}

TEST_CASE("mobius distortion bound equals norm squared", "[projective]") {
    Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        const ProjectiveMap m = random_map(rng);
        const Svd2 sv = svd2(m);
        const double bound = std::exp(2.0 * sv.log_s1);  // ||m||^2 for det-1
        double sup = 0.0;
        for (int j = 0; j < 2000; ++j) {
            const SpherePoint p = random_point(rng), q = random_point(rng);
            const double d0 = chordal_dist(p, q);
            if (d0 < 1e-6) continue;
            sup = std::max(sup, chordal_dist(m.apply(p), m.apply(q)) / d0);
        }
        // targeted pairs near the most contracted input direction approach the sup
        for (int j = 0; j < 200; ++j) {
            const double e1 = 1e-4 * rng.normal(), e2 = 1e-4 * rng.normal();
            const SpherePoint p(sv.v2.w1 + cplx(e1, 0) * sv.v1.w1, sv.v2.w2 + cplx(e1, 0) * sv.v1.w2);
            const SpherePoint q(sv.v2.w1 + cplx(0, e2) * sv.v1.w1, sv.v2.w2 + cplx(0, e2) * sv.v1.w2);
            const double d0 = chordal_dist(p, q);
            if (d0 < 1e-9) continue;
            sup = std::max(sup, chordal_dist(m.apply(p), m.apply(q)) / d0);
        }
        CHECK(sup <= bound * (1.0 + 1e-6));
        CHECK(sup >= bound * 0.98);
    }
}

TEST_CASE("determinant identity for chordal contraction", "[projective]") {
    // chordal(Mp, Mq) = chordal(p, q) / (||Mp|| ||Mq||) for implied det 1
    Rng rng(7);
    for (int k = 0; k < 500; ++k) {
        const ProjectiveMap m = random_map(rng);
        const SpherePoint p = random_point(rng), q = random_point(rng);
        const double lhs = std::log(chordal_dist(m.apply(p), m.apply(q)));
        const double rhs =
            std::log(chordal_dist(p, q)) - log_apply_norm(m, p) - log_apply_norm(m, q);
        CHECK(lhs == Catch::Approx(rhs).margin(1e-9));
    }
}
