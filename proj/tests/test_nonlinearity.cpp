#include "modstab/nonlinearity.hpp"

#include "modstab/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace modstab;
using oracles::rel;

TEST_CASE("cubic coefficient identification") {
    WaveParams p{1.0, 0.5, 1.0, 2.0, NonlinearitySpec::cubic()};
    const auto q = build_poly(p);
    REQUIRE(q.degree() == 3);
    CHECK(q.alpha[0] == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(q.alpha[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(q.alpha[2] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(q.alpha[3] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("quintic has no cubic term") {
    WaveParams p{1.0, 0.4, -1.0, 3.0, NonlinearitySpec::quintic()};
    const auto q = build_poly(p);
    REQUIRE(q.degree() == 4);
    CHECK(q.alpha[3] == 0.0);
    CHECK(q.alpha[4] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("harmonic limit bracket from quadratic formula") {
    WaveParams p{1.0, 0.5, 1.0, 0.0, NonlinearitySpec::cubic()};
    const auto q = build_poly(p);
    REQUIRE(q.degree() == 2);
    CHECK(rel(q.r1, 1.0 - std::sqrt(0.75)) < 1e-12);
    CHECK(rel(q.r2, 1.0 + std::sqrt(0.75)) < 1e-12);
    CHECK(q(0.0) == doctest::Approx(-0.25));
}

TEST_CASE("P(0) = -kappa^2 whenever kappa > 0") {
    std::mt19937 rng(7);
    for (auto fam : oracles::all_families()) {
        const auto cw = from_case(oracles::random_case(fam, rng));
        CHECK(rel(cw.poly(0.0), -cw.params.kappa * cw.params.kappa) < 1e-12);
        CHECK(cw.poly(0.5 * (cw.poly.r1 + cw.poly.r2)) > 0.0);
    }
}

TEST_CASE("cubic focusing closed-form map") {
    const auto cw = from_case({CaseId::Family::CubicFocusing, 0.65, 0.423});
    const double b = 0.423, k2 = 0.65 * 0.65;
    CHECK(rel(cw.params.kappa, std::sqrt(b * (1 - b) * (b - k2))) < 1e-14);
    CHECK(cw.params.kappa == doctest::Approx(0.011047).epsilon(1e-4));
    CHECK(cw.params.omega == doctest::Approx(0.1535).epsilon(1e-12));
    CHECK(cw.params.zeta == 2.0);
    CHECK(cw.poly.r1 == doctest::Approx(b - k2));
    CHECK(cw.poly.r2 == doctest::Approx(b));
}

TEST_CASE("build_poly reproduces analytic case roots") {
    std::mt19937 rng(11);
    for (auto fam : oracles::all_families()) {
        for (int rep = 0; rep < 8; ++rep) {
            const auto cw = from_case(oracles::random_case(fam, rng));
            const auto numeric = build_poly(cw.params);
            REQUIRE(numeric.roots.size() == cw.poly.roots.size());
            for (const auto& r : cw.poly.roots) {
                double best = 1e300;
                for (const auto& n : numeric.roots) best = std::min(best, std::abs(n - r));
                CHECK(best <= 1e-10 * std::max(1.0, std::abs(r)));
            }
            CHECK(numeric.r1 == doctest::Approx(cw.poly.r1).epsilon(1e-10));
            CHECK(numeric.r2 == doctest::Approx(cw.poly.r2).epsilon(1e-10));
        }
    }
}

TEST_CASE("quintic roots sum to zero (depressed quartic)") {
    std::mt19937 rng(13);
    for (auto fam : {CaseId::Family::QuinticFocusing4, CaseId::Family::QuinticFocusing2,
                     CaseId::Family::QuinticDefocusing}) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto cw = from_case(oracles::random_case(fam, rng));
            std::complex<double> s = 0.0;
            for (const auto& r : cw.poly.roots) s += r;
            CHECK(std::abs(s) < 1e-12);
        }
    }
}

TEST_CASE("solitary-wave corner and domain violations") {
    // the corner l = m = 0 maps to kappa = 0, the solitary wave
    CHECK(case_map({CaseId::Family::QuinticFocusing4, 0.0, 0.0}).kappa == 0.0);
    CHECK_THROWS_AS(from_case({CaseId::Family::QuinticFocusing4, 0.0, 0.0}), OutOfDomain);
    CHECK_THROWS_AS(from_case({CaseId::Family::CubicFocusing, 0.8, 0.5}), OutOfDomain);
    CHECK_THROWS_AS(from_case({CaseId::Family::CubicDefocusing, 0.7, 0.3}), OutOfDomain);
    CHECK_THROWS_AS(from_case({CaseId::Family::QuinticFocusing2, 1.8, 0.5}), OutOfDomain);
}

TEST_CASE("quintic defocusing m = l is the constant-amplitude degeneration") {
    CHECK_THROWS_AS(from_case({CaseId::Family::QuinticDefocusing, 0.5, 0.5}), DegenerateRoot);
}

TEST_CASE("near-degenerate bracket endpoint detected") {
    CHECK_THROWS_AS(from_case({CaseId::Family::QuinticDefocusing, 0.5, 0.5 - 1e-12}),
                    DegenerateRoot);
}

TEST_CASE("raw parameters with no positive bracket") {
    // omega < 0 with E < 0 pushes P negative on the whole positive axis
    WaveParams p{-1.0, 0.5, 1.0, 2.0, NonlinearitySpec::cubic()};
    CHECK_THROWS_AS(build_poly(p), NoBracket);
    WaveParams bad_kappa{1.0, -0.5, 1.0, 2.0, NonlinearitySpec::cubic()};
    CHECK_THROWS_AS(build_poly(bad_kappa), OutOfDomain);
}

TEST_CASE("trigonometric degenerate solution endpoints") {
    for (double m : {0.2, 0.5, 0.8}) {
        const double beta = std::sqrt((1 + 3 * m) * (3 + m));
        CHECK(trig_solution(m, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
        // second root where the internal angle reaches pi/2
        CHECK(trig_solution(m, M_PI / beta) == doctest::Approx(m).epsilon(1e-13));
        // orbit period 2 pi / beta
        CHECK(trig_solution(m, 0.37) ==
              doctest::Approx(trig_solution(m, 0.37 + 2 * M_PI / beta)).epsilon(1e-12));
    }
}

TEST_CASE("dark solitary wave endpoints and front limit") {
    for (double l : {0.0, 0.3, 0.7}) {
        CHECK(dark_soliton(l, 0.0) == doctest::Approx(l).epsilon(1e-14));
        CHECK(dark_soliton(l, 50.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // l = 0 front: A(y) = sqrt(2) tanh(sqrt(3) y) / sqrt(3 - tanh^2(sqrt(3) y))
    const double t = std::tanh(std::sqrt(3.0));
    const double a_expected = std::sqrt(2.0) * t / std::sqrt(3.0 - t * t);
    CHECK(std::sqrt(dark_soliton(0.0, 1.0)) == doctest::Approx(a_expected).epsilon(1e-14));
}

TEST_CASE("nonlinearity values and antiderivative") {
    const auto g = NonlinearitySpec::general({2.0, 0.0, 1.0});   // f = 2z + z^3
    CHECK(g.f(1.5) == doctest::Approx(2 * 1.5 + std::pow(1.5, 3)));
    CHECK(g.f_prime(1.5) == doctest::Approx(2 + 3 * 1.5 * 1.5));
    CHECK(g.F(1.5) == doctest::Approx(1.5 * 1.5 + std::pow(1.5, 4) / 4));
    CHECK(g.F(0.0) == 0.0);
    CHECK_THROWS_AS(NonlinearitySpec::general({0.0, 0.0}), OutOfDomain);
}
