#include "oracles.hpp"

#include <singprof/error.hpp>
#include <singprof/params.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace singprof;

TEST_CASE("validate_params accepts interior points") {
    const ProblemParams p = validate_params(4, 1.0, 2.5, 1.0);
    CHECK(p.n() == 4);
    CHECK(p.s() == 1.0);
    CHECK(p.q() == 2.5);
    CHECK(p.mu() == 1.0);
}

TEST_CASE("validate_params lists every violated bound") {
    try {
        validate_params(2, 2.0, 0.5, -1.0);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.kind() == ErrorKind::Domain);
        CHECK(e.module() == "params");
        REQUIRE(e.violations().size() == 4);
        CHECK(e.violations()[0].bound == "n >= 3");
        CHECK(e.violations()[1].bound == "s < 2");
        CHECK(e.violations()[2].field == "q");
        CHECK(e.violations()[3].field == "mu");
    }
    CHECK_THROWS_AS(validate_params(2, 1.0, 2.5, 1.0), DomainError);
    CHECK_THROWS_AS(validate_params(4, 2.0, 2.5, 1.0), DomainError);
    CHECK_THROWS_AS(validate_params(4, 0.0, 2.5, 1.0), DomainError);
    CHECK_THROWS_AS(validate_params(4, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(validate_params(4, 1.0, NAN, 1.0), DomainError);
    CHECK_THROWS_AS(validate_params(4, 1.0, 2.5, INFINITY), DomainError);
}

TEST_CASE("exponent table at (4,1,2.5)") {
    const ExponentTable t = exponent_table(ProblemParams(4, 1.0, 2.5, 1.0));
    // hand evaluation: 2*(s) = 2(4-1)/2, 2* = 8/2, c = (3*2)^{2/2}, K = (1/6)*1^3
    CHECK(t.two_star_s == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(t.two_star == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(t.p == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(t.c_ns == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(t.K_ns == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(t.gamma == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.omega == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
    CHECK(t.v_bar == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exponent p takes each branch") {
    CHECK(exponent_table(ProblemParams(4, 1.0, 1.5, 1.0)).p == doctest::Approx(1.0));
    CHECK(exponent_table(ProblemParams(4, 1.0, 4.0, 1.0)).p == doctest::Approx(2.0 / 3.0));
    // ties go to the closed branch
    CHECK(exponent_table(ProblemParams(4, 1.0, 2.0, 1.0)).p == doctest::Approx(1.0));
    CHECK(exponent_table(ProblemParams(4, 1.0, 3.0, 1.0)).p == doctest::Approx(1.0));
}

TEST_CASE("omega matches the low-dimensional sphere areas") {
    const double pi = std::numbers::pi;
    CHECK(exponent_table(ProblemParams(3, 1.0, 2.0, 0.0)).omega == doctest::Approx(4.0 * pi).epsilon(1e-14));
    CHECK(exponent_table(ProblemParams(5, 1.0, 2.0, 0.0)).omega ==
          doctest::Approx(8.0 * pi * pi / 3.0).epsilon(1e-14));
}

TEST_CASE("exponent table invariants on a grid") {
    for (int n = 3; n <= 8; ++n) {
        for (double s : {0.1, 0.5, 1.0, 1.5, 1.9}) {
            for (double frac : {0.1, 0.5, 0.9, 1.0, 1.3}) {
                const double q = 1.0 + frac * (2.0 * n / (n - 2.0) - 2.0);
                const ProblemParams p(n, s, q, 1.0);
                const ExponentTable t = exponent_table(p);
                CHECK(t.two_star_s > 2.0);
                CHECK(t.two_star_s < t.two_star);
                CHECK(t.K_ns > 0.0);
                CHECK(t.c_ns > 0.0);
                if (q < t.two_star - 1.0) CHECK(t.gamma > 0.0);
                if (q > t.two_star - 1.0) CHECK(t.gamma < 0.0);
            }
        }
    }
}

TEST_CASE("p is continuous at 2*-1 and unbounded just above 2*(s)-1") {
    for (int n = 3; n <= 7; ++n) {
        for (double s : {0.25, 0.5, 1.0, 1.5}) {
            const CutPoints cuts = cut_points(n, s);
            const double sob = cuts.sobolev_minus_1;
            const double below = exponent_table(ProblemParams(n, s, sob - 1e-9, 1.0)).p;
            const double above = exponent_table(ProblemParams(n, s, sob + 1e-9, 1.0)).p;
            CHECK(below == doctest::Approx(0.5 * (n - 2.0)).epsilon(1e-6));
            CHECK(above == doctest::Approx(0.5 * (n - 2.0)).epsilon(1e-6));
            const double hs = cuts.hardy_sobolev_minus_1;
            if (hs > 1.0) {
                CHECK(exponent_table(ProblemParams(n, s, hs, 1.0)).p == 0.5 * (n - 2.0));
                CHECK(exponent_table(ProblemParams(n, s, hs + 1e-6, 1.0)).p > 1e4);
            }
        }
    }
}

TEST_CASE("regime_of classifies by the cut points") {
    const Regime mid = regime_of(ProblemParams(4, 1.0, 2.5, 1.0));
    CHECK(mid.tag == RegimeTag::Intermediate_HS_lt_q_lt_Sob);
    CHECK(mid.mb_admissible);
    CHECK(mid.nd_admissible);
    const Regime crit = regime_of(ProblemParams(4, 1.0, 3.0, 1.0));
    CHECK(crit.tag == RegimeTag::CriticalSobolev);
    CHECK_FALSE(crit.mb_admissible);
    CHECK(regime_of(ProblemParams(4, 1.0, 5.0, 1.0)).tag == RegimeTag::Supercritical);
    CHECK(regime_of(ProblemParams(4, 1.0, 2.0, 1.0)).tag == RegimeTag::Subcritical_q_le_HS);
    // 2*-1 = 7/3 in n = 5 is not a dyadic number; a user-typed value must still hit it
    CHECK(regime_of(ProblemParams(5, 0.5, 7.0 / 3.0, 1.0)).tag == RegimeTag::CriticalSobolev);
    CHECK(is_critical_sobolev(ProblemParams(5, 0.5, 7.0 / 3.0, 1.0)));
}

TEST_CASE("mu_zero closed form against the brute-force oracle") {
    CHECK(mu_zero(ProblemParams(4, 1.0, 3.0, 0.0)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mu_zero(ProblemParams(3, 1.0, 5.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-14));
    for (int n : {3, 4, 5, 6}) {
        for (double s : {0.25, 0.5, 1.0, 1.5}) {
            const double formula = mu_zero(ProblemParams(n, s, 2.0, 0.0));
            const double brute = oracle::mu_zero_brute_force(n, s);
            CHECK(std::fabs(formula - brute) <= 1e-8 * formula);
        }
    }
}

TEST_CASE("mu_one: printed value, operational value and the mismatch flag") {
    const MuOne m = mu_one(ProblemParams(4, 1.0, 3.0, 0.0));
    CHECK(m.printed == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(m.operational == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(m.saddle_v == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_FALSE(m.consistent);
    // F(3) = 9/2 + (2/9)(81/4) - 27/3 = 0 and F'(3) = 0 at μ = 2/9
    const double v = m.saddle_v, mu = m.operational;
    CHECK(std::fabs(0.5 * v * v + mu * std::pow(v, 4) / 4 - std::pow(v, 3) / 3) < 1e-10);
    CHECK(std::fabs(v + mu * v * v * v - v * v) < 1e-10);
}

TEST_CASE("mu_one operational stays below mu_zero on the grid") {
    for (int n : {3, 4, 5, 6}) {
        for (double s : {0.25, 0.5, 1.0, 1.5}) {
            const ProblemParams p(n, s, 2.0, 0.0);
            const MuOne m = mu_one(p);
            CHECK(m.operational > 0.0);
            CHECK(m.operational < mu_zero(p));
        }
    }
}

TEST_CASE("recurrence constant at (4,1,2.5,1)") {
    const RecurrenceConstant rc = mb_recurrence_constant(ProblemParams(4, 1.0, 2.5, 1.0));
    CHECK(rc.beta == doctest::Approx(2.0).epsilon(1e-15));
    // B(4,3) = Γ(4)Γ(3)/Γ(7)
    CHECK(std::fabs(rc.radial_integral - std::beta(4.0, 3.0)) < 1e-12);
    CHECK(rc.radial_integral == doctest::Approx(1.0 / 60.0).epsilon(1e-10));
    const double oracle_K = std::pow(0.5 * std::pow(6.0, 3.5) / (3.5 * 2.0 * 36.0 * 60.0), 2.0);
    CHECK(rc.K == doctest::Approx(oracle_K).epsilon(1e-10));
    CHECK(rc.K == doctest::Approx(3.061e-4).epsilon(1e-3));
}

TEST_CASE("both recurrence-constant forms agree across the admissible band") {
    oracle::Gen gen(20240611);
    for (int i = 0; i < 40; ++i) {
        const int n = gen.integer(3, 8);
        const double s = gen.uniform(0.1, 1.9);
        const double lo = 4.0 / (n - 2.0), hi = (n + 2.0) / (n - 2.0);
        const double q = lo + gen.uniform(0.05, 0.95) * (hi - lo);
        if (!(q > 1.0)) continue;
        const double mu = gen.log_uniform(0.1, 10.0);
        const ProblemParams p(n, s, q, mu);
        const RecurrenceConstant rc = mb_recurrence_constant(p);
        CHECK(std::fabs(rc.K - rc.K_profile_form) <= 1e-10 * rc.K);
        // Beta-function value of the radial integral
        const double m = (q + 1.0) * (n - 2.0) / (2.0 - s);
        const double a = n / (2.0 - s);
        const double beta = std::beta(a, m - a) / (2.0 - s);
        CHECK(std::fabs(rc.radial_integral - beta) <= 1e-9 * beta);
    }
}

TEST_CASE("recurrence constant errors") {
    CHECK_THROWS_AS(mb_recurrence_constant(ProblemParams(4, 1.0, 1.5, 1.0)), RegimeError);
    CHECK_THROWS_AS(mb_recurrence_constant(ProblemParams(4, 1.0, 3.0, 1.0)), RegimeError);
    CHECK_THROWS_AS(mb_recurrence_constant(ProblemParams(4, 1.0, 2.5, 0.0)), DomainError);
}

TEST_CASE("nd_profile cancels the nonlinearity") {
    const NDProfile nd = nd_profile(ProblemParams(4, 1.0, 2.5, 1.0));
    CHECK(nd.p_nd == doctest::Approx(2.0));
    CHECK(nd.coeff == doctest::Approx(1.0));
    const double r = 0.3, u = nd(r);
    CHECK(std::fabs(std::pow(r, -1.0) * u * u - std::pow(u, 2.5)) <= 1e-12 * std::pow(u, 2.5));
    CHECK(nd_profile(ProblemParams(4, 1.0, 2.5, 4.0)).coeff == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK_THROWS_AS(nd_profile(ProblemParams(4, 1.0, 2.0, 1.0)), RegimeError);
    CHECK_THROWS_AS(nd_profile(ProblemParams(4, 1.0, 3.0, 1.0)), RegimeError);
    CHECK_THROWS_AS(nd_profile(ProblemParams(4, 1.0, 2.5, 0.0)), DomainError);
}

TEST_CASE("p_nd exceeds (n-2)/2 exactly when q < 2*-1") {
    for (int n = 3; n <= 7; ++n) {
        for (double s : {0.25, 0.75, 1.25, 1.75}) {
            const CutPoints cuts = cut_points(n, s);
            for (double frac : {0.05, 0.3, 0.6, 0.95}) {
                const double q = cuts.hardy_sobolev_minus_1 +
                                 frac * (cuts.sobolev_minus_1 - cuts.hardy_sobolev_minus_1);
                const ProblemParams p(n, s, q, 1.0);
                REQUIRE(regime_of(p).nd_admissible);
                CHECK(nd_profile(p).p_nd > 0.5 * (n - 2.0));
            }
        }
    }
}

TEST_CASE("describe prints full precision") {
    CHECK(describe(ProblemParams(4, 1.0, 2.5, 0.1)) == "n=4 s=1 q=2.5 mu=0.10000000000000001");
}
