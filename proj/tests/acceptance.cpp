// One line per acceptance criterion; exit status 1 if any fails.

#include "canonical.hpp"
#include "oracles.hpp"

#include <singprof/classifier.hpp>
#include <singprof/dynamics.hpp>
#include <singprof/error.hpp>
#include <singprof/params.hpp>
#include <singprof/pohozaev.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace singprof;

namespace {

struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void near(double got, double want, double tol, const std::string& what) {
        if (!(std::fabs(got - want) <= tol)) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s: got %.17g want %.17g (tol %.1e)", what.c_str(), got, want, tol);
            failures.push_back(buf);
        }
    }
    void rel(double got, double want, double tol, const std::string& what) {
        near(got, want, tol * std::fabs(want), what);
    }
};

const ProblemParams kLimit(4, 1.0, 2.5, 0.0);
const double kOmega3 = 2.0 * std::numbers::pi * std::numbers::pi;

void ac1(Check& c) {
    const ProblemParams p(4, 1.0, 3.0, 0.0);
    const ExponentTable t = exponent_table(p);
    c.near(t.two_star_s, 3.0, 1e-12, "2*(s)");
    c.near(t.c_ns, 6.0, 1e-12, "c_ns");
    c.near(t.K_ns, 1.0 / 6.0, 1e-12, "K_ns");
    c.near(t.v_bar, 1.0, 1e-12, "v_bar");
    c.near(mu_zero(p), 0.25, 1e-12, "mu0");
    c.near(convexity_threshold(p), 0.5, 1e-12, "eps0");
}

void ac2(Check& c) {
    IntegrationSettings settings;
    settings.tol = 1e-15;
    settings.stride = 0.25;
    const Trajectory fit = integrate(kLimit, {0.0, 1.5, 0.0}, 10.0, settings);
    c.expect(fit.halt_reason() == HaltReason::SpanComplete, "homoclinic run did not reach t = 10");
    double worst = 0.0;
    for (const PhaseState& s : fit.samples()) {
        const double ref = homoclinic_profile(kLimit, s.t);
        worst = std::max(worst, std::fabs(s.v - ref) / ref);
    }
    c.near(worst, 0.0, 1e-8, "max relative deviation from v0 on [0,10]");

    settings.tol = 1e-12;
    settings.stride = 0.5;
    const Trajectory longrun = integrate(kLimit, {0.0, 1.5, 0.0}, 50.0, settings);
    const double H0 = hamiltonian(kLimit, longrun.samples().front());
    double drift = 0.0;
    for (const PhaseState& s : longrun.samples()) drift = std::max(drift, std::fabs(hamiltonian(kLimit, s) - H0));
    c.expect(longrun.halt_reason() == HaltReason::SpanComplete, "drift run stopped before t = 50");
    c.near(drift, 0.0, 1e-7, "Hamiltonian drift");
    c.near(longrun.drift(), 0.0, 1e-7, "reported drift");
}

void ac3(Check& c) {
    for (double lambda : {0.5, 1.0, 2.0}) {
        const ClosedFormProfile b = ClosedFormProfile::bubble(kLimit, lambda);
        for (double r : {0.1, 1.0, 10.0}) {
            c.near(pohozaev_at(kLimit, b, r), 0.0, 1e-8 * kOmega3, "P_r(U_lambda)");
        }
    }
    const double K = 1.0 / 12.0;
    const ClosedFormProfile vk = ClosedFormProfile::periodic(kLimit, K, 0.0, 30.0);
    for (double r : {0.1, 1.0, 10.0}) c.rel(pohozaev_at(kLimit, vk, r), kOmega3 * K, 1e-6, "P_r(v_K)");
}

void ac4(Check& c) {
    IntegrationSettings settings;
    settings.tol = 1e-12;
    const ProblemParams p(4, 1.0, 2.5, 1.0);
    const Trajectory tr = integrate(p, ef_transform(p, 0.5, 1.1, -0.8), -std::log(0.05), settings);
    c.expect(tr.halt_reason() == HaltReason::SpanComplete, "solution lost positivity");
    const PohozaevReport rep = identity_residual(p, tr, 0.05, 0.5);
    c.near(rep.relative_residual, 0.0, 1e-5, "identity relative residual");

    const ProblemParams crit(4, 1.0, 3.0, 0.2);
    const Trajectory tc = integrate(crit, ef_transform(crit, 0.5, 1.1, -0.8), -std::log(0.05), settings);
    const PohozaevReport rc = identity_residual(crit, tc, 0.05, 0.5);
    c.expect(rc.bulk == 0.0, "bulk term nonzero at q = 2*-1");
    double lo = rc.P_r1, hi = rc.P_r1;
    for (double r : {0.05, 0.1, 0.2, 0.3, 0.5}) {
        lo = std::min(lo, pohozaev_at(crit, tc, r));
        hi = std::max(hi, pohozaev_at(crit, tc, r));
    }
    c.near(hi - lo, 0.0, 1e-8, "spread of P_r at q = 2*-1");
}

void ac5(Check& c) {
    const TurningPoints tp = turning_points(kLimit, 1.0 / 12.0);
    c.near(tp.v_min, 0.5, 1e-10, "v_min");
    c.near(tp.v_max, 0.5 * (1.0 + std::sqrt(3.0)), 1e-10, "v_max");
    const auto acc = [](long double, long double v) { return v - v * v; };
    c.rel(period(kLimit, 1.0 / 12.0), oracle::first_return_rk4(acc, 0.5), 1e-6, "T(1/12) vs first return");
    const double Kns = 1.0 / 6.0;
    c.rel(period(kLimit, 0.999 * Kns), 2.0 * std::numbers::pi, 1e-2, "T(0.999 K)");
    c.expect(period(kLimit, 1e-6 * Kns) > period(kLimit, 0.5 * Kns), "T(1e-6 K) <= T(K/2)");
}

void ac6(Check& c) {
    const ProblemParams p(4, 1.0, 2.5, 1.0);
    const RecurrenceConstant rc = mb_recurrence_constant(p);
    c.rel(rc.K_profile_form, rc.K, 1e-10, "two forms of K");
    const double beta_oracle = std::beta(4.0, 3.0);
    c.near(rc.radial_integral, beta_oracle, 1e-8, "radial integral vs B(4,3)");
    c.near(rc.radial_integral, 1.0 / 60.0, 1e-8, "radial integral vs 1/60");
    // (gap c^{q-1} μ B / ((q+1)(n-2)))^{2/((n-2)(q-(2*-2)))}
    const double K_oracle = std::pow(0.5 * std::pow(6.0, 1.5) * beta_oracle / 7.0, 2.0);
    c.rel(rc.K, K_oracle, 1e-10, "K vs Beta oracle");
    c.rel(rc.K, 3.061e-4, 5e-4, "K ~ 3.061e-4");
}

void ac7(Check& c) {
    const ProblemParams p(4, 1.0, 3.0, 0.2);
    c.rel(mu_zero(p), oracle::mu_zero_brute_force(4, 1.0), 1e-8, "mu0 vs brute force");
    const MuOne m = mu_one(p);
    c.near(m.operational, 2.0 / 9.0, 1e-10, "mu1 operational");
    c.near(m.saddle_v, 3.0, 1e-10, "saddle v+");
    const CritPotential at3 = crit_potential(ProblemParams(4, 1.0, 3.0, m.operational), 3.0);
    c.near(at3.F, 0.0, 1e-10, "F(3)");
    c.expect(!m.consistent, "printed mu1 mismatch not flagged");

    const auto e_sep = [](double mu) {
        const ProblemParams q(4, 1.0, 3.0, mu);
        return -crit_potential(q, crit_equilibria(q).v_plus).F;
    };
    const double mu1 = m.operational;
    c.expect(e_sep(mu1 - 1e-3) > 0.0 && e_sep(mu1 + 1e-3) < 0.0, "E_sep does not change sign at mu1");
    c.near(e_sep(mu1), 0.0, 1e-10, "E_sep at mu1");
}

void ac8(Check& c) {
    const ProblemParams p(4, 1.0, 3.0, 0.2);
    const PhaseState start{0.0, 1.3820, 0.3};
    const OrbitClass oc = crit_classify_orbit(p, start);
    c.expect(oc.tag == OrbitTag::Periodic, std::string("verdict ") + orbit_tag_name(oc.tag));
    const double T = first_return_time(p, start, 200.0);
    const PhaseState back = advance(p, start, T, 1e-13);
    c.near(back.v, start.v, 1e-7, "first return v");
    c.near(back.dv, start.dv, 1e-7, "first return v'");

    const CritEquilibria eq = crit_equilibria(p);
    c.expect(crit_classify_orbit(p, {0.0, eq.v_plus, 0.0}).tag == OrbitTag::Constant, "(v+,0) not Constant");

    const ProblemParams s(4, 1.0, 3.0, 0.23);
    const CritEquilibria es = crit_equilibria(s);
    const double F_plus = crit_potential(s, es.v_plus).F;
    const auto level = [&](double v) { return crit_potential(s, v).F - F_plus; };
    const double v_turn = oracle::bisect(level, 1e-6, es.v_minus, 1e-16);
    const PhaseState sep{0.0, v_turn, 0.0};
    const OrbitClass os = crit_classify_orbit(s, sep);
    c.expect(os.tag == OrbitTag::HomoclinicToSaddle, std::string("separatrix verdict ") + orbit_tag_name(os.tag));
    IntegrationSettings settings;
    settings.tol = 1e-14;
    settings.stride = 0.01;
    const Trajectory tr = integrate(s, sep, 40.0, settings);
    double closest = INFINITY;
    for (const PhaseState& st : tr.samples()) closest = std::min(closest, std::fabs(st.v - es.v_plus));
    c.near(closest, 0.0, 1e-4, "distance to v+ by t = 40");
}

void ac9(Check& c) {
    for (const ProblemParams& p : {ProblemParams(4, 1.0, 2.5, 1.0), ProblemParams(5, 0.5, 2.2, 1.0)}) {
        const std::string at = " at " + describe(p);
        const auto tag = [&](const WTrace& tr) { return classify(p, tr).tag; };
        c.expect(tag(canonical::bubble(p)) == ProfileTag::Removable, "bubble" + at);
        c.expect(tag(canonical::periodic(p)) == ProfileTag::CGS, "v_K" + at);
        c.expect(tag(canonical::mb(p)) == ProfileTag::MB, "bubble sum" + at);
        c.expect(tag(canonical::nd(p)) == ProfileTag::ND, "ND power" + at);

        const MBRadii g = canonical::mb_radii(p);
        const MBFit fit = mb_fit(p, g.radii);
        c.rel(fit.beta_hat, fit.beta_expected, 1e-10, "fitted beta" + at);
        c.rel(fit.K_hat, fit.K_expected, 1e-10, "fitted K" + at);

        const BubbleSumOrbit orbit(p, g.radii);
        AsymptoticOptions opt;
        opt.r_min = 1e-3 * g.radii.back();
        opt.tol = 1e-3;
        const ExponentTable t = exponent_table(p);
        const double est = asymptotic_pohozaev(p, orbit, opt).estimate;
        c.near(est, 0.0, 1e-3 * t.omega * std::max(1.0, t.K_ns), "asymptotic Pohozaev of MB" + at);
    }
}

void ac10(Check& c) {
    oracle::Gen gen(20261018);
    double worst = 0.0;
    int draws = 0;
    while (draws < 100) {
        const int n = gen.integer(3, 8);
        const double s = gen.uniform(0.05, 1.95);
        const CutPoints cuts = cut_points(n, s);
        const double q = cuts.hardy_sobolev_minus_1 +
                         gen.uniform(0.01, 0.99) * (cuts.sobolev_minus_1 - cuts.hardy_sobolev_minus_1);
        if (!(q > 1.0)) continue;
        const ProblemParams p(n, s, q, gen.log_uniform(1e-2, 1e2));
        const NDProfile nd = nd_profile(p);
        const double r = gen.log_uniform(1e-6, 1e2);
        const double u = nd(r);
        const double term = std::pow(r, -s) * std::pow(u, 2.0 * (n - s) / (n - 2.0) - 1.0);
        // steep profiles leave the double range at extreme radii; draw again
        if (!(std::isfinite(term) && term > 0.0)) continue;
        ++draws;
        const double f = nonlinearity(p, r, u).f;
        c.expect(std::isfinite(f), "non-finite f at " + describe(p));
        worst = std::max(worst, std::fabs(f) / term);
    }
    c.near(worst, 0.0, 64 * 2.220446049250313e-16, "relative residual of the ND cancellation");

    for (int n = 3; n <= 8; ++n) {
        for (double s : {0.1, 0.5, 1.0, 1.5, 1.9}) {
            const CutPoints cuts = cut_points(n, s);
            for (double frac : {0.05, 0.25, 0.5, 0.75, 0.95, 1.0, 1.05, 1.5}) {
                const double q = cuts.hardy_sobolev_minus_1 +
                                 frac * (cuts.sobolev_minus_1 - cuts.hardy_sobolev_minus_1);
                const ProblemParams p(n, s, q, 1.0);
                const bool below = q < cuts.sobolev_minus_1;
                // nd_profile refuses q >= 2*-1, so the exponent is formed directly there
                const double p_nd = below ? nd_profile(p).p_nd : s / (q - cuts.hardy_sobolev_minus_1);
                const bool above_half = p_nd > 0.5 * (n - 2.0) * (1.0 + 1e-12);
                if (above_half != below) {
                    std::ostringstream os;
                    os << "p_nd vs (n-2)/2 at " << describe(p);
                    c.expect(false, os.str());
                }
            }
        }
    }
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"AC1 closed-form constants at (4,1)", ac1},
        {"AC2 homoclinic fidelity and Hamiltonian drift", ac2},
        {"AC3 Pohozaev invariance on bubbles and v_K", ac3},
        {"AC4 Pohozaev identity residual", ac4},
        {"AC5 turning points and period", ac5},
        {"AC6 recurrence constant", ac6},
        {"AC7 critical-case thresholds", ac7},
        {"AC8 critical orbit classification", ac8},
        {"AC9 profile classifier and multi-bump fit", ac9},
        {"AC10 ND algebraic cancellation", ac10},
    };
    const double budget[] = {1.0, 1.0, 60, 60, 60, 60, 60, 60, 60, 60};
    int failed = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const Error& e) {
            c.failures.push_back(std::string(error_name(e.kind())) + " from " + e.module() + ": " + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += secs;
        if (secs > budget[i]) c.failures.push_back("runtime over budget");
        const bool ok = c.failures.empty();
        if (!ok) ++failed;
        std::printf("[%s] %s (%.3f s)\n", ok ? "PASS" : "FAIL", criteria[i].first.c_str(), secs);
        for (const auto& f : c.failures) std::printf("       %s\n", f.c_str());
    }
    std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), total);
    return failed == 0 ? 0 : 1;
}
