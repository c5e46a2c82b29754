#include "singprof/params.hpp"

#include "singprof/error.hpp"
#include "singprof/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

namespace singprof {

namespace {

constexpr const char* kModule = "params";

double two_star_s_of(int n, double s) { return 2.0 * (n - s) / (n - 2.0); }
double two_star_of(int n) { return 2.0 * n / (n - 2.0); }

// U_1(r) with the bubble formula at λ = 1.
double unit_bubble(double c_ns, int n, double s, double r) {
    return c_ns * std::pow(1.0 / (1.0 + std::pow(r, 2.0 - s)), (n - 2.0) / (2.0 - s));
}

} // namespace

ProblemParams::ProblemParams(int n, double s, double q, double mu) : n_(n), s_(s), q_(q), mu_(mu) {
    std::vector<Violation> bad;
    if (n < 3) bad.push_back({"n", "n >= 3"});
    if (!(s > 0.0)) bad.push_back({"s", "s > 0"});
    if (!(s < 2.0)) bad.push_back({"s", "s < 2"});
    if (!(q > 1.0) || !std::isfinite(q)) bad.push_back({"q", "q > 1"});
    if (!(mu >= 0.0) || !std::isfinite(mu)) bad.push_back({"mu", "mu >= 0"});
    if (!bad.empty()) throw DomainError(kModule, std::move(bad));
}

ProblemParams validate_params(int n, double s, double q, double mu) {
    return ProblemParams(n, s, q, mu);
}

CutPoints cut_points(int n, double s) {
    const long double nn = n;
    const long double ss = s;
    return {
        static_cast<double>((nn + 2.0L - 2.0L * ss) / (nn - 2.0L)),
        static_cast<double>(4.0L / (nn - 2.0L)),
        static_cast<double>((nn + 2.0L) / (nn - 2.0L)),
    };
}

ExponentTable exponent_table(const ProblemParams& params) {
    const int n = params.n();
    const double s = params.s();
    const double q = params.q();
    const CutPoints cuts = cut_points(n, s);

    ExponentTable t{};
    t.two_star_s = two_star_s_of(n, s);
    t.two_star = two_star_of(n);
    t.half_n_minus_2 = 0.5 * (n - 2.0);
    t.linear_coeff = 0.25 * (n - 2.0) * (n - 2.0);

    if (q <= cuts.hardy_sobolev_minus_1) {
        t.p = t.half_n_minus_2;
    } else if (q < cuts.sobolev_minus_1) {
        t.p = s / (q - cuts.hardy_sobolev_minus_1);
    } else {
        t.p = 2.0 / (q - 1.0);
    }

    const double b = t.two_star_s - 2.0;
    t.c_ns = std::pow((n - s) * (n - 2.0), (n - 2.0) / (2.0 * (2.0 - s)));
    t.K_ns = b / (2.0 * t.two_star_s) * std::pow(t.linear_coeff, t.two_star_s / b);
    t.v_bar = std::pow(t.linear_coeff, 1.0 / b);
    t.gamma = 0.5 * (n - 2.0) * (cuts.sobolev_minus_1 - q);
    t.omega = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
    return t;
}

const char* regime_name(RegimeTag tag) {
    switch (tag) {
    case RegimeTag::Subcritical_q_le_HS: return "Subcritical_q_le_HS";
    case RegimeTag::Intermediate_HS_lt_q_lt_Sob: return "Intermediate_HS_lt_q_lt_Sob";
    case RegimeTag::CriticalSobolev: return "CriticalSobolev";
    case RegimeTag::Supercritical: return "Supercritical";
    }
    return "?";
}

Regime regime_of(const ProblemParams& params) {
    const double q = params.q();
    const CutPoints cuts = cut_points(params.n(), params.s());
    Regime r{};
    if (q <= cuts.hardy_sobolev_minus_1) {
        r.tag = RegimeTag::Subcritical_q_le_HS;
    } else if (q < cuts.sobolev_minus_1) {
        r.tag = RegimeTag::Intermediate_HS_lt_q_lt_Sob;
    } else if (q == cuts.sobolev_minus_1) {
        r.tag = RegimeTag::CriticalSobolev;
    } else {
        r.tag = RegimeTag::Supercritical;
    }
    r.mb_admissible = cuts.sobolev_minus_2 < q && q < cuts.sobolev_minus_1;
    r.nd_admissible = cuts.hardy_sobolev_minus_1 < q && q < cuts.sobolev_minus_1;
    return r;
}

bool is_critical_sobolev(const ProblemParams& params) {
    return regime_of(params).tag == RegimeTag::CriticalSobolev;
}

double mu_zero(const ProblemParams& params) {
    const double n = params.n();
    const double s = params.s();
    const double num = (2.0 - s) * std::pow(s, s / (2.0 - s));
    const double den = std::pow(2.0, 2.0 * (1.0 - s) / (2.0 - s)) * std::pow(n - 2.0, 2.0 * s / (2.0 - s));
    return num / den;
}

MuOne mu_one(const ProblemParams& params) {
    const double n = params.n();
    const double s = params.s();
    const ExponentTable t = exponent_table(params);

    MuOne out{};
    out.printed = (2.0 - s) * n / (2.0 * (n - s)) *
                  std::pow(2.0 * s * (n - s) / (n - 2.0), s * (n - 2.0) / (2.0 - s));

    // F'(v) = 0 gives μ v^a = v^b - c (a = 2*-2, b = 2*(s)-2, c = (n-2)^2/4);
    // substituting into F(v)/v^2 = 0 leaves a scalar equation in v alone.
    const double a = t.two_star - 2.0;
    const double b = t.two_star_s - 2.0;
    const double c = t.linear_coeff;
    auto reduced = [&](double v) {
        const double vb = std::pow(v, b);
        return 0.5 * c + (vb - c) / t.two_star - vb / t.two_star_s;
    };
    double lo = t.v_bar;
    double hi = 2.0 * t.v_bar;
    for (int i = 0; i < 200 && reduced(hi) > 0.0; ++i) {
        lo = hi;
        hi *= 2.0;
    }
    try {
        const numerics::Bracket bracket(reduced, lo, hi);
        out.saddle_v = numerics::find_root(reduced, bracket, 1e-15 * hi);
    } catch (const Error& e) {
        throw Error(ErrorKind::RootNotBracketed, kModule,
                    std::string("operational mu1 solve failed: ") + e.what());
    }
    const double v = out.saddle_v;
    out.operational = (std::pow(v, b) - c) / std::pow(v, a);
    out.consistent = std::fabs(out.printed - out.operational) <= 1e-6 * std::fabs(out.operational);
    return out;
}

RecurrenceConstant mb_recurrence_constant(const ProblemParams& params) {
    const Regime regime = regime_of(params);
    if (!regime.mb_admissible) {
        throw RegimeError(kModule, "recurrence constant requires 2*-2 < q < 2*-1");
    }
    if (!(params.mu() > 0.0)) {
        throw DomainError(kModule, "mu", "mu > 0 for the multi-bump recurrence");
    }
    const int n = params.n();
    const double s = params.s();
    const double q = params.q();
    const double mu = params.mu();
    const ExponentTable t = exponent_table(params);
    const double decay = (q + 1.0) * (n - 2.0) / (2.0 - s);

    numerics::QuadSpec spec;
    spec.a = 0.0;
    spec.b = numerics::kInfinity;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-14;

    RecurrenceConstant out{};
    out.beta = 1.0 / (q - (t.two_star - 2.0));
    out.radial_integral = numerics::integrate_adaptive(
        [&](double r) {
            return std::pow(r, n - 1.0) * std::pow(1.0 + std::pow(r, 2.0 - s), -decay);
        },
        spec);
    const double bubble_radial = numerics::integrate_adaptive(
        [&](double r) { return std::pow(r, n - 1.0) * std::pow(unit_bubble(t.c_ns, n, s, r), q + 1.0); },
        spec);

    const double exponent = 2.0 / ((n - 2.0) * (q - (t.two_star - 2.0)));
    const double gap = t.two_star - 1.0 - q;
    const double bubble_mass = t.omega * bubble_radial;  // ∫_{R^n} U_1^{q+1} dx
    out.K = std::pow(gap * mu / ((q + 1.0) * (n - 2.0) * t.c_ns * t.c_ns * t.omega) * bubble_mass,
                     exponent);
    const double profile_mass = t.omega * out.radial_integral;
    out.K_profile_form = std::pow(
        gap * std::pow(t.c_ns, q - 1.0) * mu / ((q + 1.0) * (n - 2.0) * t.omega) * profile_mass,
        exponent);
    return out;
}

double NDProfile::operator()(double r) const { return coeff * std::pow(r, -p_nd); }

NDProfile nd_profile(const ProblemParams& params) {
    if (!regime_of(params).nd_admissible) {
        throw RegimeError(kModule, "ND profile requires 2*(s)-1 < q < 2*-1");
    }
    if (!(params.mu() > 0.0)) {
        throw DomainError(kModule, "mu", "mu > 0 for the ND profile");
    }
    const double gap = params.q() - cut_points(params.n(), params.s()).hardy_sobolev_minus_1;
    return {params.s() / gap, std::pow(params.mu(), -1.0 / gap)};
}

std::string describe(const ProblemParams& params) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "n=%d s=%.17g q=%.17g mu=%.17g", params.n(), params.s(),
                  params.q(), params.mu());
    return buf;
}

} // namespace singprof
