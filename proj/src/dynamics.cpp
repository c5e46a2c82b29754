#include "singprof/dynamics.hpp"

#include "singprof/error.hpp"
#include "singprof/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace singprof {

namespace {

constexpr const char* kModule = "dynamics";

void require_critical(const ProblemParams& params, const char* what) {
    if (!is_critical_sobolev(params)) {
        throw RegimeError(kModule, std::string(what) + " requires q = 2*-1");
    }
}

// H0(v + delta) - H0(v) without cancellation, H0(v) = (c/2) v^2 - v^p/p.
double level_gap(double c, double p, double v, double delta) {
    const double quad = 0.5 * c * delta * (2.0 * v + delta);
    const double power = std::pow(v, p) * std::expm1(p * std::log1p(delta / v)) / p;
    return quad - power;
}

} // namespace

PhaseState ef_transform(const ProblemParams& params, double r, double u, double du) {
    if (!(r > 0.0)) throw DomainError(kModule, "r", "r > 0");
    const double a = 0.5 * (params.n() - 2.0);
    const double ra = std::pow(r, a);
    const double v = ra * u;
    return {-std::log(r), v, -a * v - ra * r * du};
}

RadialState ef_untransform(const ProblemParams& params, const PhaseState& state) {
    const double a = 0.5 * (params.n() - 2.0);
    const double r = std::exp(-state.t);
    const double r_neg_a = std::exp(a * state.t);
    // dv = -a v - r^{a+1} u'  =>  u' = -(a v + dv) r^{-a-1}
    return {r, r_neg_a * state.v, -(a * state.v + state.dv) * r_neg_a / r};
}

FieldValue vector_field(const ProblemParams& params, const PhaseState& state) {
    const ExponentTable t = exponent_table(params);
    const double v = std::max(state.v, 0.0);
    double ddv = t.linear_coeff * state.v - std::pow(v, t.two_star_s - 1.0);
    if (params.mu() != 0.0) ddv += params.mu() * std::exp(-t.gamma * state.t) * std::pow(v, params.q());
    return {state.dv, ddv};
}

double hamiltonian(const ProblemParams& params, const PhaseState& state) {
    const ExponentTable t = exponent_table(params);
    return -0.5 * state.dv * state.dv + 0.5 * t.linear_coeff * state.v * state.v -
           std::pow(state.v, t.two_star_s) / t.two_star_s;
}

double pohozaev_density(const ProblemParams& params, const PhaseState& state) {
    double h = hamiltonian(params, state);
    if (params.mu() != 0.0) {
        const ExponentTable t = exponent_table(params);
        const double q1 = params.q() + 1.0;
        h += params.mu() * std::exp(-t.gamma * state.t) * std::pow(state.v, q1) / q1;
    }
    return h;
}

CritPotential crit_potential(const ProblemParams& params, double v) {
    require_critical(params, "crit_potential");
    if (!(v >= 0.0)) throw DomainError(kModule, "v", "v >= 0");
    const ExponentTable t = exponent_table(params);
    const double c = t.linear_coeff;
    const double mu = params.mu();
    if (v == 0.0) return {0.0, 0.0, c};
    const double g = c + mu * std::pow(v, t.two_star - 2.0) - std::pow(v, t.two_star_s - 2.0);
    const double F = 0.5 * c * v * v + mu * std::pow(v, t.two_star) / t.two_star -
                     std::pow(v, t.two_star_s) / t.two_star_s;
    return {F, v * g, g};
}

double crit_energy(const ProblemParams& params, const PhaseState& state) {
    require_critical(params, "crit_energy");
    return 0.5 * state.dv * state.dv - crit_potential(params, std::max(state.v, 0.0)).F;
}

// ---------------------------------------------------------------------------

double bubble_profile(const ProblemParams& params, double lambda, double r) {
    if (!(lambda > 0.0)) throw DomainError(kModule, "lambda", "lambda > 0");
    if (!(r >= 0.0)) throw DomainError(kModule, "r", "r >= 0");
    const double s = params.s();
    const ExponentTable t = exponent_table(params);
    const double m = (params.n() - 2.0) / (2.0 - s);
    return t.c_ns * std::pow(std::pow(lambda, 1.0 - 0.5 * s) /
                                 (std::pow(lambda, 2.0 - s) + std::pow(r, 2.0 - s)),
                             m);
}

double bubble_derivative(const ProblemParams& params, double lambda, double r) {
    const double s = params.s();
    const double m = (params.n() - 2.0) / (2.0 - s);
    if (r == 0.0) return 0.0;
    const double u = bubble_profile(params, lambda, r);
    return -m * (2.0 - s) * std::pow(r, 1.0 - s) * u /
           (std::pow(lambda, 2.0 - s) + std::pow(r, 2.0 - s));
}

double homoclinic_profile(const ProblemParams& params, double t) {
    return homoclinic_state(params, t).v;
}

PhaseState homoclinic_state(const ProblemParams& params, double t) {
    const double s = params.s();
    const ExponentTable table = exponent_table(params);
    const double kappa = 0.5 * (2.0 - s);
    const double m = (params.n() - 2.0) / (2.0 - s);
    // (e^{κt} + e^{-κt})^{-m} = e^{-κm|t|} (1 + e^{-2κ|t|})^{-m}
    const double at = std::fabs(t);
    const double v = table.c_ns * std::exp(-kappa * m * at) * std::pow(1.0 + std::exp(-2.0 * kappa * at), -m);
    return {t, v, -m * kappa * std::tanh(kappa * t) * v};
}

TurningPoints turning_points(const ProblemParams& params, double K) {
    const ExponentTable t = exponent_table(params);
    if (!(K > 0.0 && K < t.K_ns)) {
        throw RegimeError(kModule, "turning points require 0 < K < K_ns");
    }
    const double c = t.linear_coeff;
    const double p = t.two_star_s;
    auto level = [&](double v) { return 0.5 * c * v * v - std::pow(v, p) / p - K; };
    const double v_zero = std::pow(0.5 * c * p, 1.0 / (p - 2.0));
    const numerics::Bracket lower(level, 0.0, t.v_bar);
    const numerics::Bracket upper(level, t.v_bar, v_zero);
    return {numerics::find_root(level, lower, 1e-16 * t.v_bar),
            numerics::find_root(level, upper, 1e-16 * v_zero)};
}

PeriodResult period_ex(const ProblemParams& params, double K) {
    const ExponentTable t = exponent_table(params);
    const TurningPoints tp = turning_points(params, K);
    const double c = t.linear_coeff;
    const double p = t.two_star_s;
    const double mid = 0.5 * (tp.v_min + tp.v_max);

    // v = v_min + u^2 on the left half, v = v_max - u^2 on the right half;
    // dv/sqrt(2(H0 - K)) becomes 2u du/sqrt(2 gap), smooth at u = 0.
    auto half = [&](double anchor, double sign, double width) {
        auto integrand = [&, anchor, sign](double u) {
            if (u == 0.0) {
                const double slope = std::fabs(c * anchor - std::pow(anchor, p - 1.0));
                return 2.0 / std::sqrt(2.0 * slope);
            }
            const double gap = level_gap(c, p, anchor, sign * u * u);
            return 2.0 * u / std::sqrt(2.0 * gap);
        };
        numerics::QuadSpec spec;
        spec.a = 0.0;
        spec.b = std::sqrt(width);
        spec.abs_tol = 1e-13;
        spec.rel_tol = 1e-13;
        return numerics::integrate_adaptive_ex(integrand, spec);
    };
    const numerics::QuadResult left = half(tp.v_min, 1.0, mid - tp.v_min);
    const numerics::QuadResult right = half(tp.v_max, -1.0, tp.v_max - mid);
    return {2.0 * (left.value + right.value), 2.0 * (left.error + right.error)};
}

double periodic_profile(const ProblemParams& params, double K, double t, double tol) {
    const TurningPoints tp = turning_points(params, K);
    const ProblemParams limit = params.with_mu(0.0);
    return advance(limit, PhaseState{0.0, tp.v_min, 0.0}, std::fabs(t), tol).v;
}

// ---------------------------------------------------------------------------

const char* profile_kind_name(ProfileKind kind) {
    switch (kind) {
    case ProfileKind::Bubble: return "Bubble";
    case ProfileKind::Homoclinic: return "Homoclinic";
    case ProfileKind::LimitConstant: return "LimitConstant";
    case ProfileKind::PeriodicVK: return "PeriodicVK";
    case ProfileKind::NDPower: return "NDPower";
    case ProfileKind::CritConstant: return "CritConstant";
    }
    return "?";
}

ClosedFormProfile::ClosedFormProfile(ProblemParams params, ProfileKind kind, double parameter)
    : params_(params), kind_(kind), parameter_(parameter) {}

ClosedFormProfile ClosedFormProfile::bubble(const ProblemParams& params, double lambda) {
    if (!(lambda > 0.0)) throw DomainError(kModule, "lambda", "lambda > 0");
    ClosedFormProfile p(params, ProfileKind::Bubble, lambda);
    p.aux_a_ = std::log(lambda);
    return p;
}

ClosedFormProfile ClosedFormProfile::homoclinic(const ProblemParams& params) {
    return ClosedFormProfile(params, ProfileKind::Homoclinic, 0.0);
}

ClosedFormProfile ClosedFormProfile::limit_constant(const ProblemParams& params) {
    return ClosedFormProfile(params, ProfileKind::LimitConstant, exponent_table(params).v_bar);
}

ClosedFormProfile ClosedFormProfile::periodic(const ProblemParams& params, double K, double phase,
                                              double reach, double tol) {
    if (!(reach > 0.0)) throw DomainError(kModule, "reach", "reach > 0");
    const TurningPoints tp = turning_points(params, K);
    IntegrationSettings settings;
    settings.tol = tol;
    ClosedFormProfile p(params, ProfileKind::PeriodicVK, K);
    p.phase_ = phase;
    p.orbit_ = std::make_shared<const Trajectory>(
        integrate(params.with_mu(0.0), PhaseState{0.0, tp.v_min, 0.0}, reach, settings));
    if (p.orbit_->halt_reason() != HaltReason::SpanComplete) {
        throw Error(ErrorKind::NotConverged, kModule, "periodic orbit left the positive cone");
    }
    return p;
}

ClosedFormProfile ClosedFormProfile::nd_power(const ProblemParams& params) {
    const NDProfile nd = nd_profile(params);
    ClosedFormProfile p(params, ProfileKind::NDPower, nd.coeff);
    p.aux_a_ = nd.p_nd - 0.5 * (params.n() - 2.0);  // growth rate of v in t
    return p;
}

ClosedFormProfile ClosedFormProfile::crit_constant(const ProblemParams& params) {
    require_critical(params, "crit_constant");
    const double mu0 = mu_zero(params);
    if (std::fabs(params.mu() - mu0) > 1e-12 * mu0) {
        throw RegimeError(kModule, "crit_constant requires mu = mu0(n,s)");
    }
    const double s = params.s();
    const double value = std::pow((2.0 - s) / (2.0 * mu0), (params.n() - 2.0) / (2.0 * s));
    return ClosedFormProfile(params, ProfileKind::CritConstant, value);
}

PhaseState ClosedFormProfile::state_at(double t) const {
    switch (kind_) {
    case ProfileKind::Bubble: {
        // r^{(n-2)/2} U_λ(r) = v_0(t + ln λ)
        const PhaseState h = homoclinic_state(params_, t + aux_a_);
        return {t, h.v, h.dv};
    }
    case ProfileKind::Homoclinic:
        return homoclinic_state(params_, t);
    case ProfileKind::LimitConstant:
    case ProfileKind::CritConstant:
        return {t, parameter_, 0.0};
    case ProfileKind::PeriodicVK: {
        const double local = t - phase_;
        const PhaseState s = orbit_->state_at(std::fabs(local));
        return {t, s.v, local < 0.0 ? -s.dv : s.dv};
    }
    case ProfileKind::NDPower: {
        const double v = parameter_ * std::exp(aux_a_ * t);
        return {t, v, aux_a_ * v};
    }
    }
    return {t, 0.0, 0.0};
}

double ClosedFormProfile::t_min() const {
    if (kind_ == ProfileKind::PeriodicVK) return phase_ - orbit_->t_max();
    return -std::numeric_limits<double>::infinity();
}

double ClosedFormProfile::t_max() const {
    if (kind_ == ProfileKind::PeriodicVK) return phase_ + orbit_->t_max();
    return std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------

CritEquilibria crit_equilibria(const ProblemParams& params) {
    require_critical(params, "crit_equilibria");
    const double mu = params.mu();
    const double mu0 = mu_zero(params);
    if (!(mu > 0.0)) throw RegimeError(kModule, "crit_equilibria requires mu > 0");
    if (mu > mu0 * (1.0 + 1e-12)) {
        throw RegimeError(kModule, "g has no zero for mu > mu0(n,s)");
    }
    const ExponentTable t = exponent_table(params);
    const double a = t.two_star - 2.0;
    const double b = t.two_star_s - 2.0;
    const double v_star = std::pow(b / (mu * a), 1.0 / (a - b));  // argmin g
    auto g = [&](double v) { return crit_potential(params, v).g; };
    if (std::fabs(mu - mu0) <= 1e-12 * mu0 || g(v_star) >= 0.0) {
        return {v_star, v_star, true};
    }
    const numerics::Bracket lower(g, 0.0, v_star);
    double hi = 2.0 * v_star;
    while (g(hi) <= 0.0) hi *= 2.0;
    const numerics::Bracket upper(g, v_star, hi);
    return {numerics::find_root(g, lower, 1e-16 * v_star), numerics::find_root(g, upper, 1e-16 * hi),
            false};
}

const char* orbit_tag_name(OrbitTag tag) {
    switch (tag) {
    case OrbitTag::Constant: return "Constant";
    case OrbitTag::Periodic: return "Periodic";
    case OrbitTag::HomoclinicToSaddle: return "HomoclinicToSaddle";
    case OrbitTag::TouchesZero: return "TouchesZero";
    case OrbitTag::Unbounded: return "Unbounded";
    }
    return "?";
}

OrbitClass crit_classify_orbit(const ProblemParams& params, const PhaseState& state0, double tol) {
    require_critical(params, "crit_classify_orbit");
    if (!(state0.v > 0.0)) throw DomainError(kModule, "v", "v > 0");
    const CritEquilibria eq = crit_equilibria(params);
    if (eq.degenerate) {
        throw RegimeError(kModule, "orbit classification requires 0 < mu < mu0(n,s)");
    }
    OrbitClass out{};
    out.energy = crit_energy(params, state0);
    out.E_center = -crit_potential(params, eq.v_minus).F;
    out.E_separatrix = -crit_potential(params, eq.v_plus).F;

    auto near = [&](double v_eq) {
        return std::fabs(state0.v - v_eq) <= tol * std::max(1.0, v_eq) && std::fabs(state0.dv) <= tol;
    };
    const double E = out.energy;
    const double E_sep = out.E_separatrix;
    if (near(eq.v_minus) || near(eq.v_plus)) {
        out.tag = OrbitTag::Constant;
    } else if (state0.v > eq.v_plus) {
        // Right of the saddle the potential -F falls to -infinity.
        out.tag = (E < E_sep - tol) ? OrbitTag::Unbounded
                  : (E >= 0.0)      ? OrbitTag::TouchesZero
                                    : OrbitTag::Unbounded;
    } else if (std::fabs(E - E_sep) <= tol && E_sep < 0.0) {
        out.tag = OrbitTag::HomoclinicToSaddle;
    } else if (E > out.E_center && E < std::min(E_sep, 0.0)) {
        out.tag = OrbitTag::Periodic;
    } else if (E >= 0.0) {
        out.tag = OrbitTag::TouchesZero;
    } else {
        // E_sep < E < 0: crosses the saddle and escapes.
        out.tag = OrbitTag::Unbounded;
    }
    return out;
}

CriticalThresholds critical_thresholds(const ProblemParams& params) {
    CriticalThresholds out{};
    const double s = params.s();
    out.mu0 = mu_zero(params);
    const MuOne m1 = mu_one(params);
    out.mu1_printed = m1.printed;
    out.mu1_operational = m1.operational;
    out.mu1_consistent = m1.consistent;
    out.v_bar_limit = exponent_table(params).v_bar;
    out.u_const_coeff = std::pow((2.0 - s) / (2.0 * out.mu0), (params.n() - 2.0) / (2.0 * s));
    if (is_critical_sobolev(params) && params.mu() > 0.0 &&
        params.mu() <= out.mu0 * (1.0 + 1e-12)) {
        const CritEquilibria eq = crit_equilibria(params);
        out.v_minus = eq.v_minus;
        out.v_plus = eq.v_plus;
    }
    return out;
}

} // namespace singprof
