#ifndef SINGPROF_DYNAMICS_HPP
#define SINGPROF_DYNAMICS_HPP

// Emden-Fowler picture of radial solutions: v(t) = r^{(n-2)/2} u(r), t = -ln r,
// which turns the radial equation into
//
//   v'' = ((n-2)^2/4) v - v^{2*(s)-1} + μ e^{-γt} v^q,   γ = (n-2)(2*-1-q)/2,
//
// autonomous when μ = 0 or q = 2*-1.

#include "singprof/params.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace singprof {

struct PhaseState {
    double t;
    double v;
    double dv;
};

struct RadialState {
    double r;
    double u;
    double du;
};

/// (r, u, u'(r)) -> (t, v, v'(t)). DomainError unless r > 0.
PhaseState ef_transform(const ProblemParams& params, double r, double u, double du);
RadialState ef_untransform(const ProblemParams& params, const PhaseState& state);

struct FieldValue {
    double dv;
    double ddv;
};

FieldValue vector_field(const ProblemParams& params, const PhaseState& state);

/// K = -(v')^2/2 + ((n-2)^2/8) v^2 - v^{2*(s)}/2*(s). Conserved only when μ = 0.
double hamiltonian(const ProblemParams& params, const PhaseState& state);

/// Radial Pohozaev density per unit sphere area:
/// hamiltonian + μ e^{-γt} v^{q+1}/(q+1). Conserved when μ = 0 or q = 2*-1,
/// monotone otherwise.
double pohozaev_density(const ProblemParams& params, const PhaseState& state);

/// E = (v')^2/2 - F(v) for q = 2*-1; RegimeError otherwise.
double crit_energy(const ProblemParams& params, const PhaseState& state);

// ---------------------------------------------------------------------------
// Orbits

/// Anything that can report the Emden-Fowler state at a time t inside its span.
class Orbit {
public:
    virtual ~Orbit() = default;
    virtual PhaseState state_at(double t) const = 0;
    virtual double t_min() const = 0;
    virtual double t_max() const = 0;
    /// False when v is unbounded along the orbit (surface integrals then do not
    /// have a limit and are reported as non-convergent).
    virtual bool convergent() const { return true; }
};

enum class HaltReason { SpanComplete, PositivityLost, Overflow };

const char* halt_name(HaltReason reason);

struct IntegrationSettings {
    double tol = 1e-10;              // local error per step, mixed abs/rel
    double stride = 0.0;             // sample spacing in t; 0 samples every accepted step
    double overflow_ceiling = 1e8;   // v above this halts with Overflow
    std::size_t max_steps = 20'000'000;
    double initial_step = 1e-2;
};

/// An integrated orbit. Samples are strictly increasing in t whatever the
/// integration direction. state_at() re-integrates from the nearest sample,
/// so interior evaluations carry the integrator's accuracy rather than an
/// interpolant's.
class Trajectory : public Orbit {
public:
    Trajectory(ProblemParams params, IntegrationSettings settings, std::vector<PhaseState> samples,
               HaltReason halt, double drift, std::size_t accepted, std::size_t rejected);

    const ProblemParams& params() const noexcept { return params_; }
    const IntegrationSettings& settings() const noexcept { return settings_; }
    const std::vector<PhaseState>& samples() const noexcept { return samples_; }
    HaltReason halt_reason() const noexcept { return halt_; }
    double drift() const noexcept { return drift_; }
    std::size_t steps_accepted() const noexcept { return accepted_; }
    std::size_t steps_rejected() const noexcept { return rejected_; }

    PhaseState state_at(double t) const override;
    double t_min() const override { return samples_.front().t; }
    double t_max() const override { return samples_.back().t; }
    bool convergent() const override { return halt_ != HaltReason::Overflow; }

private:
    ProblemParams params_;
    IntegrationSettings settings_;
    std::vector<PhaseState> samples_;
    HaltReason halt_;
    double drift_;
    std::size_t accepted_;
    std::size_t rejected_;
};

/// Dormand-Prince 5(4) with step rejection, carried in extended precision.
/// Integrates forward or backward to t_end. Crossing v = 0 halts with
/// PositivityLost at the root-located crossing; v above the ceiling halts
/// with Overflow. Throws MaxIterations / ToleranceNotMet on step collapse.
Trajectory integrate(const ProblemParams& params, const PhaseState& state0, double t_end,
                     const IntegrationSettings& settings = {});

/// Single state at t_end (no samples kept).
PhaseState advance(const ProblemParams& params, const PhaseState& state0, double t_end, double tol);

/// Time to the next crossing of the Poincare section through state0 in the
/// same direction (v = v0 crossed with the sign of v0'; if v0' = 0, v' = 0
/// crossed with the sign of v0''). NotConverged if no return before t_max.
double first_return_time(const ProblemParams& params, const PhaseState& state0, double t_max,
                         double tol = 1e-12);

// ---------------------------------------------------------------------------
// Closed forms of the unperturbed limit equation

/// U_λ(r) = c_{n,s} (λ^{1-s/2}/(λ^{2-s} + r^{2-s}))^{(n-2)/(2-s)}.
double bubble_profile(const ProblemParams& params, double lambda, double r);
double bubble_derivative(const ProblemParams& params, double lambda, double r);

/// v_0(t) = ((n-s)(n-2))^{1/(2*(s)-2)} (e^{(2-s)t/2} + e^{-(2-s)t/2})^{-(n-2)/(2-s)}.
double homoclinic_profile(const ProblemParams& params, double t);
PhaseState homoclinic_state(const ProblemParams& params, double t);

struct TurningPoints {
    double v_min;
    double v_max;
};

/// Positive roots of ((n-2)^2/8) v^2 - v^{2*(s)}/2*(s) = K, 0 < K < K_{n,s}.
TurningPoints turning_points(const ProblemParams& params, double K);

struct PeriodResult {
    double value;
    double error;
};

/// T(K) = 2 ∫ dv / sqrt(2(H0(v) - K)) between the turning points.
PeriodResult period_ex(const ProblemParams& params, double K);
inline double period(const ProblemParams& params, double K) { return period_ex(params, K).value; }

/// v_K(t): the periodic orbit of level K with its minimum at t = 0.
double periodic_profile(const ProblemParams& params, double K, double t, double tol = 1e-12);

enum class ProfileKind { Bubble, Homoclinic, LimitConstant, PeriodicVK, NDPower, CritConstant };

const char* profile_kind_name(ProfileKind kind);

/// Closed-form (or, for v_K, pre-integrated) profiles seen as Emden-Fowler orbits.
class ClosedFormProfile : public Orbit {
public:
    static ClosedFormProfile bubble(const ProblemParams& params, double lambda);
    static ClosedFormProfile homoclinic(const ProblemParams& params);
    static ClosedFormProfile limit_constant(const ProblemParams& params);
    /// v_K(t - phase) available for t - phase in [-reach, reach].
    static ClosedFormProfile periodic(const ProblemParams& params, double K, double phase,
                                      double reach, double tol = 1e-12);
    static ClosedFormProfile nd_power(const ProblemParams& params);
    static ClosedFormProfile crit_constant(const ProblemParams& params);

    ProfileKind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return parameter_; }

    PhaseState state_at(double t) const override;
    double t_min() const override;
    double t_max() const override;
    bool convergent() const override { return kind_ != ProfileKind::NDPower; }

private:
    ClosedFormProfile(ProblemParams params, ProfileKind kind, double parameter);

    ProblemParams params_;
    ProfileKind kind_;
    double parameter_;      // λ, K, or the constant value
    double phase_ = 0.0;
    double aux_a_ = 0.0;    // kind-specific cached constants
    double aux_b_ = 0.0;
    std::shared_ptr<const Trajectory> orbit_;  // PeriodicVK only
};

// ---------------------------------------------------------------------------
// Critical case q = 2*-1

struct CritPotential {
    double F;
    double dF;
    double g;  // F'(v)/v, with g(0) = (n-2)^2/4
};

CritPotential crit_potential(const ProblemParams& params, double v);

struct CritEquilibria {
    double v_minus;
    double v_plus;
    bool degenerate;  // μ = μ0: the double root is returned twice
};

/// Zeros v- < v+ of g. RegimeError unless q = 2*-1 and 0 < μ <= μ0.
CritEquilibria crit_equilibria(const ProblemParams& params);

enum class OrbitTag { Constant, Periodic, HomoclinicToSaddle, TouchesZero, Unbounded };

const char* orbit_tag_name(OrbitTag tag);

struct OrbitClass {
    OrbitTag tag;
    double energy;
    double E_center;      // -F(v-)
    double E_separatrix;  // -F(v+)
};

/// Phase-plane verdict for the autonomous critical equation, from energy
/// levels alone. Unbounded marks orbits that escape past the saddle v+.
OrbitClass crit_classify_orbit(const ProblemParams& params, const PhaseState& state0,
                               double tol = 1e-9);

struct CriticalThresholds {
    double mu0;
    double mu1_printed;
    double mu1_operational;
    bool mu1_consistent;
    std::optional<double> v_minus;
    std::optional<double> v_plus;
    double v_bar_limit;    // constant orbit of the unperturbed equation
    double u_const_coeff;  // limit of |x|^{(n-2)/2} u at μ = μ0
};

CriticalThresholds critical_thresholds(const ProblemParams& params);

} // namespace singprof

#endif // SINGPROF_DYNAMICS_HPP
