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

using Real = long double;

// Right-hand side in extended precision. Negative trial values of v inside a
// stage see the nonlinear terms as zero; an accepted step with v <= 0 is a
// positivity event and never propagates.
struct Field {
    Real c;       // (n-2)^2/4
    Real p_hs;    // 2*(s)-1
    Real q;
    Real mu;
    Real gamma;

    explicit Field(const ProblemParams& params) {
        const ExponentTable t = exponent_table(params);
        c = t.linear_coeff;
        p_hs = t.two_star_s - 1.0;
        q = params.q();
        mu = params.mu();
        gamma = t.gamma;
    }

    Real accel(Real t, Real v) const {
        const Real vp = v > 0 ? v : 0;
        Real a = c * v - std::pow(vp, p_hs);
        if (mu != 0) a += mu * std::exp(-gamma * t) * std::pow(vp, q);
        return a;
    }

    Real density(Real t, Real v, Real dv) const {
        const Real vp = v > 0 ? v : 0;
        Real h = -dv * dv / 2 + c * v * v / 2 - std::pow(vp, p_hs + 1) / (p_hs + 1);
        if (mu != 0) h += mu * std::exp(-gamma * t) * std::pow(vp, q + 1) / (q + 1);
        return h;
    }
};

struct Y {
    Real v;
    Real dv;
};

struct Step {
    Y y;
    Y err;
    Y k_end;  // derivative at the new point (FSAL)
};

// Dormand-Prince 5(4) tableau.
constexpr Real c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5, c5 = 8.0L / 9;
constexpr Real a21 = 1.0L / 5;
constexpr Real a31 = 3.0L / 40, a32 = 9.0L / 40;
constexpr Real a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
constexpr Real a51 = 19372.0L / 6561, a52 = -25360.0L / 2187, a53 = 64448.0L / 6561,
               a54 = -212.0L / 729;
constexpr Real a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247, a64 = 49.0L / 176,
               a65 = -5103.0L / 18656;
constexpr Real b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192, b5 = -2187.0L / 6784,
               b6 = 11.0L / 84;
constexpr Real e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920, e5 = -17253.0L / 339200,
               e6 = 22.0L / 525, e7 = -1.0L / 40;

Y deriv(const Field& f, Real t, const Y& y) { return {y.dv, f.accel(t, y.v)}; }

Step dp_step(const Field& f, Real t, const Y& y, const Y& k1, Real h) {
    auto at = [&](Real w1, Real w2, Real w3, Real w4, Real w5, const Y& q1, const Y& q2,
                  const Y& q3, const Y& q4, const Y& q5) {
        return Y{y.v + h * (w1 * q1.v + w2 * q2.v + w3 * q3.v + w4 * q4.v + w5 * q5.v),
                 y.dv + h * (w1 * q1.dv + w2 * q2.dv + w3 * q3.dv + w4 * q4.dv + w5 * q5.dv)};
    };
    const Y zero{0, 0};
    const Y k2 = deriv(f, t + c2 * h, at(a21, 0, 0, 0, 0, k1, zero, zero, zero, zero));
    const Y k3 = deriv(f, t + c3 * h, at(a31, a32, 0, 0, 0, k1, k2, zero, zero, zero));
    const Y k4 = deriv(f, t + c4 * h, at(a41, a42, a43, 0, 0, k1, k2, k3, zero, zero));
    const Y k5 = deriv(f, t + c5 * h, at(a51, a52, a53, a54, 0, k1, k2, k3, k4, zero));
    const Y k6 = deriv(f, t + h, at(a61, a62, a63, a64, a65, k1, k2, k3, k4, k5));
    const Y y5{y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v),
               y.dv + h * (b1 * k1.dv + b3 * k3.dv + b4 * k4.dv + b5 * k5.dv + b6 * k6.dv)};
    const Y k7 = deriv(f, t + h, y5);
    const Y err{h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v),
                h * (e1 * k1.dv + e3 * k3.dv + e4 * k4.dv + e5 * k5.dv + e6 * k6.dv + e7 * k7.dv)};
    return {y5, err, k7};
}

Real error_norm(const Y& y, const Y& y_new, const Y& err, Real tol) {
    const Real sv = tol * std::max({Real(1), std::fabs(y.v), std::fabs(y_new.v)});
    const Real sd = tol * std::max({Real(1), std::fabs(y.dv), std::fabs(y_new.dv)});
    return std::max(std::fabs(err.v) / sv, std::fabs(err.dv) / sd);
}

PhaseState to_state(Real t, const Y& y) {
    return {static_cast<double>(t), static_cast<double>(y.v), static_cast<double>(y.dv)};
}

struct RunOptions {
    bool record = true;
    bool halt_on_positivity = true;
};

struct RunResult {
    std::vector<PhaseState> samples;
    PhaseState final_state{};
    HaltReason halt = HaltReason::SpanComplete;
    double drift = 0.0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

RunResult run(const Field& field, const PhaseState& state0, double t_end,
              const IntegrationSettings& settings, const RunOptions& options) {
    if (!(settings.tol > 0.0)) throw DomainError(kModule, "tol", "tol > 0");
    if (!(settings.stride >= 0.0)) throw DomainError(kModule, "stride", "stride >= 0");
    if (!(state0.v >= 0.0)) throw DomainError(kModule, "v", "v >= 0");

    RunResult out;
    Real t = state0.t;
    Y y{state0.v, state0.dv};
    const Real tol = settings.tol;
    const Real target = t_end;
    const Real sign = (target >= t) ? 1 : -1;
    const Real density0 = field.density(t, y.v, y.dv);
    Real drift = 0;

    if (options.record) out.samples.push_back(state0);
    out.final_state = state0;
    if (target == t) return out;

    Y k1 = deriv(field, t, y);
    Real h = sign * std::min<Real>(settings.initial_step, std::fabs(target - t));
    Real next_sample = settings.stride > 0 ? t + sign * Real(settings.stride) : target;
    const Real eps = std::numeric_limits<Real>::epsilon();

    std::size_t steps = 0;
    while (sign * (target - t) > 0) {
        if (++steps > settings.max_steps) {
            throw Error(ErrorKind::MaxIterations, kModule,
                        "integrator exceeded " + std::to_string(settings.max_steps) + " steps");
        }
        Real h_try = h;
        bool lands_end = false;
        bool lands_sample = false;
        if (sign * (t + h_try - target) >= 0) {
            h_try = target - t;
            lands_end = true;
        }
        if (settings.stride > 0 && sign * (t + h_try - next_sample) >= 0) {
            h_try = next_sample - t;
            lands_sample = true;
            lands_end = lands_end && (next_sample == target);
        }
        if (std::fabs(h_try) < 16 * eps * std::max<Real>(1, std::fabs(t))) {
            if (lands_end || lands_sample) {
                // Gap below resolution in t: snap without stepping.
                t = lands_end ? target : next_sample;
                if (lands_sample) next_sample += sign * Real(settings.stride);
                continue;
            }
            throw ToleranceNotMet(kModule, "integrator step size collapsed at t=" +
                                               std::to_string(static_cast<double>(t)),
                                  static_cast<double>(h_try));
        }

        const Step step = dp_step(field, t, y, k1, h_try);
        const Real err = error_norm(y, step.y, step.err, tol);
        if (!(err <= 1) || !std::isfinite(step.y.v) || !std::isfinite(step.y.dv)) {
            ++out.rejected;
            const Real factor = std::isfinite(err) ? std::max<Real>(0.2, 0.9 * std::pow(err, -0.2L)) : 0.2;
            h = h_try * factor;
            if (std::fabs(h) < 16 * eps * std::max<Real>(1, std::fabs(t))) {
                throw ToleranceNotMet(kModule, "integrator step size collapsed at t=" +
                                                   std::to_string(static_cast<double>(t)),
                                      static_cast<double>(err));
            }
            continue;
        }

        ++out.accepted;
        if (options.halt_on_positivity && step.y.v <= 0) {
            // Locate the crossing inside [t, t + h_try] with single steps from t.
            const Y y_from = y;
            const Y k_from = k1;
            auto v_after = [&](double theta) {
                return static_cast<double>(dp_step(field, t, y_from, k_from, sign * Real(theta)).y.v);
            };
            const double span = static_cast<double>(std::fabs(h_try));
            double theta = span;
            if (v_after(span) < 0.0) {
                const numerics::Bracket bracket(v_after, 0.0, span);
                theta = numerics::find_root(v_after, bracket, 1e-15 * std::max(1.0, span));
            }
            const Step hit = dp_step(field, t, y_from, k_from, sign * Real(theta));
            t = t + sign * Real(theta);
            y = Y{0, hit.y.dv};
            drift = std::max(drift, std::fabs(field.density(t, y.v, y.dv) - density0));
            out.final_state = to_state(t, y);
            if (options.record) out.samples.push_back(out.final_state);
            out.halt = HaltReason::PositivityLost;
            break;
        }

        const Real h_used = h_try;
        t = lands_end ? target : (lands_sample ? next_sample : t + h_try);
        y = step.y;
        k1 = step.k_end;
        drift = std::max(drift, std::fabs(field.density(t, y.v, y.dv) - density0));
        if (lands_sample) next_sample += sign * Real(settings.stride);

        const bool take = settings.stride == 0 || lands_sample || lands_end;
        out.final_state = to_state(t, y);
        if (options.record && take) out.samples.push_back(out.final_state);

        if (y.v > settings.overflow_ceiling) {
            if (options.record && !take) out.samples.push_back(out.final_state);
            out.halt = HaltReason::Overflow;
            break;
        }

        const Real grow = err == 0 ? 5 : std::min<Real>(5, std::max<Real>(0.2, 0.9 * std::pow(err, -0.2L)));
        Real h_next = h_used * grow;
        if ((lands_end || lands_sample) && std::fabs(h) > std::fabs(h_next)) h_next = h;
        h = h_next;
    }

    if (options.record && sign < 0) std::reverse(out.samples.begin(), out.samples.end());
    // Drop samples that collapse onto the same double time value.
    if (options.record) {
        auto last = std::unique(out.samples.begin(), out.samples.end(),
                                [](const PhaseState& a, const PhaseState& b) { return a.t == b.t; });
        out.samples.erase(last, out.samples.end());
    }
    out.drift = static_cast<double>(drift);
    return out;
}

} // namespace

const char* halt_name(HaltReason reason) {
    switch (reason) {
    case HaltReason::SpanComplete: return "SpanComplete";
    case HaltReason::PositivityLost: return "PositivityLost";
    case HaltReason::Overflow: return "Overflow";
    }
    return "?";
}

Trajectory::Trajectory(ProblemParams params, IntegrationSettings settings,
                       std::vector<PhaseState> samples, HaltReason halt, double drift,
                       std::size_t accepted, std::size_t rejected)
    : params_(params), settings_(settings), samples_(std::move(samples)), halt_(halt),
      drift_(drift), accepted_(accepted), rejected_(rejected) {}

PhaseState Trajectory::state_at(double t) const {
    const double lo = t_min();
    const double hi = t_max();
    const double slack = 1e-12 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
    if (!(t >= lo - slack && t <= hi + slack)) {
        throw Error(ErrorKind::OutOfSpan, kModule,
                    "t=" + std::to_string(t) + " outside trajectory span [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "]");
    }
    t = std::clamp(t, lo, hi);
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double value, const PhaseState& s) { return value < s.t; });
    const PhaseState& from = *(it == samples_.begin() ? it : std::prev(it));
    if (from.t == t) return from;
    if (it != samples_.end() && it->t == t) return *it;

    IntegrationSettings local = settings_;
    local.stride = 0.0;
    local.overflow_ceiling = std::numeric_limits<double>::infinity();
    local.initial_step = std::min(settings_.initial_step, std::fabs(t - from.t));
    const RunResult r = run(Field(params_), from, t, local, RunOptions{false, false});
    return r.final_state;
}

Trajectory integrate(const ProblemParams& params, const PhaseState& state0, double t_end,
                     const IntegrationSettings& settings) {
    RunResult r = run(Field(params), state0, t_end, settings, RunOptions{true, true});
    return Trajectory(params, settings, std::move(r.samples), r.halt, r.drift, r.accepted, r.rejected);
}

PhaseState advance(const ProblemParams& params, const PhaseState& state0, double t_end, double tol) {
    IntegrationSettings settings;
    settings.tol = tol;
    settings.overflow_ceiling = std::numeric_limits<double>::infinity();
    const RunResult r = run(Field(params), state0, t_end, settings, RunOptions{false, true});
    if (r.halt != HaltReason::SpanComplete) {
        throw Error(ErrorKind::NotConverged, kModule,
                    std::string("orbit halted before t_end: ") + halt_name(r.halt));
    }
    return r.final_state;
}

double first_return_time(const ProblemParams& params, const PhaseState& state0, double t_max,
                         double tol) {
    const FieldValue f0 = vector_field(params, state0);
    double direction;
    bool on_velocity;
    if (state0.dv != 0.0) {
        direction = state0.dv > 0 ? 1.0 : -1.0;
        on_velocity = false;
    } else if (f0.ddv != 0.0) {
        direction = f0.ddv > 0 ? 1.0 : -1.0;
        on_velocity = true;
    } else {
        throw Error(ErrorKind::NotConverged, kModule, "equilibrium state has no return map");
    }
    auto section = [&](const PhaseState& s) {
        return direction * (on_velocity ? s.dv : s.v - state0.v);
    };

    IntegrationSettings settings;
    settings.tol = tol;
    const Trajectory traj = integrate(params, state0, state0.t + t_max, settings);
    const auto& samples = traj.samples();
    bool seen_negative = false;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double sigma = section(samples[i]);
        if (sigma < 0.0) {
            seen_negative = true;
            continue;
        }
        if (seen_negative) {
            auto g = [&](double t) { return section(traj.state_at(t)); };
            const numerics::Bracket bracket(g, samples[i - 1].t, samples[i].t);
            const double t_hit = numerics::find_root(g, bracket, 1e-14 * std::max(1.0, samples[i].t));
            return t_hit - state0.t;
        }
    }
    throw Error(ErrorKind::NotConverged, kModule,
                std::string("no return to the section before t_max (halt: ") +
                    halt_name(traj.halt_reason()) + ")");
}

} // namespace singprof
