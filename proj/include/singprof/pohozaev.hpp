#ifndef SINGPROF_POHOZAEV_HPP
#define SINGPROF_POHOZAEV_HPP

#include "singprof/dynamics.hpp"
#include "singprof/params.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace singprof {

struct NonlinearityValue {
    double f;      // t^{2*(s)-1}/r^s - μ t^q
    double F_big;  // t^{2*(s)}/(2*(s) r^s) - μ t^{q+1}/(q+1)
};

NonlinearityValue nonlinearity(const ProblemParams& params, double r, double t_val);

/// Surface integral over the sphere of radius r, from the Emden-Fowler state.
double pohozaev_from_state(const ProblemParams& params, const PhaseState& state);

/// Same quantity from (r, u, u'(r)).
double pohozaev_radial(const ProblemParams& params, double r, double u, double du);

/// P_r along an orbit, evaluated at t = -ln r. OutOfSpan outside the orbit.
/// Orbits with orbit.convergent() == false still evaluate; callers report the flag.
double pohozaev_at(const ProblemParams& params, const Orbit& orbit, double r);

struct PohozaevReport {
    double r1;
    double r2;
    double P_r1;
    double P_r2;
    double bulk;
    double bulk_error;  // quadrature error estimate
    double residual;    // P_r2 - P_r1 - bulk
    double relative_residual;
    std::optional<double> asymptotic;
};

/// Checks P_r2 - P_r1 = ((n-2)(2*-1-q)/(2(q+1))) μ ω ∫_{r1}^{r2} ρ^{n-1} u^{q+1} dρ.
PohozaevReport identity_residual(const ProblemParams& params, const Orbit& orbit, double r1,
                                 double r2, double rel_tol = 1e-10);

struct AsymptoticOptions {
    double r0 = 0.5;
    double r_min = 0.0;       // 0: deepest radius the orbit reaches (1e-12 for unbounded spans)
    double tol = 1e-8;        // agreement of three successive estimates, relative to ω max(1, K_ns)
    std::size_t max_levels = 4000;
};

struct AsymptoticPohozaev {
    double estimate;
    double rate_expected;               // γ, from the O(r^γ) approach
    std::optional<double> rate_observed;
    bool converged;
    std::size_t levels;
    std::vector<double> radii;
    std::vector<double> values;         // raw P_r on the ladder
};

/// lim_{r->0} P_r along the orbit from the ladder r_j = r0 2^{-j} with
/// Richardson correction at rate γ. RegimeError for q > 2*-1; NotConverged
/// if three successive estimates never agree.
AsymptoticPohozaev asymptotic_pohozaev(const ProblemParams& params, const Orbit& orbit,
                                       const AsymptoticOptions& options = {});

} // namespace singprof

#endif // SINGPROF_POHOZAEV_HPP
