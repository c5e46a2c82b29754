#include "singprof/pohozaev.hpp"

#include "singprof/error.hpp"
#include "singprof/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace singprof {

namespace {

constexpr const char* kModule = "pohozaev";

double scale_of(const ProblemParams& params) {
    const ExponentTable t = exponent_table(params);
    return t.omega * std::max(1.0, t.K_ns);
}

} // namespace

NonlinearityValue nonlinearity(const ProblemParams& params, double r, double t_val) {
    if (!(r > 0.0)) throw DomainError(kModule, "r", "r > 0");
    if (!(t_val >= 0.0)) throw DomainError(kModule, "t", "t >= 0");
    if (t_val == 0.0) return {0.0, 0.0};
    const double p = exponent_table(params).two_star_s;
    const double q = params.q();
    const double mu = params.mu();
    const double weight = std::pow(r, -params.s());
    const double tp = std::pow(t_val, p - 1.0);
    const double tq = std::pow(t_val, q);
    // f = w t^{p-1} (1 - μ r^s t^{q-p+1}); the bracket stays accurate where the two terms balance
    const double gap = q - cut_points(params.n(), params.s()).hardy_sobolev_minus_1;
    const double f = tp * weight * (1.0 - mu * std::pow(r, params.s()) * std::pow(t_val, gap));
    return {f, tp * t_val * weight / p - mu * tq * t_val / (q + 1.0)};
}

double pohozaev_from_state(const ProblemParams& params, const PhaseState& state) {
    return exponent_table(params).omega * pohozaev_density(params, state);
}

double pohozaev_radial(const ProblemParams& params, double r, double u, double du) {
    const ExponentTable t = exponent_table(params);
    const NonlinearityValue nl = nonlinearity(params, r, u);
    const double bracket = -0.5 * r * du * du - t.half_n_minus_2 * u * du - r * nl.F_big;
    return t.omega * std::pow(r, params.n() - 1.0) * bracket;
}

double pohozaev_at(const ProblemParams& params, const Orbit& orbit, double r) {
    if (!(r > 0.0)) throw DomainError(kModule, "r", "r > 0");
    return pohozaev_from_state(params, orbit.state_at(-std::log(r)));
}

PohozaevReport identity_residual(const ProblemParams& params, const Orbit& orbit, double r1,
                                 double r2, double rel_tol) {
    if (!(r1 > 0.0 && r1 < r2)) throw DomainError(kModule, "r1, r2", "0 < r1 < r2");
    const ExponentTable t = exponent_table(params);
    PohozaevReport out{};
    out.r1 = r1;
    out.r2 = r2;
    out.P_r1 = pohozaev_at(params, orbit, r1);
    out.P_r2 = pohozaev_at(params, orbit, r2);

    if (params.mu() != 0.0 && t.gamma != 0.0) {
        const double q1 = params.q() + 1.0;
        const double coef = 0.5 * (params.n() - 2.0) * (t.two_star - 1.0 - params.q()) / q1;
        // ρ^{n-1} u^{q+1} dρ = e^{-γt} v^{q+1} dt
        auto integrand = [&](double tt) {
            const double v = std::max(orbit.state_at(tt).v, 0.0);
            return std::exp(-t.gamma * tt) * std::pow(v, q1);
        };
        numerics::QuadSpec spec;
        spec.a = -std::log(r2);
        spec.b = -std::log(r1);
        spec.abs_tol = 1e-14;
        spec.rel_tol = rel_tol;
        const numerics::QuadResult q = numerics::integrate_adaptive_ex(integrand, spec);
        const double factor = coef * params.mu() * t.omega;
        out.bulk = factor * q.value;
        out.bulk_error = factor * q.error;
    }
    out.residual = out.P_r2 - out.P_r1 - out.bulk;
    const double floor = 1e-300 * scale_of(params);
    const double denom =
        std::max({std::fabs(out.P_r1), std::fabs(out.P_r2), std::fabs(out.bulk), floor});
    out.relative_residual = std::fabs(out.residual) / denom;
    return out;
}

AsymptoticPohozaev asymptotic_pohozaev(const ProblemParams& params, const Orbit& orbit,
                                       const AsymptoticOptions& options) {
    if (regime_of(params).tag == RegimeTag::Supercritical) {
        throw RegimeError(kModule, "asymptotic Pohozaev integral requires q <= 2*-1");
    }
    if (!(options.r0 > 0.0)) throw DomainError(kModule, "r0", "r0 > 0");
    const ExponentTable t = exponent_table(params);

    double r_min = options.r_min;
    if (!(r_min > 0.0)) {
        r_min = std::isfinite(orbit.t_max()) ? std::exp(-orbit.t_max()) : 1e-12;
    }

    AsymptoticPohozaev out{};
    out.rate_expected = t.gamma;
    for (double r = options.r0; r >= r_min && out.radii.size() < options.max_levels; r *= 0.5) {
        out.radii.push_back(r);
        out.values.push_back(pohozaev_at(params, orbit, r));
    }
    out.levels = out.radii.size();
    if (out.levels < 4) {
        throw Error(ErrorKind::NotConverged, kModule,
                    "radius ladder has " + std::to_string(out.levels) + " levels; need 4");
    }

    const bool extrapolate = params.mu() != 0.0 && t.gamma > 0.0;
    const double lift = std::pow(2.0, t.gamma);
    std::vector<double> estimates;
    for (std::size_t j = 0; j + 1 < out.levels; ++j) {
        const double a = out.values[j];
        const double b = out.values[j + 1];
        estimates.push_back(extrapolate ? (lift * b - a) / (lift - 1.0) : b);
    }
    const std::size_t m = estimates.size();
    out.estimate = estimates.back();
    const double band = options.tol * scale_of(params);
    const double lo = std::min({estimates[m - 1], estimates[m - 2], estimates[m - 3]});
    const double hi = std::max({estimates[m - 1], estimates[m - 2], estimates[m - 3]});
    out.converged = hi - lo <= band;

    for (std::size_t j = out.levels - 1; j >= 2; --j) {
        const double d_new = std::fabs(out.values[j] - out.values[j - 1]);
        const double d_old = std::fabs(out.values[j - 1] - out.values[j - 2]);
        if (d_new > 0.0 && d_old > 0.0) {
            out.rate_observed = std::log2(d_old / d_new);
            break;
        }
    }
    if (!out.converged) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "last three estimates spread %.3e exceeds %.3e after %zu levels", hi - lo,
                      band, out.levels);
        throw Error(ErrorKind::NotConverged, kModule, buf);
    }
    return out;
}

} // namespace singprof
