#include "cli/run.hpp"

#include "cli/json_out.hpp"

#include <singprof/classifier.hpp>
#include <singprof/dynamics.hpp>
#include <singprof/numerics.hpp>
#include <singprof/params.hpp>
#include <singprof/pohozaev.hpp>
#include <singprof/trace_io.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>

namespace singprof::cli {

using nlohmann::json;

namespace {

constexpr const char* kModule = "cli";

[[noreturn]] void verify_failed(const std::string& what, double achieved) {
    throw ToleranceNotMet(kModule, "verify: " + what, achieved);
}

json params_json(const ProblemParams& p) {
    return {{"n", p.n()}, {"s", p.s()}, {"q", p.q()}, {"mu", p.mu()}};
}

json state_json(const PhaseState& s) { return {{"t", s.t}, {"v", s.v}, {"dv", s.dv}}; }

json scenario_json(const Scenario& sc) {
    json j{{"command", command_name(sc.command)},
           {"n", sc.n},
           {"s", sc.s},
           {"q", sc.q},
           {"mu", sc.mu},
           {"tol", sc.tol},
           {"space", sc.space == Space::Radial ? "r" : "ef"},
           {"verify", sc.verify}};
    if (sc.out) j["out"] = *sc.out;
    if (sc.trace) j["trace"] = *sc.trace;
    return j;
}

void write_samples(const Scenario& sc, const ProblemParams& params,
                   const std::vector<PhaseState>& samples) {
    if (!sc.trace) return;
    std::ostringstream os;
    if (sc.space == Space::EF) {
        write_phase_csv(os, samples);
    } else {
        std::vector<RadialSample> rows;
        rows.reserve(samples.size());
        for (const auto& s : samples) {
            const RadialState r = ef_untransform(params, s);
            if (!std::isfinite(r.u) || !(r.r > 0.0)) break;
            rows.push_back({r.r, r.u});
        }
        write_radial_csv(os, rows);
    }
    write_text_file(*sc.trace, os.str());
}

std::vector<PhaseState> sample_orbit(const Orbit& orbit, const std::vector<double>& r_grid) {
    std::vector<PhaseState> out;
    out.reserve(r_grid.size());
    for (const double r : r_grid) out.push_back(orbit.state_at(-std::log(r)));
    return out;  // r_grid decreases, so t increases
}

const char* invariant_name(const ProblemParams& p) {
    if (p.mu() == 0.0) return "hamiltonian";
    if (is_critical_sobolev(p)) return "crit_energy";
    return "pohozaev_density";
}

double invariant_value(const ProblemParams& p, const PhaseState& s) {
    if (p.mu() == 0.0) return hamiltonian(p, s);
    if (is_critical_sobolev(p)) return crit_energy(p, s);
    return pohozaev_density(p, s);
}

// ---------------------------------------------------------------------------

json cmd_constants(const Scenario& sc, const ProblemParams& p) {
    const ExponentTable t = exponent_table(p);
    const Regime regime = regime_of(p);
    const CutPoints cuts = cut_points(p.n(), p.s());
    const MuOne m1 = mu_one(p);
    json r;
    r["exponents"] = {{"two_star_s", t.two_star_s}, {"two_star", t.two_star}, {"p", t.p},
                      {"c_ns", t.c_ns},             {"K_ns", t.K_ns},         {"gamma", t.gamma},
                      {"omega", t.omega},           {"v_bar", t.v_bar},       {"linear_coeff", t.linear_coeff}};
    r["regime"] = {{"tag", regime_name(regime.tag)},
                   {"mb_admissible", regime.mb_admissible},
                   {"nd_admissible", regime.nd_admissible}};
    r["cut_points"] = {{"two_star_s_minus_1", cuts.hardy_sobolev_minus_1},
                       {"two_star_minus_2", cuts.sobolev_minus_2},
                       {"two_star_minus_1", cuts.sobolev_minus_1}};
    r["mu0"] = mu_zero(p);
    r["mu1"] = {{"printed", m1.printed},
                {"operational", m1.operational},
                {"saddle_v", m1.saddle_v},
                {"consistency", m1.consistent ? "OK" : "MISMATCH"}};
    r["eps0"] = convexity_threshold(p);
    if (regime.mb_admissible && p.mu() > 0.0) {
        const RecurrenceConstant rc = mb_recurrence_constant(p);
        r["recurrence"] = {{"K", rc.K},
                           {"K_profile_form", rc.K_profile_form},
                           {"beta", rc.beta},
                           {"radial_integral", rc.radial_integral}};
        if (sc.verify && std::fabs(rc.K - rc.K_profile_form) > 1e-10 * rc.K) {
            verify_failed("recurrence constant forms disagree", std::fabs(rc.K - rc.K_profile_form) / rc.K);
        }
    }
    if (regime.nd_admissible && p.mu() > 0.0) {
        const NDProfile nd = nd_profile(p);
        r["nd"] = {{"p_nd", nd.p_nd}, {"coeff", nd.coeff}};
    }
    if (sc.verify) {
        const double h = hamiltonian(p, PhaseState{0.0, t.v_bar, 0.0});
        if (std::fabs(h - t.K_ns) > 1e-12 * std::max(1.0, t.K_ns)) {
            verify_failed("H(v_bar, 0) != K_ns", std::fabs(h - t.K_ns));
        }
        if (!(m1.operational > 0.0 && m1.operational < mu_zero(p))) {
            verify_failed("operational mu1 outside (0, mu0)", m1.operational);
        }
    }
    return r;
}

json cmd_solve(const Scenario& sc, const ProblemParams& p, json& diag) {
    if (!sc.v0) throw DomainError(kModule, "v0", "--v0 is required");
    const PhaseState s0{sc.t0, *sc.v0, sc.dv0.value_or(0.0)};
    IntegrationSettings settings;
    settings.tol = sc.tol;
    settings.stride = sc.stride;
    const Trajectory tr = integrate(p, s0, sc.t_end, settings);
    const bool exact = p.mu() == 0.0 || is_critical_sobolev(p);
    const PhaseState last = sc.t_end >= sc.t0 ? tr.samples().back() : tr.samples().front();

    json r;
    r["initial_state"] = state_json(s0);
    r["final_state"] = state_json(last);
    r["halt_reason"] = halt_name(tr.halt_reason());
    r["samples"] = tr.samples().size();
    r["invariant"] = {{"name", invariant_name(p)}, {"exact", exact}, {"initial", invariant_value(p, s0)},
                      {"final", invariant_value(p, last)}};
    diag["drift"] = tr.drift();
    diag["steps_accepted"] = tr.steps_accepted();
    diag["steps_rejected"] = tr.steps_rejected();

    if (sc.verify) {
        const double scale = std::max(1.0, std::fabs(invariant_value(p, s0)));
        if (exact && tr.drift() > 1e-7 * scale) verify_failed("invariant drift above 1e-7", tr.drift());
        for (const auto& s : tr.samples()) {
            if (s.v < 0.0) verify_failed("negative v in samples", s.v);
        }
    }
    write_samples(sc, p, tr.samples());
    return r;
}

json phase_level(const ProblemParams& limit, double K, bool verify, double tol) {
    const ExponentTable t = exponent_table(limit);
    const TurningPoints tp = turning_points(limit, K);
    const PeriodResult T = period_ex(limit, K);
    json e{{"K", K},
           {"K_over_K_ns", K / t.K_ns},
           {"v_min", tp.v_min},
           {"v_max", tp.v_max},
           {"period", T.value},
           {"period_error", T.error}};
    if (verify) {
        const double fr = first_return_time(limit, PhaseState{0.0, tp.v_min, 0.0}, 4.0 * T.value,
                                            std::min(tol, 1e-12));
        e["first_return"] = fr;
        if (std::fabs(fr - T.value) > 1e-6 * T.value) {
            verify_failed("period and first-return time differ", std::fabs(fr - T.value) / T.value);
        }
    }
    return e;
}

json cmd_phase(const Scenario& sc, const ProblemParams& p, json& diag) {
    const ProblemParams limit = p.with_mu(0.0);
    const ExponentTable t = exponent_table(limit);
    json r;
    r["equation"] = "limit (mu = 0)";
    r["K_ns"] = t.K_ns;
    r["small_oscillation_period"] =
        4.0 * std::numbers::pi / ((p.n() - 2.0) * std::sqrt(t.two_star_s - 2.0));

    // Independent levels go to a small worker pool; assembly stays in input order.
    json levels = json::array();
    const std::size_t workers = std::max<std::size_t>(1, sc.workers);
    for (std::size_t start = 0; start < sc.k_levels.size(); start += workers) {
        std::vector<std::future<json>> batch;
        const std::size_t stop = std::min(sc.k_levels.size(), start + workers);
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async, phase_level, limit, sc.k_levels[i],
                                       sc.verify, sc.tol));
        }
        for (auto& f : batch) levels.push_back(f.get());
    }
    r["levels"] = levels;
    diag["workers"] = workers;

    if (sc.trace && !sc.k_levels.empty()) {
        const double K = sc.k_levels.front();
        const TurningPoints tp = turning_points(limit, K);
        IntegrationSettings settings;
        settings.tol = sc.tol;
        settings.stride = sc.stride;
        const double T = period(limit, K);
        const Trajectory tr = integrate(limit, PhaseState{0.0, tp.v_min, 0.0}, T, settings);
        write_samples(sc, limit, tr.samples());
    }
    return r;
}

struct BuiltOrbit {
    std::unique_ptr<Orbit> orbit;
    ProblemParams eval;  // parameters the Pohozaev integrand uses
};

double deepest_t(const Scenario& sc) {
    double t = 1.0;
    for (const double r : sc.radii) t = std::max(t, -std::log(r));
    if (sc.r1) t = std::max(t, -std::log(*sc.r1));
    if (sc.r2) t = std::max(t, -std::log(*sc.r2));
    if (sc.asymptotic) t = std::max(t, -std::log(sc.r_min));
    return t;
}

BuiltOrbit build_orbit(const Scenario& sc, const ProblemParams& p) {
    const ProblemParams limit = p.with_mu(0.0);
    const std::string& kind = sc.profile;
    if (kind == "bubble") return {std::make_unique<ClosedFormProfile>(ClosedFormProfile::bubble(limit, sc.lambda)), limit};
    if (kind == "homoclinic") return {std::make_unique<ClosedFormProfile>(ClosedFormProfile::homoclinic(limit)), limit};
    if (kind == "constant") return {std::make_unique<ClosedFormProfile>(ClosedFormProfile::limit_constant(limit)), limit};
    if (kind == "periodic") {
        const double K = sc.k_levels.empty() ? 0.5 * exponent_table(limit).K_ns : sc.k_levels.front();
        const double reach = deepest_t(sc) + 1.0;
        return {std::make_unique<ClosedFormProfile>(ClosedFormProfile::periodic(limit, K, 0.0, reach, std::min(sc.tol, 1e-12))),
                limit};
    }
    if (kind == "nd") return {std::make_unique<ClosedFormProfile>(ClosedFormProfile::nd_power(p)), p};
    if (kind == "crit-constant") return {std::make_unique<ClosedFormProfile>(ClosedFormProfile::crit_constant(p)), p};
    if (kind == "solve") {
        if (!sc.v0) throw DomainError(kModule, "v0", "--v0 is required for --profile solve");
        IntegrationSettings settings;
        settings.tol = sc.tol;
        settings.stride = sc.stride;
        const PhaseState s0{sc.t0, *sc.v0, sc.dv0.value_or(0.0)};
        return {std::make_unique<Trajectory>(integrate(p, s0, sc.t_end, settings)), p};
    }
    throw DomainError(kModule, "profile", "known profile name");
}

json cmd_pohozaev(const Scenario& sc, const ProblemParams& p, json& diag) {
    const BuiltOrbit built = build_orbit(sc, p);
    const Orbit& orbit = *built.orbit;
    const ProblemParams& ep = built.eval;
    const ExponentTable t = exponent_table(ep);
    json r;
    r["profile"] = sc.profile;
    r["evaluated_mu"] = ep.mu();
    r["omega"] = t.omega;
    r["convergent"] = orbit.convergent();
    json values = json::array();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::vector<double> radii = sc.radii;
    if (radii.empty()) {
        if (std::isfinite(orbit.t_min()) && std::isfinite(orbit.t_max())) {
            const double mid = 0.5 * (orbit.t_min() + orbit.t_max());
            radii = {std::exp(-orbit.t_min()), std::exp(-mid), std::exp(-orbit.t_max())};
        } else {
            radii = {0.1, 1.0, 10.0};
        }
    }
    for (const double radius : radii) {
        const double P = pohozaev_at(ep, orbit, radius);
        values.push_back({{"r", radius}, {"P", P}});
        lo = std::min(lo, P);
        hi = std::max(hi, P);
        if (sc.verify) {
            const PhaseState st = orbit.state_at(-std::log(radius));
            const RadialState rs = ef_untransform(ep, st);
            const double P_radial = pohozaev_radial(ep, rs.r, rs.u, rs.du);
            if (std::fabs(P_radial - P) > 1e-10 * std::max(1.0, std::fabs(P))) {
                verify_failed("radial and Emden-Fowler reductions differ", std::fabs(P_radial - P));
            }
        }
    }
    r["values"] = values;
    const bool conserved = ep.mu() == 0.0 || is_critical_sobolev(ep);
    const double scale = t.omega * std::max(1.0, t.K_ns);
    if (sc.verify && conserved && orbit.convergent() && hi - lo > 1e-7 * scale) {
        verify_failed("P_r varies with r for a conserved case", hi - lo);
    }
    if (sc.r1 || sc.r2) {
        if (!sc.r1 || !sc.r2) throw DomainError(kModule, "r1, r2", "both --r1 and --r2");
        const PohozaevReport rep = identity_residual(ep, orbit, *sc.r1, *sc.r2);
        r["identity"] = {{"r1", rep.r1},           {"r2", rep.r2},
                         {"P_r1", rep.P_r1},       {"P_r2", rep.P_r2},
                         {"bulk", rep.bulk},       {"residual", rep.residual},
                         {"relative_residual", rep.relative_residual}};
        diag["bulk_quadrature_error"] = rep.bulk_error;
        if (sc.verify && rep.relative_residual > 1e-5 && std::fabs(rep.residual) > 1e-8 * scale) {
            verify_failed("Pohozaev identity residual", rep.relative_residual);
        }
    }
    if (sc.asymptotic) {
        AsymptoticOptions opt;
        opt.r_min = sc.r_min;
        if (!std::isinf(orbit.t_min())) opt.r0 = std::min(opt.r0, std::exp(-orbit.t_min()));
        const AsymptoticPohozaev as = asymptotic_pohozaev(ep, orbit, opt);
        json a{{"estimate", as.estimate}, {"rate_expected", as.rate_expected}, {"levels", as.levels},
               {"converged", as.converged}};
        a["rate_observed"] = as.rate_observed ? json(*as.rate_observed) : json(nullptr);
        r["asymptotic"] = a;
    }
    if (sc.trace) {
        std::vector<double> grid;
        for (double x : sc.radii) grid.push_back(x);
        std::sort(grid.begin(), grid.end(), std::greater<>());
        write_samples(sc, ep, sample_orbit(orbit, grid));
    }
    return r;
}

json critical_radii_json(const CriticalRadii& cr) {
    std::size_t below = 0;
    for (const bool b : cr.min_below_eps0) below += b ? 1 : 0;
    return {{"maxima", cr.maxima},     {"minima", cr.minima},
            {"w_at_max", cr.w_at_max}, {"w_at_min", cr.w_at_min},
            {"minima_below_eps0", below}};
}

json cmd_classify(const Scenario& sc, const ProblemParams& p, json& diag) {
    WTrace trace{p, {}, TraceSource::External};
    if (sc.input) {
        trace = w_trace_external(p, read_radial_csv_file(*sc.input));
    } else {
        const ProblemParams limit = p.with_mu(0.0);
        double r_min = sc.r_min;
        std::unique_ptr<Orbit> orbit;
        if (sc.profile == "bubble") {
            orbit = std::make_unique<ClosedFormProfile>(ClosedFormProfile::bubble(limit, sc.lambda));
        } else if (sc.profile == "periodic") {
            const double K = sc.k_levels.empty() ? 0.5 * exponent_table(limit).K_ns : sc.k_levels.front();
            r_min = std::min(r_min, std::exp(-8.0 * period(limit, K)));
            orbit = std::make_unique<ClosedFormProfile>(
                ClosedFormProfile::periodic(limit, K, 0.0, -std::log(r_min) + 1.0, std::min(sc.tol, 1e-12)));
        } else if (sc.profile == "constant") {
            orbit = std::make_unique<ClosedFormProfile>(ClosedFormProfile::limit_constant(limit));
        } else if (sc.profile == "nd") {
            orbit = std::make_unique<ClosedFormProfile>(ClosedFormProfile::nd_power(p));
        } else {
            const MBRadii gen = mb_generate(p, sc.r0, sc.count);
            r_min = std::min(r_min, 1e-3 * gen.radii.back());
            orbit = std::make_unique<BubbleSumOrbit>(p, gen.radii);
        }
        trace = w_trace(p, *orbit, log_grid(1.0, r_min, sc.per_decade), TraceSource::FromClosedForm);
    }
    const ProfileClass pc = classify(p, trace);
    const CriticalRadii cr = critical_radii(trace, convexity_threshold(p));
    json r;
    r["source"] = trace_source_name(trace.source);
    r["samples"] = trace.samples.size();
    r["tag"] = profile_tag_name(pc.tag);
    r["liminf_est"] = pc.liminf_est;
    r["limsup_est"] = pc.limsup_est;
    r["nd_limit_est"] = pc.nd_limit_est ? json(*pc.nd_limit_est) : json(nullptr);
    r["windows_used"] = pc.windows_used;
    r["reason"] = pc.reason;
    r["eps0"] = convexity_threshold(p);
    r["critical_radii"] = critical_radii_json(cr);
    if (pc.tag == ProfileTag::MB && cr.maxima.size() >= 3 && regime_of(p).mb_admissible && p.mu() > 0.0) {
        const MBFit fit = mb_fit(p, cr.maxima, cr.minima);
        r["mb_fit"] = {{"beta_hat", fit.beta_hat},         {"K_hat", fit.K_hat},
                       {"beta_expected", fit.beta_expected}, {"K_expected", fit.K_expected},
                       {"tau_check", fit.tau_check}};
    }
    diag["trace_r_min"] = trace.samples.back().r;
    if (sc.trace) {
        std::vector<PhaseState> states;
        for (auto it = trace.samples.rbegin(); it != trace.samples.rend(); ++it) {
            states.push_back({-std::log(it->r), it->w, std::numeric_limits<double>::quiet_NaN()});
        }
        if (sc.space == Space::EF) {
            std::ostringstream os;
            os << "t,w\n";
            for (const auto& s : states) os << format_double(s.t) << ',' << format_double(s.v) << '\n';
            write_text_file(*sc.trace, os.str());
        } else {
            std::vector<RadialSample> rows;
            const double a = 0.5 * (p.n() - 2.0);
            for (const auto& pt : trace.samples) {
                const double u = pt.w * std::pow(pt.r, -a);
                if (!std::isfinite(u)) break;
                rows.push_back({pt.r, u});
            }
            std::ostringstream os;
            write_radial_csv(os, rows);
            write_text_file(*sc.trace, os.str());
        }
    }
    return r;
}

json cmd_mb(const Scenario& sc, const ProblemParams& p, json& diag) {
    const MBRadii gen = mb_generate(p, sc.r0, sc.count);
    const RecurrenceConstant rc = mb_recurrence_constant(p);
    json r;
    r["radii"] = gen.radii;
    r["underflow"] = gen.underflow;
    r["K"] = rc.K;
    r["K_profile_form"] = rc.K_profile_form;
    r["beta"] = rc.beta;
    if (gen.radii.size() >= 3) {
        const MBFit fit = mb_fit(p, gen.radii);
        r["fit"] = {{"beta_hat", fit.beta_hat}, {"K_hat", fit.K_hat}};
        if (sc.verify) {
            if (std::fabs(fit.beta_hat - rc.beta) > 1e-10) verify_failed("beta round trip", std::fabs(fit.beta_hat - rc.beta));
            if (std::fabs(fit.K_hat - rc.K) > 1e-10 * std::max(1.0, rc.K)) verify_failed("K round trip", std::fabs(fit.K_hat - rc.K));
        }
    }
    json windows = json::array();
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < gen.radii.size(); ++k) {
        const double lam = std::sqrt(gen.radii[k]) * std::sqrt(gen.radii[k + 1]);
        const double full = bubble_sum(p, gen.radii, lam);
        const double two = two_bubble_window(p, gen.radii, lam).value;
        const double rel = std::fabs(two - full) / full;
        worst = std::max(worst, rel);
        windows.push_back({{"k", k}, {"lambda_k", lam}, {"bubble_sum", full}, {"two_bubble", two}, {"relative_gap", rel}});
    }
    r["windows"] = windows;
    diag["worst_window_gap"] = worst;
    if (sc.verify && worst > 0.01) verify_failed("two-bubble window differs from the sum by more than 1%", worst);
    if (sc.trace) {
        const BubbleSumOrbit orbit(p, gen.radii);
        const double r_min = std::min(sc.r_min, 1e-3 * gen.radii.back());
        write_samples(sc, p, sample_orbit(orbit, log_grid(1.0, r_min, sc.per_decade)));
    }
    return r;
}

json cmd_crit(const Scenario& sc, const ProblemParams& p, json& diag) {
    if (!is_critical_sobolev(p)) throw RegimeError(kModule, "crit requires q = 2*-1");
    const CriticalThresholds th = critical_thresholds(p);
    json r;
    r["mu0"] = th.mu0;
    r["mu1_printed"] = th.mu1_printed;
    r["mu1_operational"] = th.mu1_operational;
    r["mu1_consistency"] = th.mu1_consistent ? "OK" : "MISMATCH";
    r["v_bar_limit"] = th.v_bar_limit;
    r["u_const_coeff"] = th.u_const_coeff;
    const double mu = p.mu();
    std::string band;
    if (mu == 0.0) band = "mu = 0";
    else if (std::fabs(mu - th.mu0) <= 1e-12 * th.mu0) band = "mu = mu0";
    else if (mu > th.mu0) band = "mu > mu0";
    else if (mu <= th.mu1_operational) band = "0 < mu <= mu1";
    else band = "mu1 < mu < mu0";
    r["band"] = band;
    if (th.v_minus && th.v_plus) {
        r["v_minus"] = *th.v_minus;
        r["v_plus"] = *th.v_plus;
        r["E_center"] = -crit_potential(p, *th.v_minus).F;
        r["E_separatrix"] = -crit_potential(p, *th.v_plus).F;
    }
    if (sc.v0) {
        const PhaseState s0{sc.t0, *sc.v0, sc.dv0.value_or(0.0)};
        const OrbitClass oc = crit_classify_orbit(p, s0);
        r["orbit"] = {{"tag", orbit_tag_name(oc.tag)},
                      {"energy", oc.energy},
                      {"E_center", oc.E_center},
                      {"E_separatrix", oc.E_separatrix}};
        IntegrationSettings settings;
        settings.tol = sc.tol;
        settings.stride = sc.stride;
        const Trajectory tr = integrate(p, s0, sc.t_end, settings);
        diag["drift"] = tr.drift();
        diag["halt_reason"] = halt_name(tr.halt_reason());
        if (sc.verify) {
            const double scale = std::max(1.0, std::fabs(oc.energy));
            if (tr.drift() > 1e-7 * scale) verify_failed("energy drift above 1e-7", tr.drift());
            if (oc.tag == OrbitTag::Periodic) {
                const double T = first_return_time(p, s0, std::fabs(sc.t_end - sc.t0) + 100.0);
                const PhaseState back = advance(p, s0, sc.t0 + T, std::min(sc.tol, 1e-12));
                r["orbit"]["first_return"] = T;
                if (std::fabs(back.v - s0.v) > 1e-6) verify_failed("periodic orbit does not return", std::fabs(back.v - s0.v));
            }
        }
        write_samples(sc, p, tr.samples());
    }
    return r;
}

} // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Domain:
    case ErrorKind::Regime: return 2;
    case ErrorKind::Io: return 4;
    default: return 3;
    }
}

RunReport error_report(const std::string& error, const std::string& module, const std::string& detail,
                       int exit_code) {
    RunReport rep;
    rep.exit_code = exit_code;
    rep.json = {{"schema", 1}, {"error", error}, {"module", module}, {"detail", detail}, {"exit_code", exit_code}};
    return rep;
}

RunReport run(const Scenario& sc) {
    try {
        const ProblemParams p(sc.n, sc.s, sc.q, sc.mu);
        json diag = json::object();
        json results;
        switch (sc.command) {
        case Command::Constants: results = cmd_constants(sc, p); break;
        case Command::Solve: results = cmd_solve(sc, p, diag); break;
        case Command::Phase: results = cmd_phase(sc, p, diag); break;
        case Command::Pohozaev: results = cmd_pohozaev(sc, p, diag); break;
        case Command::Classify: results = cmd_classify(sc, p, diag); break;
        case Command::Mb: results = cmd_mb(sc, p, diag); break;
        case Command::Crit: results = cmd_crit(sc, p, diag); break;
        }
        RunReport rep;
        rep.json = {{"schema", 1},
                    {"scenario", scenario_json(sc)},
                    {"params", params_json(p)},
                    {"results", results},
                    {"diagnostics", diag},
                    {"exit_code", 0}};
        return rep;
    } catch (const DomainError& e) {
        RunReport rep = error_report(error_name(e.kind()), e.module(), e.what(), exit_code_for(e.kind()));
        json v = json::array();
        for (const auto& x : e.violations()) v.push_back({{"field", x.field}, {"bound", x.bound}});
        rep.json["violations"] = v;
        return rep;
    } catch (const Error& e) {
        return error_report(error_name(e.kind()), e.module(), e.what(), exit_code_for(e.kind()));
    } catch (const std::exception& e) {
        return error_report("InternalError", kModule, e.what(), 3);
    }
}

int emit(const RunReport& report, const Scenario* scenario) {
    const std::string text = to_json_text(report.json);
    if (scenario && scenario->out) {
        try {
            write_text_file(*scenario->out, text);
        } catch (const Error& e) {
            const RunReport io = error_report(error_name(e.kind()), e.module(), e.what(), 4);
            std::cout << to_json_text(io.json);
            return 4;
        }
        return report.exit_code;
    }
    std::cout << text;
    return report.exit_code;
}

} // namespace singprof::cli
