#include "singprof/classifier.hpp"

#include "singprof/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace singprof {

namespace {

constexpr const char* kModule = "classifier";

struct Extremum {
    bool is_max;
    double r;
    double w;
};

// Vertex of the parabola through three (x, w) points, kept inside their span.
Extremum refine(const std::vector<TracePoint>& s, std::size_t j, bool is_max) {
    const double x0 = std::log(s[j - 1].r), x1 = std::log(s[j].r), x2 = std::log(s[j + 1].r);
    const double w0 = s[j - 1].w, w1 = s[j].w, w2 = s[j + 1].w;
    const double f01 = (w1 - w0) / (x1 - x0);
    const double f12 = (w2 - w1) / (x2 - x1);
    const double f012 = (f12 - f01) / (x2 - x0);
    if (f012 == 0.0 || !std::isfinite(f012)) return {is_max, s[j].r, w1};
    double x = 0.5 * (x0 + x1) - f01 / (2.0 * f012);
    x = std::clamp(x, std::min(x0, x2), std::max(x0, x2));
    const double w = w0 + f01 * (x - x0) + f012 * (x - x0) * (x - x1);
    // A refined value on the wrong side of the sample means the fit is not trustworthy.
    if ((is_max && w < w1) || (!is_max && w > w1)) return {is_max, s[j].r, w1};
    return {is_max, std::exp(x), w};
}

int slope_sign(double a, double b) {
    const double d = b - a;
    if (std::fabs(d) <= 1e-12 * std::max(std::fabs(a), std::fabs(b))) return 0;
    return d > 0.0 ? 1 : -1;
}

} // namespace

const char* trace_source_name(TraceSource source) {
    switch (source) {
    case TraceSource::FromTrajectory: return "FromTrajectory";
    case TraceSource::FromClosedForm: return "FromClosedForm";
    case TraceSource::External: return "External";
    }
    return "?";
}

const char* profile_tag_name(ProfileTag tag) {
    switch (tag) {
    case ProfileTag::Removable: return "Removable";
    case ProfileTag::CGS: return "CGS";
    case ProfileTag::MB: return "MB";
    case ProfileTag::ND: return "ND";
    case ProfileTag::Undetermined: return "Undetermined";
    }
    return "?";
}

std::vector<double> log_grid(double r_max, double r_min, std::size_t per_decade) {
    if (!(r_min > 0.0 && r_min < r_max)) throw DomainError(kModule, "grid", "0 < r_min < r_max");
    if (per_decade == 0) throw DomainError(kModule, "per_decade", "per_decade >= 1");
    const double span = std::log10(r_max / r_min);
    const auto steps = static_cast<std::size_t>(std::ceil(span * static_cast<double>(per_decade)));
    std::vector<double> grid;
    grid.reserve(steps + 1);
    const double lmax = std::log(r_max);
    const double lmin = std::log(r_min);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(steps);
        grid.push_back(std::exp(lmax + (lmin - lmax) * frac));
    }
    grid.front() = r_max;
    grid.back() = r_min;
    return grid;
}

WTrace w_trace(const ProblemParams& params, const Orbit& orbit, const std::vector<double>& r_grid,
               TraceSource source) {
    WTrace trace{params, {}, source};
    trace.samples.reserve(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double r = r_grid[i];
        if (!(r > 0.0)) throw DomainError(kModule, "r", "r > 0");
        if (i > 0 && !(r < r_grid[i - 1])) throw DomainError(kModule, "r_grid", "strictly decreasing");
        trace.samples.push_back({r, std::max(orbit.state_at(-std::log(r)).v, 0.0)});
    }
    return trace;
}

WTrace w_trace_external(const ProblemParams& params, const std::vector<RadialSample>& data) {
    const double a = 0.5 * (params.n() - 2.0);
    WTrace trace{params, {}, TraceSource::External};
    trace.samples.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const RadialSample& d = data[i];
        if (!(d.r > 0.0)) throw DomainError(kModule, "r", "r > 0");
        if (!(d.u >= 0.0)) throw DomainError(kModule, "u", "u >= 0");
        if (i > 0 && !(d.r < data[i - 1].r)) throw DomainError(kModule, "r", "strictly decreasing");
        trace.samples.push_back({d.r, std::pow(d.r, a) * d.u});
    }
    return trace;
}

double convexity_threshold(const ProblemParams& params) {
    const ExponentTable t = exponent_table(params);
    return std::pow(0.5 * t.linear_coeff, 1.0 / (t.two_star_s - 2.0));
}

CriticalRadii critical_radii(const WTrace& trace, double eps0) {
    const auto& s = trace.samples;
    if (s.size() < 3) {
        throw Error(ErrorKind::TooFewSamples, kModule,
                    "critical radii need at least 3 samples, got " + std::to_string(s.size()));
    }
    std::vector<Extremum> found;
    int last_sign = 0;
    std::size_t run_start = 0;  // first sample of the flat run since the last nonzero slope
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const int sign = slope_sign(s[i].w, s[i + 1].w);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) {
            const bool is_max = last_sign > 0;
            if (run_start == i && i > 0) {
                found.push_back(refine(s, i, is_max));
            } else {
                const std::size_t mid = (run_start + i) / 2;
                found.push_back({is_max, s[mid].r, s[mid].w});
            }
        }
        last_sign = sign;
        run_start = i + 1;
    }

    CriticalRadii out;
    std::size_t first_max = found.size(), last_max = 0;
    for (std::size_t i = 0; i < found.size(); ++i) {
        if (found[i].is_max) {
            first_max = std::min(first_max, i);
            last_max = i;
        }
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
        const Extremum& e = found[i];
        if (e.is_max) {
            out.maxima.push_back(e.r);
            out.w_at_max.push_back(e.w);
        } else if (i > first_max && i < last_max) {
            out.minima.push_back(e.r);
            out.w_at_min.push_back(e.w);
            out.min_below_eps0.push_back(e.w < eps0);
        }
    }
    return out;
}

ProfileClass classify(const ProblemParams& params, const WTrace& trace,
                      const ClassifyOptions& options) {
    const auto& s = trace.samples;
    if (s.size() < 3) {
        throw Error(ErrorKind::TooFewSamples, kModule,
                    "classification needs at least 3 samples, got " + std::to_string(s.size()));
    }
    if (s.back().r > options.r_tail) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "trace stops at r=%.6g, above r_tail=%.6g", s.back().r,
                      options.r_tail);
        throw Error(ErrorKind::TooFewSamples, kModule, buf);
    }
    const ExponentTable t = exponent_table(params);
    const double a = t.half_n_minus_2;
    const double w_last = s.back().w;
    double w_max = 0.0;
    for (const auto& p : s) w_max = std::max(w_max, p.w);
    const std::size_t tail_start = s.size() - std::max<std::size_t>(2, s.size() / 10);
    const double w_tail_start = s[tail_start].w;

    ProfileClass out{};
    out.tag = ProfileTag::Undetermined;

    if (w_last > 10.0 * t.v_bar && w_last > w_tail_start) {
        const double inf = std::numeric_limits<double>::infinity();
        out.liminf_est = inf;
        out.limsup_est = inf;
        const Regime regime = regime_of(params);
        if (!regime.nd_admissible || !(params.mu() > 0.0)) {
            out.reason = "w diverges but (n, s, q, mu) is outside the ND band";
            return out;
        }
        const NDProfile nd = nd_profile(params);
        const double est = std::pow(s.back().r, nd.p_nd - a) * w_last;
        out.nd_limit_est = est;
        if (std::fabs(est - nd.coeff) <= options.nd_tol * nd.coeff) {
            out.tag = ProfileTag::ND;
            out.reason = "r^p_nd u approaches mu^(-1/(q-2*(s)+1))";
        } else {
            out.reason = "w diverges but r^p_nd u misses the ND constant";
        }
        return out;
    }

    const CriticalRadii cr = critical_radii(trace, convexity_threshold(params));
    const std::size_t need = options.windows + 1;
    if (cr.minima.size() < need) {
        out.liminf_est = w_last;
        out.limsup_est = w_last;
        bool tail_decreasing = true;
        for (std::size_t i = tail_start; i + 1 < s.size(); ++i) {
            if (s[i + 1].w > s[i].w) tail_decreasing = false;
        }
        double tail_lo = w_last, tail_hi = w_last;
        for (std::size_t i = tail_start; i < s.size(); ++i) {
            tail_lo = std::min(tail_lo, s[i].w);
            tail_hi = std::max(tail_hi, s[i].w);
        }
        if (w_last <= options.vanish_ratio * w_max && tail_decreasing) {
            out.tag = ProfileTag::Removable;
            out.reason = "w decays monotonically to 0";
        } else if (cr.maxima.empty() && w_last > options.vanish_ratio * t.v_bar &&
                   tail_hi - tail_lo <= options.stability * tail_hi) {
            out.tag = ProfileTag::CGS;
            out.reason = "w settles at a positive constant";
        } else {
            out.reason = "fewer than " + std::to_string(options.windows) +
                         " completed oscillation windows";
        }
        return out;
    }

    // Minimum i sits between maxima i and i+1, so the window between minima
    // i and i+1 holds maximum i+1.
    const std::size_t first = cr.minima.size() - need;
    std::vector<double> mins(cr.w_at_min.begin() + static_cast<std::ptrdiff_t>(first),
                             cr.w_at_min.end());
    std::vector<double> maxs;
    for (std::size_t i = first; i + 1 < cr.minima.size(); ++i) maxs.push_back(cr.w_at_max[i + 1]);
    out.windows_used = maxs.size();

    const auto [max_lo, max_hi] = std::minmax_element(maxs.begin(), maxs.end());
    const auto [min_lo, min_hi] = std::minmax_element(mins.begin(), mins.end());
    out.limsup_est = maxs.back();
    out.liminf_est = mins.back();
    if (*max_hi - *max_lo > options.stability * *max_hi) {
        out.reason = "window maxima are not stable";
        return out;
    }
    bool decreasing = true;
    for (std::size_t i = 0; i + 1 < mins.size(); ++i) {
        if (!(mins[i + 1] < mins[i])) decreasing = false;
    }
    if (mins.back() < options.vanish_ratio * maxs.back() && decreasing) {
        out.tag = ProfileTag::MB;
        out.reason = "minima decay to 0 under stable maxima";
    } else if (*min_hi - *min_lo <= options.stability * *min_hi &&
               *min_lo > options.vanish_ratio * *max_hi) {
        out.tag = ProfileTag::CGS;
        out.reason = "stable positive oscillation band";
    } else {
        out.reason = "window minima neither stable nor vanishing";
    }
    return out;
}

MBRadii mb_generate(const ProblemParams& params, double r0, std::size_t count) {
    if (!(r0 > 0.0 && r0 < 1.0)) throw DomainError(kModule, "r0", "0 < r0 < 1");
    if (count < 2) throw DomainError(kModule, "count", "count >= 2");
    const RecurrenceConstant rc = mb_recurrence_constant(params);
    MBRadii out{{r0}, false};
    while (out.radii.size() < count) {
        const double next = rc.K * std::pow(out.radii.back(), rc.beta);
        if (!(next >= 1e-300)) {
            out.underflow = true;
            break;
        }
        out.radii.push_back(next);
    }
    return out;
}

MBFit mb_fit(const ProblemParams& params, const std::vector<double>& radii,
             const std::vector<double>& minima) {
    if (radii.size() < 3) {
        throw Error(ErrorKind::TooFewSamples, kModule,
                    "recurrence fit needs at least 3 radii, got " + std::to_string(radii.size()));
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw DomainError(kModule, "radii", "r_k > 0");
        if (i > 0 && !(radii[i] < radii[i - 1])) throw DomainError(kModule, "radii", "strictly decreasing");
    }
    if (!minima.empty() && minima.size() + 1 != radii.size()) {
        throw DomainError(kModule, "minima", "one minimum between each pair of radii");
    }
    const RecurrenceConstant rc = mb_recurrence_constant(params);

    const std::size_t m = radii.size() - 1;
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        mx += std::log(radii[k]);
        my += std::log(radii[k + 1]);
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double dx = std::log(radii[k]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(radii[k + 1]) - my);
    }
    MBFit out{};
    out.beta_hat = sxy / sxx;
    out.K_hat = std::exp(my - out.beta_hat * mx);
    out.beta_expected = rc.beta;
    out.K_expected = rc.K;
    for (std::size_t k = 0; k < minima.size(); ++k) {
        out.tau_check.push_back(minima[k] / (std::sqrt(radii[k]) * std::sqrt(radii[k + 1])));
    }
    return out;
}

double bubble_sum(const ProblemParams& params, const std::vector<double>& radii, double r) {
    double sum = 0.0;
    for (const double lambda : radii) {
        const double term = bubble_profile(params, lambda, r);
        sum += term;
        if (lambda < r && term < 1e-16 * sum) break;
    }
    return sum;
}

TwoBubbleWindow two_bubble_window(const ProblemParams& params, const std::vector<double>& radii,
                                  double r) {
    if (radii.size() < 2) throw DomainError(kModule, "radii", "at least two radii");
    for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
        if (radii[k + 1] <= r && r <= radii[k]) {
            return {k, bubble_profile(params, radii[k + 1], r) + bubble_profile(params, radii[k], r)};
        }
    }
    throw DomainError(kModule, "r", "r between the smallest and largest radius");
}

BubbleSumOrbit::BubbleSumOrbit(ProblemParams params, std::vector<double> radii)
    : params_(params), radii_(std::move(radii)) {
    if (radii_.empty()) throw DomainError(kModule, "radii", "at least one radius");
    for (const double r : radii_) {
        if (!(r > 0.0)) throw DomainError(kModule, "radii", "r_k > 0");
        centers_.push_back(-std::log(r));
    }
}

PhaseState BubbleSumOrbit::state_at(double t) const {
    PhaseState out{t, 0.0, 0.0};
    for (const double c : centers_) {
        const PhaseState h = homoclinic_state(params_, t - c);
        out.v += h.v;
        out.dv += h.dv;
    }
    return out;
}

double BubbleSumOrbit::t_min() const { return -std::numeric_limits<double>::infinity(); }
double BubbleSumOrbit::t_max() const { return std::numeric_limits<double>::infinity(); }

} // namespace singprof
