#ifndef SINGPROF_CLASSIFIER_HPP
#define SINGPROF_CLASSIFIER_HPP

#include "singprof/dynamics.hpp"
#include "singprof/params.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace singprof {

enum class TraceSource { FromTrajectory, FromClosedForm, External };

const char* trace_source_name(TraceSource source);

struct TracePoint {
    double r;
    double w;  // r^{(n-2)/2} u(r)
};

struct WTrace {
    ProblemParams params;
    std::vector<TracePoint> samples;  // r strictly decreasing
    TraceSource source;
};

/// Geometric grid from r_max down to r_min (both included), per_decade points per factor 10.
std::vector<double> log_grid(double r_max, double r_min, std::size_t per_decade);

/// w(r) = v(-ln r) along the orbit. The grid must be strictly decreasing.
WTrace w_trace(const ProblemParams& params, const Orbit& orbit, const std::vector<double>& r_grid,
               TraceSource source = TraceSource::FromTrajectory);

struct RadialSample {
    double r;
    double u;
};

/// External (r, u) data. DomainError unless r is strictly decreasing, r > 0, u >= 0.
WTrace w_trace_external(const ProblemParams& params, const std::vector<RadialSample>& data);

/// ε0 = ((n-2)^2/8)^{1/(2*(s)-2)} (radial traces, Harnack constant 1).
double convexity_threshold(const ProblemParams& params);

struct CriticalRadii {
    std::vector<double> maxima;  // r_k, decreasing
    std::vector<double> minima;  // τ_k, each strictly between two consecutive maxima
    std::vector<double> w_at_max;
    std::vector<double> w_at_min;
    std::vector<bool> min_below_eps0;
};

/// Local extrema of w from sign changes of the discrete slope, refined by a
/// quadratic in ln r. TooFewSamples below three samples.
CriticalRadii critical_radii(const WTrace& trace, double eps0);

enum class ProfileTag { Removable, CGS, MB, ND, Undetermined };

const char* profile_tag_name(ProfileTag tag);

struct ClassifyOptions {
    double r_tail = 1e-6;           // trace must reach r <= r_tail
    std::size_t windows = 5;        // completed oscillation windows used
    double stability = 0.1;         // relative spread allowed between windows
    double vanish_ratio = 1e-3;     // w/max(w) below this counts as 0
    double nd_tol = 1e-6;           // relative tolerance on r^{p_nd} u -> μ^{-1/(q-2*(s)+1)}
};

struct ProfileClass {
    ProfileTag tag;
    double liminf_est;
    double limsup_est;
    std::optional<double> nd_limit_est;
    std::size_t windows_used;
    std::string reason;
};

ProfileClass classify(const ProblemParams& params, const WTrace& trace,
                      const ClassifyOptions& options = {});

struct MBRadii {
    std::vector<double> radii;
    bool underflow;  // stopped early because the next radius fell below 1e-300
};

/// r_{k+1} = K r_k^{1/(q-(2*-2))} from r0. RegimeError outside the band,
/// DomainError unless 0 < r0 < 1 and count >= 2.
MBRadii mb_generate(const ProblemParams& params, double r0, std::size_t count);

struct MBFit {
    double beta_hat;
    double K_hat;
    double beta_expected;
    double K_expected;
    std::vector<double> tau_check;  // τ_{k+1}/sqrt(r_k r_{k+1})
};

/// Least squares of ln r_{k+1} = β ln r_k + ln K. TooFewSamples below three radii.
MBFit mb_fit(const ProblemParams& params, const std::vector<double>& radii,
             const std::vector<double>& minima = {});

/// Σ_k U_{r_k}(r), truncated once past the peak and a term drops below 1e-16 of the sum.
double bubble_sum(const ProblemParams& params, const std::vector<double>& radii, double r);

struct TwoBubbleWindow {
    std::size_t k;  // r_{k+1} <= r <= r_k
    double value;   // U_{r_{k+1}}(r) + U_{r_k}(r)
};

TwoBubbleWindow two_bubble_window(const ProblemParams& params, const std::vector<double>& radii,
                                  double r);

/// The bubble sum as an Emden-Fowler orbit: v(t) = Σ_k v_0(t + ln r_k).
class BubbleSumOrbit : public Orbit {
public:
    BubbleSumOrbit(ProblemParams params, std::vector<double> radii);

    PhaseState state_at(double t) const override;
    double t_min() const override;
    double t_max() const override;

    const std::vector<double>& radii() const noexcept { return radii_; }

private:
    ProblemParams params_;
    std::vector<double> radii_;
    std::vector<double> centers_;  // -ln r_k
};

} // namespace singprof

#endif // SINGPROF_CLASSIFIER_HPP
