#ifndef SINGPROF_PARAMS_HPP
#define SINGPROF_PARAMS_HPP

// Problem parameters for  -Δu = |x|^{-s} u^{2*(s)-1} - μ u^q  and every
// closed-form exponent, constant and threshold attached to them.

#include <string>

namespace singprof {

/// The quadruple (n, s, q, μ). Construction validates every bound and throws
/// DomainError listing all violations; values are never clamped.
class ProblemParams {
public:
    ProblemParams(int n, double s, double q, double mu);

    int n() const noexcept { return n_; }
    double s() const noexcept { return s_; }
    double q() const noexcept { return q_; }
    double mu() const noexcept { return mu_; }

    /// Same (n, s, q) with a different μ.
    ProblemParams with_mu(double mu) const { return ProblemParams(n_, s_, q_, mu); }
    /// Same (n, s, μ) with a different q.
    ProblemParams with_q(double q) const { return ProblemParams(n_, s_, q, mu_); }

    friend bool operator==(const ProblemParams&, const ProblemParams&) = default;

private:
    int n_;
    double s_;
    double q_;
    double mu_;
};

ProblemParams validate_params(int n, double s, double q, double mu);

struct ExponentTable {
    double two_star_s;   // 2(n-s)/(n-2)
    double two_star;     // 2n/(n-2)
    double p;            // a priori blow-up exponent, three-branch
    double c_ns;         // bubble height c_{n,s}
    double K_ns;         // Hamiltonian level of the constant orbit
    double gamma;        // decay rate of the perturbation in Emden-Fowler time
    double omega;        // |S^{n-1}|
    double half_n_minus_2;  // (n-2)/2
    double linear_coeff;    // (n-2)^2/4
    double v_bar;           // constant solution of the unperturbed Emden-Fowler ODE
};

ExponentTable exponent_table(const ProblemParams& params);

enum class RegimeTag {
    Subcritical_q_le_HS,          // q <= 2*(s)-1
    Intermediate_HS_lt_q_lt_Sob,  // 2*(s)-1 < q < 2*-1
    CriticalSobolev,              // q == 2*-1
    Supercritical,                // q > 2*-1
};

const char* regime_name(RegimeTag tag);

struct Regime {
    RegimeTag tag;
    bool mb_admissible;  // 2*-2 < q < 2*-1
    bool nd_admissible;  // 2*(s)-1 < q < 2*-1
};

/// Cut points in q, each correctly rounded to double. Comparisons against q
/// are exact, with ties going to the closed branch.
struct CutPoints {
    double hardy_sobolev_minus_1;  // 2*(s)-1
    double sobolev_minus_2;        // 2*-2
    double sobolev_minus_1;        // 2*-1
};

CutPoints cut_points(int n, double s);

Regime regime_of(const ProblemParams& params);

bool is_critical_sobolev(const ProblemParams& params);

/// Threshold μ0(n,s) of the critical case q = 2*-1.
double mu_zero(const ProblemParams& params);

struct MuOne {
    double printed;      // the closed-form expression, evaluated as stated
    double operational;  // μ at which F(v+) = F'(v+) = 0
    double saddle_v;     // the v+ solving that system
    bool consistent;     // printed and operational agree to 1e-6 relative
};

/// Threshold μ1(n,s) between "only periodic" and "periodic or heteroclinic"
/// radial solutions at q = 2*-1. Throws RootNotBracketed if the operational
/// solve cannot bracket its root.
MuOne mu_one(const ProblemParams& params);

struct RecurrenceConstant {
    double K;                // via ∫ U_1^{q+1} dx
    double K_profile_form;   // via c_{n,s}^{q-1} ∫ (1+|x|^{2-s})^{-(q+1)(n-2)/(2-s)} dx
    double beta;             // 1/(q-(2*-2))
    double radial_integral;  // ∫_0^∞ r^{n-1}(1+r^{2-s})^{-(q+1)(n-2)/(2-s)} dr
};

/// Constant of the multi-bump recurrence r_{k+1} = K r_k^beta.
/// RegimeError unless 2*-2 < q < 2*-1.
RecurrenceConstant mb_recurrence_constant(const ProblemParams& params);

struct NDProfile {
    double p_nd;   // s/(q-(2*(s)-1))
    double coeff;  // μ^{-1/(q-(2*(s)-1))}

    double operator()(double r) const;
};

/// Power profile balancing the two nonlinear terms. RegimeError outside
/// 2*(s)-1 < q < 2*-1, DomainError when μ = 0.
NDProfile nd_profile(const ProblemParams& params);

std::string describe(const ProblemParams& params);

} // namespace singprof

#endif // SINGPROF_PARAMS_HPP
