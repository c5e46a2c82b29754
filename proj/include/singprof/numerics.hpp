#ifndef SINGPROF_NUMERICS_HPP
#define SINGPROF_NUMERICS_HPP

// Scalar kernels: bracketing root finder and adaptive Gauss-Kronrod
// quadrature with endpoint-singularity and infinite-tail substitutions.

#include <cstddef>
#include <functional>
#include <limits>

namespace singprof::numerics {

using ScalarFn = std::function<double(double)>;

/// Interval [lo, hi] on which f changes sign. The sign change is checked at
/// construction (NoSignChange otherwise); an exact zero at an end is accepted.
class Bracket {
public:
    Bracket(const ScalarFn& f, double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double f_lo() const noexcept { return f_lo_; }
    double f_hi() const noexcept { return f_hi_; }

private:
    double lo_, hi_, f_lo_, f_hi_;
};

struct RootResult {
    double x;
    double width;            // final bracket width
    std::size_t iterations;
};

/// Brent's method: inverse quadratic / secant steps guarded by bisection, so
/// convergence is guaranteed. Stops once the bracket is narrower than
/// tol + 4·eps·|x|. Throws MaxIterations.
RootResult find_root_ex(const ScalarFn& f, const Bracket& bracket, double tol,
                        std::size_t max_iter = 500);

inline double find_root(const ScalarFn& f, const Bracket& bracket, double tol) {
    return find_root_ex(f, bracket, tol).x;
}

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct QuadSpec {
    double a = 0.0;
    double b = 1.0;            // may be kInfinity
    bool singular_a = false;   // f ~ C/sqrt(x-a)
    bool singular_b = false;   // f ~ C/sqrt(b-x)
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    std::size_t max_panels = 4000;
};

struct QuadResult {
    double value;
    double error;            // sum of per-panel Kronrod-Gauss differences
    std::size_t evaluations;
};

/// Adaptive 7/15-point Gauss-Kronrod: the panel with the largest embedded
/// error estimate is bisected until the total estimate is below
/// max(abs_tol, rel_tol·|I|). Inverse square-root endpoints are removed by
/// x = a + u^2 (resp. b - u^2); an infinite upper limit is split at
/// max(a, 1) and the tail mapped by x -> 1/x. Throws ToleranceNotMet.
QuadResult integrate_adaptive_ex(const ScalarFn& f, const QuadSpec& spec);

inline double integrate_adaptive(const ScalarFn& f, const QuadSpec& spec) {
    return integrate_adaptive_ex(f, spec).value;
}

/// One 15-point Kronrod evaluation on [a, b] with its 7-point Gauss companion.
struct KronrodPanel {
    double a, b;
    double kronrod;
    double gauss;
};

KronrodPanel gauss_kronrod_15(const ScalarFn& f, double a, double b);

} // namespace singprof::numerics

#endif // SINGPROF_NUMERICS_HPP
