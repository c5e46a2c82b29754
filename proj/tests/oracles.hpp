#ifndef SINGPROF_TESTS_ORACLES_HPP
#define SINGPROF_TESTS_ORACLES_HPP

// Deliberately simple reference computations. None of these share code with
// the library: plain bisection, golden-section search, fixed-step RK4 and
// finite differences.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    for (int i = 0; i < 400 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Minimum of a unimodal function on [a, b].
inline std::pair<double, double> golden_min(const std::function<double(double)>& f, double a, double b,
                                            int iters = 200) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

// μ at which min_{v>0} g(v) = c + μ v^{2*-2} - v^{2*(s)-2} reaches zero.
inline double mu_zero_brute_force(int n, double s) {
    const double c = 0.25 * (n - 2.0) * (n - 2.0);
    const double a = 4.0 / (n - 2.0);
    const double b = 2.0 * (2.0 - s) / (n - 2.0);
    auto min_g = [&](double mu) {
        // search in ln v, where g is unimodal
        auto h = [&](double x) {
            const double v = std::exp(x);
            return c + mu * std::pow(v, a) - std::pow(v, b);
        };
        return golden_min(h, -30.0, 30.0).second;
    };
    return bisect(min_g, 1e-8, 100.0, 1e-15);
}

struct Rk4State {
    long double x;
    long double y;
    long double dy;
};

// One classical RK4 step for y'' = acc(x, y, y').
template <class Acc>
Rk4State rk4_step(const Acc& acc, const Rk4State& s, long double h) {
    const long double k1y = s.dy, k1d = acc(s.x, s.y, s.dy);
    const long double k2y = s.dy + h / 2 * k1d, k2d = acc(s.x + h / 2, s.y + h / 2 * k1y, s.dy + h / 2 * k1d);
    const long double k3y = s.dy + h / 2 * k2d, k3d = acc(s.x + h / 2, s.y + h / 2 * k2y, s.dy + h / 2 * k2d);
    const long double k4y = s.dy + h * k3d, k4d = acc(s.x + h, s.y + h * k3y, s.dy + h * k3d);
    return {s.x + h, s.y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y),
            s.dy + h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d)};
}

template <class Acc>
Rk4State rk4_integrate(const Acc& acc, Rk4State s, long double x_end, long double h) {
    const long double span = x_end - s.x;
    const long long steps = static_cast<long long>(std::ceil(std::fabs(span) / h));
    const long double step = span / steps;
    for (long long i = 0; i < steps; ++i) s = rk4_step(acc, s, step);
    return s;
}

// Radial form of -Δu = r^{-s} u^{2*(s)-1} - μ u^q in the variable r.
struct RadialEquation {
    int n;
    double s;
    double q;
    double mu;
    long double operator()(long double r, long double u, long double du) const {
        const long double p = 2.0L * (n - s) / (n - 2.0L);
        const long double up = u > 0 ? u : 0;
        return -(n - 1.0L) / r * du - std::pow(r, -(long double)s) * std::pow(up, p - 1) +
               mu * std::pow(up, (long double)q);
    }
};

// First return to the section dv = 0 (from below) of v'' = acc(t, v) started
// at a minimum (v0, 0), by fixed-step RK4 and bisection of the last step.
template <class Acc>
double first_return_rk4(const Acc& acc, double v0, double h = 1e-3, double t_max = 1e3) {
    auto field = [&](long double t, long double v, long double) { return acc(t, v); };
    Rk4State s{0, v0, 0};
    bool went_negative = false;
    while (s.x < t_max) {
        const Rk4State next = rk4_step(field, s, h);
        if (next.dy < 0) went_negative = true;
        if (went_negative && next.dy >= 0) {
            long double lo = 0, hi = h;
            for (int i = 0; i < 80; ++i) {
                const long double mid = 0.5L * (lo + hi);
                if (rk4_step(field, s, mid).dy < 0) lo = mid; else hi = mid;
            }
            return static_cast<double>(s.x + 0.5L * (lo + hi));
        }
        s = next;
    }
    return NAN;
}

// Five-point central second derivative.
inline double second_derivative(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

inline double first_derivative(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// Fixed-seed generator for hand-rolled property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

private:
    std::mt19937_64 rng_;
};

} // namespace oracle

#endif // SINGPROF_TESTS_ORACLES_HPP
