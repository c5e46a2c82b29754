#include "singprof/numerics.hpp"

#include "singprof/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

namespace singprof {

const char* error_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Regime: return "RegimeError";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::RootNotBracketed: return "RootNotBracketed";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::OutOfSpan: return "OutOfSpan";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::Underflow: return "Underflow";
    case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.field + " violates " + v.bound;
    }
    return out;
}

} // namespace

DomainError::DomainError(std::string module, std::vector<Violation> violations)
    : Error(ErrorKind::Domain, std::move(module), join_violations(violations)),
      violations_(std::move(violations)) {}

namespace numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

bool same_sign_strict(double a, double b) {
    return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0);
}

} // namespace

Bracket::Bracket(const ScalarFn& f, double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo < hi)) {
        throw Error(ErrorKind::NoSignChange, "numerics",
                    "bracket requires lo < hi");
    }
    f_lo_ = f(lo);
    f_hi_ = f(hi);
    if (!std::isfinite(f_lo_) || !std::isfinite(f_hi_) || same_sign_strict(f_lo_, f_hi_)) {
        throw Error(ErrorKind::NoSignChange, "numerics",
                    "no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

RootResult find_root_ex(const ScalarFn& f, const Bracket& bracket, double tol,
                        std::size_t max_iter) {
    if (!(tol > 0.0)) {
        throw DomainError("numerics", "tol", "tol > 0");
    }
    double a = bracket.lo(), b = bracket.hi();
    double fa = bracket.f_lo(), fb = bracket.f_hi();
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};

    // Brent (1973), zeroin. b is the best estimate, c the counterpoint.
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        if (same_sign_strict(fb, fc)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * kEps * std::fabs(b) + 0.5 * tol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol1 || fb == 0.0) {
            return {b, std::fabs(c - b), iter};
        }
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (m > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if (!std::isfinite(fb)) {
            throw Error(ErrorKind::NotConverged, "numerics", "non-finite function value in root search");
        }
    }
    throw Error(ErrorKind::MaxIterations, "numerics",
                "root finder exceeded " + std::to_string(max_iter) + " iterations");
}

KronrodPanel gauss_kronrod_15(const ScalarFn& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kron = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kron += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    return {a, b, kron * half, gauss * half};
}

namespace {

struct Panel {
    KronrodPanel rule;
    double error() const { return std::fabs(rule.kronrod - rule.gauss); }
    bool operator<(const Panel& other) const { return error() < other.error(); }
};

struct Accumulated {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

// Adaptive driver on a finite interval with a smooth (already transformed) integrand.
Accumulated adapt(const ScalarFn& g, double a, double b, double abs_tol, double rel_tol,
                  std::size_t max_panels) {
    std::priority_queue<Panel> heap;
    heap.push(Panel{gauss_kronrod_15(g, a, b)});
    Accumulated acc;
    acc.evaluations = 15;
    double value = heap.top().rule.kronrod;
    double error = heap.top().error();
    while (error > std::max(abs_tol, rel_tol * std::fabs(value))) {
        if (heap.size() >= max_panels) {
            throw ToleranceNotMet("numerics",
                                  "quadrature panel budget exhausted; achieved error " +
                                      std::to_string(error),
                                  error);
        }
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.rule.a + worst.rule.b);
        if (!(mid > worst.rule.a && mid < worst.rule.b)) {
            throw ToleranceNotMet("numerics",
                                  "quadrature panel cannot be bisected further; achieved error " +
                                      std::to_string(error),
                                  error);
        }
        const Panel left{gauss_kronrod_15(g, worst.rule.a, mid)};
        const Panel right{gauss_kronrod_15(g, mid, worst.rule.b)};
        acc.evaluations += 30;
        value += left.rule.kronrod + right.rule.kronrod - worst.rule.kronrod;
        error += left.error() + right.error() - worst.error();
        heap.push(left);
        heap.push(right);
        if (!std::isfinite(value)) {
            throw ToleranceNotMet("numerics", "non-finite quadrature value", error);
        }
    }
    // Re-sum to shed the running-update rounding.
    value = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        value += heap.top().rule.kronrod;
        error += heap.top().error();
        heap.pop();
    }
    acc.value = value;
    acc.error = error;
    return acc;
}

// Finite [a, b] with optional inverse-sqrt ends.
Accumulated integrate_finite(const ScalarFn& f, double a, double b, bool sing_a, bool sing_b,
                             double abs_tol, double rel_tol, std::size_t max_panels) {
    if (sing_a && sing_b) {
        const double mid = 0.5 * (a + b);
        Accumulated left = integrate_finite(f, a, mid, true, false, 0.5 * abs_tol, rel_tol, max_panels);
        Accumulated right = integrate_finite(f, mid, b, false, true, 0.5 * abs_tol, rel_tol, max_panels);
        return {left.value + right.value, left.error + right.error,
                left.evaluations + right.evaluations};
    }
    if (sing_a) {
        auto g = [&](double u) { return 2.0 * u * f(a + u * u); };
        return adapt(g, 0.0, std::sqrt(b - a), abs_tol, rel_tol, max_panels);
    }
    if (sing_b) {
        auto g = [&](double u) { return 2.0 * u * f(b - u * u); };
        return adapt(g, 0.0, std::sqrt(b - a), abs_tol, rel_tol, max_panels);
    }
    return adapt(f, a, b, abs_tol, rel_tol, max_panels);
}

} // namespace

QuadResult integrate_adaptive_ex(const ScalarFn& f, const QuadSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
        throw DomainError("numerics", "tolerance", "abs_tol > 0 and rel_tol > 0");
    }
    if (!(spec.a < spec.b) || std::isinf(spec.a)) {
        throw DomainError("numerics", "interval", "finite a < b");
    }
    if (!std::isinf(spec.b)) {
        const Accumulated r = integrate_finite(f, spec.a, spec.b, spec.singular_a, spec.singular_b,
                                               spec.abs_tol, spec.rel_tol, spec.max_panels);
        return {r.value, r.error, r.evaluations};
    }
    if (spec.singular_b) {
        throw DomainError("numerics", "singular_b", "finite upper limit");
    }
    auto tail = [&](double u) {
        if (u == 0.0) return 0.0;
        return f(1.0 / u) / (u * u);
    };
    Accumulated head{};
    double split = 1.0;
    if (spec.a < 1.0) {
        head = integrate_finite(f, spec.a, 1.0, spec.singular_a, false, 0.5 * spec.abs_tol,
                                spec.rel_tol, spec.max_panels);
    } else {
        split = spec.a;
        if (spec.singular_a) {
            // x = a + w^2 first, then the tail of w.
            auto g = [&](double w) { return 2.0 * w * f(spec.a + w * w); };
            auto g_tail = [&](double u) {
                if (u == 0.0) return 0.0;
                return g(1.0 / u) / (u * u);
            };
            Accumulated near = adapt(g, 0.0, 1.0, 0.5 * spec.abs_tol, spec.rel_tol, spec.max_panels);
            Accumulated far = adapt(g_tail, 0.0, 1.0, 0.5 * spec.abs_tol, spec.rel_tol, spec.max_panels);
            return {near.value + far.value, near.error + far.error,
                    near.evaluations + far.evaluations};
        }
    }
    const Accumulated far = adapt(tail, 0.0, 1.0 / split, 0.5 * spec.abs_tol, spec.rel_tol,
                                  spec.max_panels);
    return {head.value + far.value, head.error + far.error, head.evaluations + far.evaluations};
}

} // namespace numerics
} // namespace singprof
