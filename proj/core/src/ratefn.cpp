#include "asianvol/ratefn.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "asianvol/errors.hpp"

namespace asianvol::ratefn {
namespace {

constexpr double kSmallArg = 1e-4;

// Five-term expansion of J about log k = 0, used by rate_function below the
// switch; the last two coefficients extend the published truncation.
double series_extended(double l) noexcept {
    const double l2 = l * l;
    return l2 * (1.5 + l * (-0.3 + l * (109.0 / 1400.0 + l * (-117.0 / 7000.0 + l * (47749.0 / 16170000.0)))));
}

// d/db [sinh(b)/b]
double sinhc_prime(double b) noexcept {
    if (std::abs(b) < kSmallArg) {
        return b / 3.0 + b * b * b / 30.0;
    }
    return (b * std::cosh(b) - std::sinh(b)) / (b * b);
}

// d/dx [sin(2x)/(2x)]
double sinc2_prime(double x) noexcept {
    const double y = 2.0 * x;
    if (std::abs(y) < kSmallArg) {
        return 2.0 * (-y / 3.0 + y * y * y / 30.0);
    }
    return 2.0 * (y * std::cos(y) - std::sin(y)) / (y * y);
}

// Safeguarded Newton on an increasing residual f over [lo, hi] with f(lo) <= 0 <= f(hi).
// Falls back to bisection whenever the Newton step leaves the bracket.
template <class F, class DF>
double bracketed_newton(F f, DF df, double lo, double hi, double x0, const char* name) {
    double x = x0;
    for (int it = 0; it < kMaxIterations; ++it) {
        const double fx = f(x);
        if (fx == 0.0) {
            return x;
        }
        if (fx < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double d = df(x);
        double next = (d > 0.0) ? x - fx / d : lo - 1.0;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const bool converged = std::abs(fx) <= kRootTolerance && std::abs(next - x) <= 4e-16 * (1.0 + std::abs(x));
        const bool collapsed = next <= lo || next >= hi || hi - lo <= 2e-16 * (1.0 + std::abs(x));
        if (converged || collapsed) {
            return std::abs(f(next)) < std::abs(fx) ? next : x;
        }
        x = next;
    }
    std::ostringstream msg;
    msg << name << ": no convergence after " << kMaxIterations << " iterations";
    throw ConvergenceError(msg.str());
}

}  // namespace

double sinhc(double b) noexcept {
    if (std::abs(b) < kSmallArg) {
        const double b2 = b * b;
        return 1.0 + b2 / 6.0 + b2 * b2 / 120.0;
    }
    return std::sinh(b) / b;
}

double sinc2(double x) noexcept {
    const double y = 2.0 * x;
    if (std::abs(y) < kSmallArg) {
        const double y2 = y * y;
        return 1.0 - y2 / 6.0 + y2 * y2 / 120.0;
    }
    return std::sin(y) / y;
}

double solve_beta(double k) {
    if (!std::isfinite(k) || k < 1.0) {
        throw DomainError("solve_beta: requires finite k >= 1");
    }
    if (k == 1.0) {
        return 0.0;
    }
    const double hi = std::log(2.0 * k) + 4.0;
    // sinh(b)/b ~ 1 + b^2/6 near the origin, e^b/(2b) far out.
    const double guess = (k < 2.0) ? std::sqrt(6.0 * (k - 1.0)) : std::log(2.0 * k * std::log(2.0 * k));
    const double x0 = (guess > 0.0 && guess < hi) ? guess : 0.5 * hi;
    return bracketed_newton([k](double b) { return sinhc(b) - k; }, sinhc_prime, 0.0, hi, x0, "solve_beta");
}

double solve_xi(double k) {
    if (!std::isfinite(k) || k <= 0.0 || k > 1.0) {
        throw DomainError("solve_xi: requires 0 < k <= 1");
    }
    if (k == 1.0) {
        return 0.0;
    }
    const double hi = std::numbers::pi / 2.0 - 1e-15;
    // The residual k - sinc2 is increasing in x.
    auto f = [k](double x) { return k - sinc2(x); };
    auto df = [](double x) { return -sinc2_prime(x); };
    if (f(hi) <= 0.0) {
        return hi;
    }
    const double guess = (k > 0.5) ? 0.5 * std::sqrt(6.0 * (1.0 - k)) : 0.5 * std::numbers::pi * (1.0 - k);
    const double x0 = (guess > 0.0 && guess < hi) ? guess : 0.5 * hi;
    return bracketed_newton(f, df, 0.0, hi, x0, "solve_xi");
}

RateEval rate_function(double k) {
    if (!std::isfinite(k) || k <= 0.0) {
        throw DomainError("rate_function: requires finite k > 0");
    }
    const double logk = std::log(k);
    if (std::abs(logk) < kSeriesSwitch) {
        return {k, series_extended(logk), RateBranch::Series, 0.0};
    }
    if (k > 1.0) {
        const double b = solve_beta(k);
        const double value = 0.5 * b * b - b * std::tanh(0.5 * b);
        return {k, value, RateBranch::SinhBranch, std::abs(sinhc(b) - k)};
    }
    const double x = solve_xi(k);
    const double value = 2.0 * x * (std::tan(x) - x);
    return {k, value, RateBranch::SinBranch, std::abs(sinc2(x) - k)};
}

double rate_function_series(double logk) {
    if (!(std::abs(logk) < kSeriesRadius)) {
        std::cerr << "warning: rate_function_series: |log k| = " << std::abs(logk)
                  << " outside the convergence radius " << kSeriesRadius << '\n';
    }
    const double l2 = logk * logk;
    return l2 * (1.5 - 0.3 * logk + (109.0 / 1400.0) * l2);
}

}  // namespace asianvol::ratefn
