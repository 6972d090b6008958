#pragma once

#include <cstdint>

namespace asianvol {

/// Which evaluation path produced a rate-function value.
enum class RateBranch : std::uint8_t { SinhBranch, SinBranch, Series };

/// Value of the short-maturity rate function J_BS at one strike ratio.
struct RateEval {
    double k = 1.0;          ///< strike ratio K/S0
    double value = 0.0;      ///< J_BS(k) >= 0
    RateBranch branch = RateBranch::Series;
    double residual = 0.0;   ///< |branch equation| at the returned root, 0 for Series
};

namespace ratefn {

/// |log k| below which the log-k Taylor series replaces the closed form.
inline constexpr double kSeriesSwitch = 1e-2;
/// Absolute residual targeted by the root solvers.
inline constexpr double kRootTolerance = 1e-12;
inline constexpr int kMaxIterations = 200;
/// Radius of convergence of the log-k series of J_BS.
inline constexpr double kSeriesRadius = 3.49295;

/// sinh(b)/b, equal to 1 at b = 0.
[[nodiscard]] double sinhc(double b) noexcept;
/// sin(2x)/(2x), equal to 1 at x = 0.
[[nodiscard]] double sinc2(double x) noexcept;

/// Unique nonnegative root of sinh(b)/b = k. Throws DomainError for k < 1.
[[nodiscard]] double solve_beta(double k);
/// Unique root in [0, pi/2) of sin(2x)/(2x) = k. Throws DomainError unless 0 < k <= 1.
[[nodiscard]] double solve_xi(double k);

/// J_BS(k) for k > 0, switching to the series near k = 1.
[[nodiscard]] RateEval rate_function(double k);

/// Truncated series 3/2 L^2 - 3/10 L^3 + 109/1400 L^4 in L = log k.
/// Outside the convergence radius a warning is logged to stderr and the
/// truncated value is still returned.
[[nodiscard]] double rate_function_series(double logk);

}  // namespace ratefn
}  // namespace asianvol
