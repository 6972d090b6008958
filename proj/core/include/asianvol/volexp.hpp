#pragma once

#include <array>
#include <cstdint>

#include "asianvol/rational.hpp"

namespace asianvol {

/// One Black-Scholes pricing problem. The asset drifts at r - q and payoffs
/// are discounted at r.
struct MarketParams {
    double spot = 1.0;
    double rate = 0.0;
    double dividend = 0.0;
    double vol = 0.2;
    double maturity = 1.0;

    /// Throws DomainError unless spot, vol, maturity > 0 and rate, dividend are finite.
    void validate() const;
    [[nodiscard]] double drift() const noexcept { return rate - dividend; }
};

/// Standardized parameters: tau = sigma^2 T / 4, mu = 2 (r - q) / sigma^2 - 1, k = K / S0.
struct ReducedParams {
    double tau = 0.0;
    double mu = -1.0;
    double k = 1.0;
};

[[nodiscard]] ReducedParams to_reduced(double strike, const MarketParams& params);
/// Inverse map at fixed sigma and spot: returns (maturity, drift r - q).
struct DriftAndMaturity {
    double maturity;
    double drift;
};
[[nodiscard]] DriftAndMaturity from_reduced(const ReducedParams& reduced, double vol);

/// Which groups of the short-maturity expansion enter the variance.
///  - Leading: the T -> 0 limit sigma0^2(K/S0).
///  - AtmCorrection: sigma0^2(K/A_fwd) plus the O(T) level.
///  - Linear: adds the O(T x) skew.
///  - Quadratic: adds the O(T x^2) convexity.
enum class Order : std::uint8_t { Leading, AtmCorrection, Linear, Quadratic };

/// Equivalent log-normal variance and its pieces, all in sigma^2 units (1/time).
struct VolExpansion {
    Order order = Order::Linear;
    double x = 0.0;             ///< log(K / A_fwd)
    double leading_k = 1.0;     ///< strike ratio at which sigma0^2 was evaluated
    double sigma0_sq = 0.0;
    double level = 0.0;
    double skew = 0.0;
    double convexity = 0.0;
    double total_sq = 0.0;

    [[nodiscard]] double total_vol() const;
};

/// Coefficients c1..c4 of the exponent of g(a, mu) and the reduced O(tau)
/// level, skew and convexity they generate.
struct SubleadingCoeffs {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
    double level = 0.0, skew = 0.0, convexity = 0.0;
};

namespace volexp {

/// Exact coefficients of the physical-parameter expansion
///   Sigma^2 = sigma^2 { sigma0^2/sigma^2 + level_vol s + level_rate p
///                       + skew_vol s x + (convexity_vol s + convexity_rate p) x^2 }
/// with s = sigma^2 T and p = (r - q) T.
namespace physical {
inline constexpr Rational level_vol{-61, 9450};
inline constexpr Rational level_rate{1, 12};
inline constexpr Rational skew_vol{-34, 23625};
inline constexpr Rational convexity_vol{12073, 16632000};
inline constexpr Rational convexity_rate{-5, 2016};
}  // namespace physical

/// Forward of the time average, S0 (e^{(r-q)T} - 1) / ((r-q)T).
[[nodiscard]] double forward_price(const MarketParams& params);
[[nodiscard]] double log_moneyness(double strike, double forward);

/// sigma^2 log^2 k / (2 J_BS(k)), with the removable singularity at k = 1
/// handled by its log-k series.
[[nodiscard]] double sigma0_sq(double k_eff, double vol);

/// c1..c4 as exact affine forms in m = mu + 1.
[[nodiscard]] std::array<AffineRational, 4> c_coeffs_exact();
[[nodiscard]] std::array<double, 4> c_coeffs(double mu);

/// Reduced-variance O(tau) level, skew and convexity as exact affine forms in
/// m = mu + 1, obtained by substituting c1..c4 into the coefficient brackets.
struct ReducedCoeffsExact {
    AffineRational level;
    AffineRational skew;
    AffineRational convexity;
};
[[nodiscard]] ReducedCoeffsExact reduced_coeffs_exact();
[[nodiscard]] SubleadingCoeffs reduced_subleading_coeffs(double mu);

/// b-coefficients of the log-moneyness expansion, before (shifted = false) or after absorbing the
/// forward shift of the log-moneyness.
struct BCoeffsExact {
    AffineRational b1;
    AffineRational b2;
};
[[nodiscard]] BCoeffsExact b_coeffs_exact(bool shifted);
[[nodiscard]] std::array<double, 2> b_coeffs(double mu, bool shifted);

/// Equivalent log-normal variance of the Asian option with strike K.
/// Throws DomainError if the assembled variance is not positive.
[[nodiscard]] VolExpansion implied_variance(double strike, const MarketParams& params,
                                            Order order = Order::Linear);

/// Same quantity through the standardized problem: reduced variance at
/// (tau, mu) rescaled by sigma^2 / 4.
[[nodiscard]] VolExpansion implied_variance_reduced(double strike, const MarketParams& params,
                                                    Order order = Order::Linear);

}  // namespace volexp
}  // namespace asianvol
