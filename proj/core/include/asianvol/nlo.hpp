#pragma once

#include "asianvol/volexp.hpp"

namespace asianvol {

/// Accumulated drift rho = (r - q) T with the maturity and volatility it came from.
struct RhoParams {
    double rho = 0.0;
    double vol = 0.2;
    double maturity = 1.0;

    [[nodiscard]] static RhoParams from(const MarketParams& params);
    /// Throws DomainError unless |rho| < kRhoBound and vol > 0.
    void validate() const;
};

namespace nlo {

/// Sanity bound on |rho|; e^{2 rho} growth makes larger values meaningless here.
inline constexpr double kRhoBound = 5.0;
/// Below this |rho| the Taylor polynomial of v(rho) through rho^5 is used.
inline constexpr double kSeriesSwitch = 1e-3;

/// v(rho) = (rho e^{2 rho} - 3/2 e^{2 rho} + 2 e^rho - 1/2) / rho^3.
[[nodiscard]] double v_of_rho(double rho);

/// Taylor coefficient of rho^n in v(rho): (2^{n+2} n + 2) / (n+3)!.
[[nodiscard]] double v_taylor_coefficient(int n);

/// rT-resummed ATM volatility sigma * rho / (e^rho - 1) * sqrt(v(rho)).
[[nodiscard]] double sigma_ln_rho_atm(double vol, double rho);

/// NLO variance at K = A_fwd: the resummed ATM variance plus the O(sigma^2 T) level.
[[nodiscard]] double nlo_variance_atm(const MarketParams& params);

/// NLO variance at strike K. Only K = A_fwd (to relative 1e-12) is supported;
/// any other strike throws UnsupportedStrike.
[[nodiscard]] double nlo_variance(double strike, const MarketParams& params);

}  // namespace nlo
}  // namespace asianvol
