#pragma once

#include <cstdint>
#include <variant>

#include "asianvol/volexp.hpp"

namespace asianvol {

enum class OptionSide : std::uint8_t { Call, Put };

/// European option on a forward F, priced with a flat log-normal vol.
struct VanillaQuote {
    double forward = 1.0;
    double strike = 1.0;
    double vol = 0.2;
    double maturity = 1.0;
    double discount = 1.0;  ///< e^{-rT}, in (0, 1]
    OptionSide side = OptionSide::Call;

    void validate() const;
};

/// Selects the rT-resummed NLO volatility instead of a plain expansion order.
struct NloAtm {};

/// Source of the equivalent log-normal volatility for asian_price.
using VolSource = std::variant<Order, NloAtm>;

namespace bs {

/// Standard normal CDF via erfc.
[[nodiscard]] double norm_cdf(double z) noexcept;
[[nodiscard]] double norm_pdf(double z) noexcept;

[[nodiscard]] double price(const VanillaQuote& quote);
/// d price / d vol.
[[nodiscard]] double vega(const VanillaQuote& quote);

/// Equivalent log-normal variance of the Asian option from the chosen source.
[[nodiscard]] double asian_variance(double strike, const MarketParams& params, const VolSource& source);

/// Asian option price: Black-Scholes on the forward average with the
/// equivalent log-normal volatility, discounted at r.
[[nodiscard]] double asian_price(double strike, const MarketParams& params, const VolSource& source,
                                 OptionSide side = OptionSide::Call);

/// Vol in [1e-8, 5] reproducing `target` under the quote's forward, strike,
/// maturity and discount (quote.vol is ignored). Throws DomainError when the
/// price lies outside the bracket and ConvergenceError after 200 iterations.
[[nodiscard]] double implied_vol(double target, VanillaQuote quote);

}  // namespace bs
}  // namespace asianvol
