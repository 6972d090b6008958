#include "asianvol/bspricer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "asianvol/errors.hpp"
#include "asianvol/nlo.hpp"

namespace asianvol {

void VanillaQuote::validate() const {
    if (!(forward > 0.0) || !(strike > 0.0)) {
        throw DomainError("VanillaQuote: forward and strike must be positive");
    }
    if (!(vol >= 0.0) || !std::isfinite(vol)) {
        throw DomainError("VanillaQuote: vol must be nonnegative");
    }
    if (!(maturity > 0.0)) {
        throw DomainError("VanillaQuote: maturity must be positive");
    }
    if (!(discount > 0.0 && discount <= 1.0)) {
        throw DomainError("VanillaQuote: discount factor must lie in (0, 1]");
    }
}

namespace bs {
namespace {

constexpr double kVolLow = 1e-8;
constexpr double kVolHigh = 5.0;
constexpr double kPriceTolerance = 1e-12;
constexpr double kVegaFloor = 1e-16;
constexpr int kMaxIterations = 200;

}  // namespace

double norm_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double norm_pdf(double z) noexcept {
    return std::exp(-0.5 * z * z) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double price(const VanillaQuote& q) {
    q.validate();
    const double sd = q.vol * std::sqrt(q.maturity);
    const double sign = (q.side == OptionSide::Call) ? 1.0 : -1.0;
    if (sd == 0.0) {
        return q.discount * std::max(sign * (q.forward - q.strike), 0.0);
    }
    const double d1 = (std::log(q.forward / q.strike) + 0.5 * sd * sd) / sd;
    const double d2 = d1 - sd;
    return q.discount * sign * (q.forward * norm_cdf(sign * d1) - q.strike * norm_cdf(sign * d2));
}

double vega(const VanillaQuote& q) {
    q.validate();
    const double sqrt_t = std::sqrt(q.maturity);
    const double sd = q.vol * sqrt_t;
    if (sd == 0.0) {
        return 0.0;
    }
    const double d1 = (std::log(q.forward / q.strike) + 0.5 * sd * sd) / sd;
    return q.discount * q.forward * norm_pdf(d1) * sqrt_t;
}

double asian_variance(double strike, const MarketParams& params, const VolSource& source) {
    if (const auto* order = std::get_if<Order>(&source)) {
        return volexp::implied_variance(strike, params, *order).total_sq;
    }
    return nlo::nlo_variance(strike, params);
}

double asian_price(double strike, const MarketParams& params, const VolSource& source, OptionSide side) {
    const double variance = asian_variance(strike, params, source);
    VanillaQuote q;
    q.forward = volexp::forward_price(params);
    q.strike = strike;
    q.vol = std::sqrt(variance);
    q.maturity = params.maturity;
    q.discount = std::exp(-params.rate * params.maturity);
    q.side = side;
    return price(q);
}

double implied_vol(double target, VanillaQuote quote) {
    quote.vol = kVolLow;
    const double p_low = price(quote);
    quote.vol = kVolHigh;
    const double p_high = price(quote);
    if (!(target > p_low && target < p_high)) {
        std::ostringstream msg;
        msg << "implied_vol: price " << target << " outside the attainable range (" << p_low << ", "
            << p_high << ")";
        throw DomainError(msg.str());
    }

    double lo = kVolLow;
    double hi = kVolHigh;
    // Start from the at-the-money approximation price ~ 0.4 F sigma sqrt(T).
    double vol = target / (0.4 * quote.discount * quote.forward * std::sqrt(quote.maturity));
    if (!(vol > lo && vol < hi)) {
        vol = 0.5;
    }
    for (int it = 0; it < kMaxIterations; ++it) {
        quote.vol = vol;
        const double f = price(quote) - target;
        if (f > 0.0) {
            hi = vol;
        } else {
            lo = vol;
        }
        const double v = vega(quote);
        double next = (v > kVegaFloor) ? vol - f / v : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::abs(next - vol);
        if ((std::abs(f) <= kPriceTolerance && step <= 1e-14 * vol) || hi - lo <= 4e-16 * vol || f == 0.0) {
            return std::abs(f) <= kPriceTolerance ? vol : next;
        }
        vol = next;
    }
    throw ConvergenceError("implied_vol: no convergence after 200 iterations");
}

}  // namespace bs
}  // namespace asianvol
