#include "asianvol/nlo.hpp"

#include <cmath>
#include <sstream>

#include "asianvol/errors.hpp"

namespace asianvol {

RhoParams RhoParams::from(const MarketParams& params) {
    params.validate();
    return {params.drift() * params.maturity, params.vol, params.maturity};
}

void RhoParams::validate() const {
    if (!std::isfinite(rho) || !(std::abs(rho) < nlo::kRhoBound)) {
        throw DomainError("RhoParams: |rho| must be below the sanity bound 5");
    }
    if (!(vol > 0.0)) {
        throw DomainError("RhoParams: vol must be positive");
    }
}

namespace nlo {
namespace {

// Beyond this |rho| the closed form is evaluated directly; below it the
// numerator cancels to O(rho^3) and the convergent power series is summed.
constexpr double kDirectSwitch = 0.5;

void check_rho(double rho) {
    if (!std::isfinite(rho) || !(std::abs(rho) < kRhoBound)) {
        throw DomainError("nlo: |rho| must be below the sanity bound 5");
    }
}

double v_power_series(double rho) {
    double sum = 0.0;
    double power = 1.0;
    for (int n = 0; n < 60; ++n) {
        const double term = v_taylor_coefficient(n) * power;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) {
            break;
        }
        power *= rho;
    }
    return sum;
}

}  // namespace

double v_taylor_coefficient(int n) {
    // Coefficient of rho^{n+3} in the numerator, 2^{m-1}(m-3) + 2 over m!, m = n + 3.
    const int m = n + 3;
    double factorial = 1.0;
    for (int i = 2; i <= m; ++i) {
        factorial *= i;
    }
    return (std::ldexp(1.0, m - 1) * (m - 3) + 2.0) / factorial;
}

double v_of_rho(double rho) {
    check_rho(rho);
    const double a = std::abs(rho);
    if (a < kSeriesSwitch) {
        return 1.0 / 3.0 +
               rho * (5.0 / 12.0 + rho * (17.0 / 60.0 + rho * (49.0 / 360.0 + rho * (43.0 / 840.0 + rho * (107.0 / 6720.0)))));
    }
    if (a < kDirectSwitch) {
        return v_power_series(rho);
    }
    const double e1 = std::exp(rho);
    const double e2 = e1 * e1;
    return (rho * e2 - 1.5 * e2 + 2.0 * e1 - 0.5) / (rho * rho * rho);
}

double sigma_ln_rho_atm(double vol, double rho) {
    RhoParams{rho, vol, 1.0}.validate();
    const double ratio = (std::abs(rho) < 1e-6) ? 1.0 - rho * (0.5 - rho / 12.0) : rho / std::expm1(rho);
    const double v = v_of_rho(rho);
    if (!(v > 0.0)) {
        throw DomainError("sigma_ln_rho_atm: v(rho) is not positive");
    }
    return vol * ratio * std::sqrt(v);
}

double nlo_variance_atm(const MarketParams& params) {
    const RhoParams rp = RhoParams::from(params);
    rp.validate();
    const double s = sigma_ln_rho_atm(params.vol, rp.rho);
    const double s2 = params.vol * params.vol;
    return s * s + s2 * volexp::physical::level_vol.value() * s2 * params.maturity;
}

double nlo_variance(double strike, const MarketParams& params) {
    const double fwd = volexp::forward_price(params);
    if (!(strike > 0.0) || std::abs(strike / fwd - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "nlo: strike " << strike << " differs from the forward " << fwd
            << "; the resummed volatility is only available at the ATM point";
        throw UnsupportedStrike(msg.str());
    }
    return nlo_variance_atm(params);
}

}  // namespace nlo
}  // namespace asianvol
