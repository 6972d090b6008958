#include "asianvol/volexp.hpp"

#include <cmath>
#include <sstream>

#include "asianvol/errors.hpp"
#include "asianvol/ratefn.hpp"

namespace asianvol {

void MarketParams::validate() const {
    if (!(spot > 0.0) || !std::isfinite(spot)) {
        throw DomainError("MarketParams: spot must be positive and finite");
    }
    if (!(vol > 0.0) || !std::isfinite(vol)) {
        throw DomainError("MarketParams: vol must be positive and finite");
    }
    if (!(maturity > 0.0) || !std::isfinite(maturity)) {
        throw DomainError("MarketParams: maturity must be positive and finite");
    }
    if (!std::isfinite(rate) || !std::isfinite(dividend)) {
        throw DomainError("MarketParams: rate and dividend must be finite");
    }
}

double VolExpansion::total_vol() const { return std::sqrt(total_sq); }

ReducedParams to_reduced(double strike, const MarketParams& params) {
    params.validate();
    if (!(strike > 0.0)) {
        throw DomainError("to_reduced: strike must be positive");
    }
    const double s2 = params.vol * params.vol;
    return {0.25 * s2 * params.maturity, 2.0 * params.drift() / s2 - 1.0, strike / params.spot};
}

DriftAndMaturity from_reduced(const ReducedParams& reduced, double vol) {
    if (!(vol > 0.0)) {
        throw DomainError("from_reduced: vol must be positive");
    }
    const double s2 = vol * vol;
    return {4.0 * reduced.tau / s2, 0.5 * (reduced.mu + 1.0) * s2};
}

namespace volexp {
namespace {

// (e^p - 1) / p with its limit 1 at p = 0.
double expm1_ratio(double p) noexcept {
    if (std::abs(p) < 1e-6) {
        return 1.0 + p * (0.5 + p / 6.0);
    }
    return std::expm1(p) / p;
}

AffineRational constant(Rational c) { return {c, Rational(0)}; }
AffineRational slope(Rational s) { return {Rational(0), s}; }

void check_strike(double strike) {
    if (!(strike > 0.0) || !std::isfinite(strike)) {
        throw DomainError("implied_variance: strike must be positive and finite");
    }
}

VolExpansion finish(VolExpansion v) {
    v.total_sq = v.sigma0_sq + v.level + v.skew + v.convexity;
    if (!(v.total_sq > 0.0)) {
        std::ostringstream msg;
        msg << "implied_variance: assembled variance " << v.total_sq
            << " is not positive (x = " << v.x << "), outside the expansion's validity";
        throw DomainError(msg.str());
    }
    return v;
}

}  // namespace

double forward_price(const MarketParams& params) {
    params.validate();
    return params.spot * expm1_ratio(params.drift() * params.maturity);
}

double log_moneyness(double strike, double forward) {
    if (!(strike > 0.0) || !(forward > 0.0)) {
        throw DomainError("log_moneyness: strike and forward must be positive");
    }
    return std::log(strike / forward);
}

double sigma0_sq(double k_eff, double vol) {
    if (!(k_eff > 0.0) || !std::isfinite(k_eff)) {
        throw DomainError("sigma0_sq: strike ratio must be positive and finite");
    }
    const double s2 = vol * vol;
    const double lk = std::log(k_eff);
    if (std::abs(lk) < ratefn::kSeriesSwitch) {
        return s2 * (1.0 / 3.0 + lk * (1.0 / 15.0 + lk * (-1.0 / 252.0 + lk * (-17.0 / 31500.0 + lk * (8959.0 / 48510000.0)))));
    }
    return s2 * lk * lk / (2.0 * ratefn::rate_function(k_eff).value);
}

std::array<AffineRational, 4> c_coeffs_exact() {
    return {{
        {Rational(-4, 5), Rational(3, 4)},
        {Rational(57, 1400), Rational(-3, 80)},
        {Rational(-1, 875), Rational(1, 350)},
        {Rational(3281, 6160000), Rational(11, 22400)},
    }};
}

std::array<double, 4> c_coeffs(double mu) {
    const double m = mu + 1.0;
    std::array<double, 4> out{};
    const auto exact = c_coeffs_exact();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = exact[i].at(m);
    }
    return out;
}

ReducedCoeffsExact reduced_coeffs_exact() {
    const auto [c1, c2, c3, c4] = c_coeffs_exact();
    ReducedCoeffsExact r;
    r.level = Rational(4, 4725) *
              (constant(1051) + Rational(1680) * c1 + Rational(4200) * c2 + slope(-315));
    r.skew = Rational(8, 23625) *
             (constant(-91) + Rational(170) * c1 + Rational(4200) * c2 + Rational(10500) * c3);
    r.convexity = Rational(1, 18191250) *
                  (constant(-250193) + Rational(-517440) * c1 + Rational(1047200) * c2 +
                   Rational(25872000) * c3 + Rational(64680000) * c4 + slope(-39270));
    return r;
}

SubleadingCoeffs reduced_subleading_coeffs(double mu) {
    const double m = mu + 1.0;
    const auto [c1, c2, c3, c4] = c_coeffs(mu);
    SubleadingCoeffs out;
    out.c1 = c1;
    out.c2 = c2;
    out.c3 = c3;
    out.c4 = c4;
    out.level = 4.0 / 4725.0 * (1051.0 + 1680.0 * c1 + 4200.0 * c2 - 315.0 * m);
    out.skew = 8.0 / 23625.0 * (-91.0 + 170.0 * c1 + 4200.0 * c2 + 10500.0 * c3);
    out.convexity = (-250193.0 - 517440.0 * c1 + 1047200.0 * c2 + 25872000.0 * c3 +
                     64680000.0 * c4 - 39270.0 * m) /
                    18191250.0;
    return out;
}

BCoeffsExact b_coeffs_exact(bool shifted) {
    const auto c = c_coeffs_exact();
    BCoeffsExact b;
    b.b1 = Rational(-1) * (constant(Rational(8, 5)) + Rational(2) * c[0]);
    b.b2 = constant(Rational(293, 2100)) - Rational(2) * c[1];
    if (shifted) {
        b.b1 = b.b1 + slope(Rational(3, 2));
        b.b2 = b.b2 - slope(Rational(9, 20));
    }
    return b;
}

std::array<double, 2> b_coeffs(double mu, bool shifted) {
    const auto b = b_coeffs_exact(shifted);
    return {b.b1.at(mu + 1.0), b.b2.at(mu + 1.0)};
}

VolExpansion implied_variance(double strike, const MarketParams& params, Order order) {
    check_strike(strike);
    const double fwd = forward_price(params);
    const double s2 = params.vol * params.vol;
    const double s2t = s2 * params.maturity;
    const double rt = params.drift() * params.maturity;

    VolExpansion v;
    v.order = order;
    v.x = log_moneyness(strike, fwd);
    v.leading_k = (order == Order::Leading) ? strike / params.spot : std::exp(v.x);
    v.sigma0_sq = sigma0_sq(v.leading_k, params.vol);
    if (order >= Order::AtmCorrection) {
        v.level = s2 * (physical::level_vol.value() * s2t + physical::level_rate.value() * rt);
    }
    if (order >= Order::Linear) {
        v.skew = s2 * physical::skew_vol.value() * s2t * v.x;
    }
    if (order >= Order::Quadratic) {
        v.convexity = s2 * (physical::convexity_vol.value() * s2t + physical::convexity_rate.value() * rt) *
                      v.x * v.x;
    }
    return finish(v);
}

VolExpansion implied_variance_reduced(double strike, const MarketParams& params, Order order) {
    check_strike(strike);
    const ReducedParams red = to_reduced(strike, params);
    const double m = red.mu + 1.0;
    const double a_fwd = expm1_ratio(2.0 * m * red.tau);
    const double scale = 0.25 * params.vol * params.vol;
    // The standardized problem has unit spot and volatility 2.
    constexpr double kReducedVol = 2.0;

    VolExpansion v;
    v.order = order;
    v.x = std::log(red.k / a_fwd);
    v.leading_k = (order == Order::Leading) ? red.k : std::exp(v.x);
    v.sigma0_sq = scale * sigma0_sq(v.leading_k, kReducedVol);
    const SubleadingCoeffs c = reduced_subleading_coeffs(red.mu);
    if (order >= Order::AtmCorrection) {
        v.level = scale * c.level * red.tau;
    }
    if (order >= Order::Linear) {
        v.skew = scale * c.skew * red.tau * v.x;
    }
    if (order >= Order::Quadratic) {
        v.convexity = scale * c.convexity * red.tau * v.x * v.x;
    }
    return finish(v);
}

}  // namespace volexp
}  // namespace asianvol
