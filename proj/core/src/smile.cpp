#include "asianvol/smile.hpp"

#include <cmath>

#include "asianvol/errors.hpp"

namespace asianvol::smile {

std::vector<SmilePoint> curve(const MarketParams& params, double k_min, double k_max, int n_points, Order order,
                              OptionSide side) {
    params.validate();
    if (!(k_min > 0.0) || !(k_max > k_min)) {
        throw DomainError("smile: need 0 < k_min < k_max");
    }
    if (n_points < 2) {
        throw DomainError("smile: need at least 2 points");
    }
    auto point = [&](double k, std::string marker) {
        const double strike = k * params.spot;
        const double var = volexp::implied_variance(strike, params, order).total_sq;
        return SmilePoint{k, std::sqrt(var), bs::asian_price(strike, params, order, side), std::move(marker)};
    };

    const double k_atm = volexp::forward_price(params) / params.spot;
    std::vector<SmilePoint> out;
    out.reserve(static_cast<std::size_t>(n_points) + 1);
    bool atm_done = !(k_atm >= k_min && k_atm <= k_max);
    for (int i = 0; i < n_points; ++i) {
        const double k = k_min + (k_max - k_min) * i / (n_points - 1);
        if (!atm_done && k_atm <= k) {
            out.push_back(point(k_atm, "atm"));
            atm_done = true;
        }
        out.push_back(point(k, ""));
    }
    return out;
}

}  // namespace asianvol::smile
