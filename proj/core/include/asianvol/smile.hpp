#pragma once

#include <string>
#include <vector>

#include "asianvol/bspricer.hpp"
#include "asianvol/volexp.hpp"

namespace asianvol::smile {

struct SmilePoint {
    double k = 1.0;         ///< K / S0
    double sigma_ln = 0.0;  ///< equivalent log-normal vol
    double price = 0.0;
    std::string marker;     ///< "", "atm" or "benchmark"
};

/// Equivalent log-normal vols on n evenly spaced strike ratios in
/// [k_min, k_max], with a marker row at the ATM ratio A_fwd / S0 inserted in
/// strike order.
[[nodiscard]] std::vector<SmilePoint> curve(const MarketParams& params, double k_min, double k_max, int n_points,
                                            Order order, OptionSide side = OptionSide::Call);

inline constexpr const char* kCsvHeader = "k,sigma_ln,price,marker";

}  // namespace asianvol::smile
