#pragma once

#include <cstdint>

#include "asianvol/bspricer.hpp"
#include "asianvol/volexp.hpp"

namespace asianvol {

/// Monte Carlo settings. Output is a pure function of these and the pricing
/// inputs; `threads` only changes wall time.
struct McConfig {
    std::uint64_t paths = 100000;
    std::uint32_t steps = 252;
    std::uint64_t seed = 20240705;
    bool antithetic = false;
    /// Upper bound on paths * steps.
    std::uint64_t budget = 4'000'000'000ULL;
    /// Worker threads, 0 for hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

struct McResult {
    double price = 0.0;           ///< discounted mean payoff
    double std_error = 0.0;       ///< standard error of `price`
    std::uint64_t n_effective = 0;  ///< independent samples (pairs when antithetic)
    double average_mean = 0.0;    ///< sample mean of the discretized average A_T
    double average_std_error = 0.0;
};

namespace mc {

/// Paths per leaf block. Blocks are the unit of parallel work and the leaves
/// of the deterministic pairwise reduction.
inline constexpr std::uint64_t kBlockSize = 4096;

/// Arithmetic-average Asian option under geometric Brownian motion. Exact
/// log-normal increments on `steps` uniform intervals; the average is the
/// trapezoid rule over the grid samples including S0.
[[nodiscard]] McResult asian_price(double strike, const MarketParams& params, OptionSide side,
                                   const McConfig& config);

/// Counter-based normal stream: each (seed, path) pair owns an independent
/// generator, so a path's driver does not depend on how paths are scheduled.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path) noexcept;
    [[nodiscard]] std::uint64_t next_u64() noexcept;
    /// Uniform in (0, 1].
    [[nodiscard]] double next_uniform() noexcept;
    [[nodiscard]] double next_normal() noexcept;

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mc
}  // namespace asianvol
