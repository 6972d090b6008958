#include "asianvol/mcoracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "asianvol/errors.hpp"

namespace asianvol {

void McConfig::validate() const {
    if (paths < 1) {
        throw DomainError("McConfig: paths must be at least 1");
    }
    if (steps < 2) {
        throw DomainError("McConfig: steps must be at least 2");
    }
    if (antithetic && paths % 2 != 0) {
        throw DomainError("McConfig: antithetic sampling needs an even path count");
    }
    if (paths > budget / steps) {
        std::ostringstream msg;
        msg << "McConfig: paths x steps = " << paths << " x " << steps << " exceeds the budget " << budget;
        throw ResourceError(msg.str());
    }
}

namespace mc {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

// Running moments of the payoff and of the time average.
struct Moments {
    std::uint64_t n = 0;
    double payoff_mean = 0.0;
    double payoff_m2 = 0.0;
    double avg_mean = 0.0;
    double avg_m2 = 0.0;

    void add(double payoff, double avg) noexcept {
        ++n;
        const double inv = 1.0 / static_cast<double>(n);
        const double dp = payoff - payoff_mean;
        payoff_mean += dp * inv;
        payoff_m2 += dp * (payoff - payoff_mean);
        const double da = avg - avg_mean;
        avg_mean += da * inv;
        avg_m2 += da * (avg - avg_mean);
    }

    static Moments merge(const Moments& a, const Moments& b) noexcept {
        if (a.n == 0) return b;
        if (b.n == 0) return a;
        Moments out;
        out.n = a.n + b.n;
        const double na = static_cast<double>(a.n);
        const double nb = static_cast<double>(b.n);
        const double n = static_cast<double>(out.n);
        const double dp = b.payoff_mean - a.payoff_mean;
        out.payoff_mean = a.payoff_mean + dp * nb / n;
        out.payoff_m2 = a.payoff_m2 + b.payoff_m2 + dp * dp * na * nb / n;
        const double da = b.avg_mean - a.avg_mean;
        out.avg_mean = a.avg_mean + da * nb / n;
        out.avg_m2 = a.avg_m2 + b.avg_m2 + da * da * na * nb / n;
        return out;
    }
};

Moments pairwise(const std::vector<Moments>& blocks, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) {
        return blocks[lo];
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return Moments::merge(pairwise(blocks, lo, mid), pairwise(blocks, mid, hi));
}

struct PathModel {
    double spot;
    double drift_step;      // (r - q - sigma^2/2) h
    double diffusion_step;  // sigma sqrt(h)
    std::uint32_t steps;
    double strike;
    double sign;            // +1 call, -1 put

    double payoff(double avg) const noexcept { return std::max(sign * (avg - strike), 0.0); }
};

// Simulates one sample (a single path, or an antithetic pair) and adds it to m.
void simulate_sample(const PathModel& model, std::uint64_t seed, std::uint64_t index, bool antithetic,
                     Moments& m) {
    PathRng rng(seed, index);
    double log_up = 0.0;
    double log_dn = 0.0;
    double sum_up = 0.5;
    double sum_dn = 0.5;
    for (std::uint32_t j = 1; j <= model.steps; ++j) {
        const double z = rng.next_normal();
        log_up += model.drift_step + model.diffusion_step * z;
        const double w = (j == model.steps) ? 0.5 : 1.0;
        sum_up += w * std::exp(log_up);
        if (antithetic) {
            log_dn += model.drift_step - model.diffusion_step * z;
            sum_dn += w * std::exp(log_dn);
        }
    }
    const double scale = model.spot / static_cast<double>(model.steps);
    const double avg_up = scale * sum_up;
    if (!antithetic) {
        m.add(model.payoff(avg_up), avg_up);
        return;
    }
    const double avg_dn = scale * sum_dn;
    m.add(0.5 * (model.payoff(avg_up) + model.payoff(avg_dn)), 0.5 * (avg_up + avg_dn));
}

}  // namespace

PathRng::PathRng(std::uint64_t seed, std::uint64_t path) noexcept {
    std::uint64_t mixer = seed;
    std::uint64_t state = splitmix64(mixer) ^ (path * kGolden + 0x632BE59BD9B4E019ULL);
    for (auto& word : s_) {
        word = splitmix64(state);
    }
}

std::uint64_t PathRng::next_u64() noexcept {
    // xoshiro256**
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double PathRng::next_uniform() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double PathRng::next_normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller on (0, 1] x (0, 1].
    const double radius = std::sqrt(-2.0 * std::log(next_uniform()));
    const double angle = 2.0 * std::numbers::pi * next_uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

McResult asian_price(double strike, const MarketParams& params, OptionSide side, const McConfig& config) {
    params.validate();
    config.validate();
    if (!(strike > 0.0)) {
        throw DomainError("mc::asian_price: strike must be positive");
    }

    const double h = params.maturity / static_cast<double>(config.steps);
    const PathModel model{params.spot,
                          (params.drift() - 0.5 * params.vol * params.vol) * h,
                          params.vol * std::sqrt(h),
                          config.steps,
                          strike,
                          side == OptionSide::Call ? 1.0 : -1.0};

    const std::uint64_t samples = config.antithetic ? config.paths / 2 : config.paths;
    const std::uint64_t n_blocks = (samples + kBlockSize - 1) / kBlockSize;
    std::vector<Moments> blocks(n_blocks);

    std::atomic<std::uint64_t> next_block{0};
    auto worker = [&]() {
        for (std::uint64_t b = next_block++; b < n_blocks; b = next_block++) {
            Moments m;
            const std::uint64_t end = std::min(samples, (b + 1) * kBlockSize);
            for (std::uint64_t i = b * kBlockSize; i < end; ++i) {
                simulate_sample(model, config.seed, i, config.antithetic, m);
            }
            blocks[b] = m;
        }
    };

    unsigned n_threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::uint64_t>(n_threads, n_blocks));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    const Moments total = pairwise(blocks, 0, blocks.size());
    const double df = std::exp(-params.rate * params.maturity);
    const double n = static_cast<double>(total.n);
    McResult out;
    out.n_effective = total.n;
    out.price = df * total.payoff_mean;
    out.average_mean = total.avg_mean;
    if (total.n >= 2) {
        out.std_error = df * std::sqrt(total.payoff_m2 / (n - 1.0) / n);
        out.average_std_error = std::sqrt(total.avg_m2 / (n - 1.0) / n);
    }
    return out;
}

}  // namespace mc
}  // namespace asianvol
