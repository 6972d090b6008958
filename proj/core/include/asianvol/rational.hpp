#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace asianvol {

__extension__ typedef __int128 int128_t;

/// Exact rational number with a normalized int64 numerator/denominator pair.
///
/// Used for the expansion coefficients so that identities between them can be
/// checked with zero tolerance. Intermediate products are formed in 128-bit
/// integers and reduced before narrowing; overflow of the reduced result
/// throws.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT: implicit by design of the arithmetic
    constexpr Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) {
            throw std::domain_error("Rational: zero denominator");
        }
        assign(num, den);
    }

    [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] constexpr double value() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend constexpr Rational operator+(Rational a, Rational b) {
        return make(static_cast<int128_t>(a.num_) * b.den_ + static_cast<int128_t>(b.num_) * a.den_,
                    static_cast<int128_t>(a.den_) * b.den_);
    }
    friend constexpr Rational operator-(Rational a, Rational b) { return a + (-b); }
    friend constexpr Rational operator*(Rational a, Rational b) {
        return make(static_cast<int128_t>(a.num_) * b.num_, static_cast<int128_t>(a.den_) * b.den_);
    }
    friend constexpr Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0) {
            throw std::domain_error("Rational: division by zero");
        }
        return make(static_cast<int128_t>(a.num_) * b.den_, static_cast<int128_t>(a.den_) * b.num_);
    }
    constexpr Rational operator-() const { return Rational(-num_, den_); }

    friend constexpr bool operator==(Rational a, Rational b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::ostream& operator<<(std::ostream& os, Rational r) {
        return os << r.num_ << '/' << r.den_;
    }

private:
    static constexpr int128_t gcd128(int128_t a, int128_t b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const int128_t t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static constexpr Rational make(int128_t num, int128_t den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const int128_t g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr int128_t lim = INT64_MAX;
        if (num > lim || num < -lim || den > lim) {
            throw std::overflow_error("Rational: reduced value exceeds int64");
        }
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    constexpr void assign(std::int64_t num, std::int64_t den) {
        *this = make(num, den);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Affine form `constant + slope * m` with exact coefficients. The expansion
/// coefficients are affine in the drift index through m = mu + 1.
struct AffineRational {
    Rational constant;
    Rational slope;

    [[nodiscard]] constexpr Rational at(Rational m) const { return constant + slope * m; }
    [[nodiscard]] constexpr double at(double m) const { return constant.value() + slope.value() * m; }

    friend constexpr AffineRational operator+(AffineRational a, AffineRational b) {
        return {a.constant + b.constant, a.slope + b.slope};
    }
    friend constexpr AffineRational operator-(AffineRational a, AffineRational b) {
        return {a.constant - b.constant, a.slope - b.slope};
    }
    friend constexpr AffineRational operator*(Rational s, AffineRational a) {
        return {s * a.constant, s * a.slope};
    }
    friend constexpr bool operator==(AffineRational a, AffineRational b) noexcept {
        return a.constant == b.constant && a.slope == b.slope;
    }
};

}  // namespace asianvol
