#pragma once

namespace asianvol {

/// Local data of I(lambda) = int_a^b exp(-lambda f(x)) g(x) dx at the endpoint
/// minimum a, where f(x) = f(a) + a0 (x-a)^alpha + ... and
/// g(x) = b0 (x-a)^{beta-1} + ...
struct LaplaceSpec {
    double f_at_a = 0.0;
    double a0 = 1.0;
    double b0 = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double lambda = 1.0;

    void validate() const;
};

namespace laplace {

/// d0 = b0 / (alpha a0^{beta/alpha}).
[[nodiscard]] double leading_coefficient(const LaplaceSpec& spec);

/// exp(-lambda f(a)) Gamma(beta/alpha) d0 lambda^{-beta/alpha}.
[[nodiscard]] double leading_term(const LaplaceSpec& spec);

}  // namespace laplace
}  // namespace asianvol
