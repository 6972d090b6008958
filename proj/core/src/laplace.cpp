#include "asianvol/laplace.hpp"

#include <cmath>

#include "asianvol/errors.hpp"

namespace asianvol {

void LaplaceSpec::validate() const {
    if (!(a0 > 0.0) || !(alpha > 0.0) || !(beta > 0.0) || !(lambda > 0.0)) {
        throw DomainError("LaplaceSpec: a0, alpha, beta and lambda must be positive");
    }
    if (!std::isfinite(f_at_a) || !std::isfinite(b0)) {
        throw DomainError("LaplaceSpec: f(a) and b0 must be finite");
    }
}

namespace laplace {

double leading_coefficient(const LaplaceSpec& spec) {
    spec.validate();
    return spec.b0 / (spec.alpha * std::pow(spec.a0, spec.beta / spec.alpha));
}

double leading_term(const LaplaceSpec& spec) {
    const double d0 = leading_coefficient(spec);
    const double ratio = spec.beta / spec.alpha;
    return std::exp(-spec.lambda * spec.f_at_a) * std::tgamma(ratio) * d0 * std::pow(spec.lambda, -ratio);
}

}  // namespace laplace
}  // namespace asianvol
