#include "mnlab/quadrature.hpp"

namespace mnlab::quadrature {

double beta_integral(double p, const QuadratureConfig& cfg) {
    if (!(p > 1.0))
        throw std::invalid_argument("beta_integral: p must be > 1, got " + std::to_string(p));
    const double q = p + 1.0;
    return integrate_endpoint_singular(
        [q](double s, double dist) {
            const double om = s > 0.5 ? dist : 1.0 - s;
            return 1.0 / std::sqrt(detail::one_minus_pow_c(om, q));
        },
        0.0, 1.0, cfg);
}

}  // namespace mnlab::quadrature
