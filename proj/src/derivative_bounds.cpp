#include "ccf/derivative_bounds.hpp"

#include "ccf/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace ccf {

double pj_polynomial(int j, double u, double v, double s) {
    const double u2 = u * u, v2 = v * v;
    switch (j) {
    case 1:
        return -2.0 * s * u;
    case 2:
        return 2.0 * s * (2.0 * s + 1.0) * u2 - 2.0 * s * v2;
    case 3:
        return -2.0 * s * (2.0 * s + 1.0) * (2.0 * s + 2.0) * u2 * u +
               (2.0 * s) * (2.0 * s + 2.0) * 3.0 * u * v2;
    case 4:
        return (2.0 * s) * (2.0 * s + 2.0) *
               ((2.0 * s + 1.0) * (2.0 * s + 3.0) * u2 * u2 -
                6.0 * (2.0 * s + 3.0) * u2 * v2 + 3.0 * v2 * v2);
    default:
        throw std::invalid_argument("derivative order must be between 1 and 4");
    }
}

double qj_polynomial(int j, double u, double v, double s) { return pj_polynomial(j, v, u, s); }

double generic_ratio_bound(int j, double s, double gamma) {
    if (j < 1)
        throw std::invalid_argument("derivative order must be positive");
    double p = 1.0;
    for (int i = 0; i < j; ++i)
        p *= 2.0 * s + i;
    return p / std::pow(gamma, j);
}

BoundConstants bound_constants(double s, double gamma) {
    if (s <= 0.0 || gamma < 1.0)
        throw std::invalid_argument("bound constants need s > 0 and gamma >= 1");
    BoundConstants c;
    c.s = s;
    c.gamma = gamma;
    const double g2 = gamma * gamma;
    c.dxx_lower = -s / (4.0 * g2 * (s + 1.0));
    c.dxx_upper = 2.0 * s * (2.0 * s + 1.0) / g2;
    c.dyy_lower = -2.0 * s / g2;
    c.dyy_upper = s * (2.0 * s + 1.0) / (2.0 * g2);
    c.lip_x = 2.0 * s / gamma;
    c.lip_y = s / gamma;
    c.lip_xy = std::sqrt(5.0) * s / gamma;
    return c;
}

ErrFactors err_factors(double s, double gamma, double h) {
    if (s <= 0.0 || gamma < 1.0 || h <= 0.0)
        throw std::invalid_argument("err factors need s > 0, gamma >= 1, h > 0");
    ErrFactors f;
    f.h = h;
    const double g2 = gamma * gamma;
    const double swell = std::exp(std::sqrt(10.0) * s * h / gamma);
    f.err1_coeff = s * (2.0 * s + 1.0) / g2 * swell;
    f.err2_coeff = (s / g2) * ((9.0 + 8.0 * s) / (8.0 + 8.0 * s)) * swell;
    return f;
}

std::pair<double, double> err_values(const ErrFactors& f, double bracket) {
    if (bracket < 0.0)
        throw std::invalid_argument("bracket must be nonnegative");
    const double e1 = f.err1_coeff * bracket;
    if (e1 >= 1.0)
        throw CorrectionTooLargeError("interpolation correction reached 1; refine the mesh");
    return {e1, f.err2_coeff * bracket};
}

} // namespace ccf
