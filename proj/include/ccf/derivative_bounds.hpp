#pragma once

#include <utility>

namespace ccf {

// numerator polynomials of the partial derivative ratios of G(u,v) = (u^2+v^2)^{-s}:
// d^j G / du^j = P_j(u,v;s) (u^2+v^2)^{-s-j} G... recovered as ratio P_j/(u^2+v^2)^j
// after dividing by G; Q_j(u,v;s) = P_j(v,u;s) plays the same role for d/dv
double pj_polynomial(int j, double u, double v, double s);
double qj_polynomial(int j, double u, double v, double s);

// |d^j G / dk^j| / G <= (2s)(2s+1)...(2s+j-1) / gamma^j on u >= gamma
double generic_ratio_bound(int j, double s, double gamma);

// envelopes of the second derivative ratios and Lipschitz constants of the
// positive eigenfunctions, valid on Re >= gamma
struct BoundConstants {
    double s = 0.0, gamma = 1.0;
    double dxx_lower = 0.0, dxx_upper = 0.0;
    double dyy_lower = 0.0, dyy_upper = 0.0;
    double lip_x = 0.0, lip_y = 0.0, lip_xy = 0.0;
};

BoundConstants bound_constants(double s, double gamma);

// multipliers turning a stencil bracket into the interpolation error envelopes:
// err1 scales the undershoot (row factor 1 - err1), err2 the overshoot (1 + err2)
struct ErrFactors {
    double h = 0.0;
    double err1_coeff = 0.0;
    double err2_coeff = 0.0;
};

ErrFactors err_factors(double s, double gamma, double h);

// {err1, err2} for one stencil; throws CorrectionTooLargeError when err1 >= 1
std::pair<double, double> err_values(const ErrFactors& f, double bracket);

} // namespace ccf
