// numerics.hpp — Special functions and quadrature rules shared across modules.

#pragma once

#include <vector>

namespace macroreal::numerics {

// log of binomial(n, k) via lgamma; safe for n up to a few thousand.
double log_binomial(int n, int k);

// Regularized incomplete beta I_x(a, b) = B(x; a, b) / B(a, b), x in [0, 1].
// Continued-fraction evaluation (modified Lentz), symmetric switch at the
// distribution mean for fast convergence.
double regularized_incomplete_beta(double a, double b, double x);

struct QuadratureRule {
    std::vector<double> nodes;    // in (-1, 1), ascending
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_legendre(int n);

}  // namespace macroreal::numerics
