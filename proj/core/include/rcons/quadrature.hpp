#pragma once

#include <vector>

#include "rcons/model.hpp"

namespace rcons {

struct GpcBasis; // gpc.hpp

enum class QuadFamily { GaussHermite, GaussLegendre };

/// Nodes live in the space of the target distribution and weights sum to one,
/// so rules integrate directly against the probability density.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    QuadFamily family = QuadFamily::GaussHermite;
};

/// Rule exact for polynomials of degree <= 2L-1 under N(mu, sigma2).
QuadratureRule gauss_hermite(int points, double mu, double sigma2);

/// Rule exact for polynomials of degree <= 2L-1 under U(a, b).
QuadratureRule gauss_legendre(int points, double a, double b);

QuadratureRule rule_for(const Uncertainty& u, int points);

template <class F>
double expect(const QuadratureRule& rule, F&& f) {
    double s = 0.0;
    for (std::size_t l = 0; l < rule.nodes.size(); ++l)
        s += rule.weights[l] * f(rule.nodes[l]);
    return s;
}

/// Per input dimension j and basis order k:
///   m0[j][k] = E[Phi_k],  m1[j][k] = E[theta Phi_k],  m2[j][k] = E[Phi_k^2].
struct BasisMoments {
    std::vector<std::vector<double>> m0, m1, m2;
};

/// Requires rules matched to the basis families with at least order+1 points.
BasisMoments basis_moments(const GpcBasis& basis, const std::vector<QuadratureRule>& rules);

} // namespace rcons
