#include "rcons/quadrature.hpp"

#include <cmath>

#include "rcons/gpc.hpp"
#include "rcons/linalg.hpp"

namespace rcons {

namespace {

// Golub-Welsch nodes: eigenvalues of the symmetric tridiagonal recurrence
// matrix, polished by Newton steps on the orthonormal polynomial. Weights
// come from the Christoffel function 1 / sum_k p_k(x)^2, a sum of positive
// terms, which keeps even the tiny extreme weights accurate in relative
// terms (squared first eigenvector components lose several digits there).
QuadratureRule from_recurrence(const std::vector<double>& offdiag, QuadFamily family) {
    const int n = static_cast<int>(offdiag.size()) + 1;
    if (n == 1) {
        QuadratureRule rule;
        rule.family = family;
        rule.nodes = {0.0};
        rule.weights = {1.0};
        return rule;
    }
    Mat j(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        j(i, i + 1) = offdiag[i];
        j(i + 1, i) = offdiag[i];
    }
    const SymEigen eig = sym_eigen(std::move(j), false);

    // orthonormal values p_0..p_n and derivatives at x
    auto evaluate = [&](double x, std::vector<double>& p, std::vector<double>& dp) {
        p[0] = 1.0;
        dp[0] = 0.0;
        p[1] = x / offdiag[0];
        dp[1] = 1.0 / offdiag[0];
        for (int k = 1; k < n; ++k) {
            const double b_next = k < n - 1 ? offdiag[k] : 1.0; // last step unnormalized
            p[k + 1] = (x * p[k] - offdiag[k - 1] * p[k - 1]) / b_next;
            dp[k + 1] = (p[k] + x * dp[k] - offdiag[k - 1] * dp[k - 1]) / b_next;
        }
    };

    QuadratureRule rule;
    rule.family = family;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    std::vector<double> p(n + 1), dp(n + 1);
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = eig.values[i];
        if (n > 1) {
            for (int it = 0; it < 4; ++it) {
                evaluate(x, p, dp);
                if (dp[n] == 0.0) break;
                x -= p[n] / dp[n];
            }
        } else {
            x = 0.0;
        }
        evaluate(x, p, dp);
        double christoffel = 0.0;
        for (int k = 0; k < n; ++k) christoffel += p[k] * p[k];
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / christoffel;
        wsum += rule.weights[i];
    }
    for (double& w : rule.weights) w /= wsum;
    return rule;
}

} // namespace

QuadratureRule gauss_hermite(int points, double mu, double sigma2) {
    if (points < 1) throw ConfigError("quadrature needs at least one point");
    if (!(sigma2 > 0.0)) throw ConfigError("gauss_hermite: sigma2 must be > 0");
    // probabilists' recurrence He_{k+1} = x He_k - k He_{k-1}
    std::vector<double> off(points > 1 ? points - 1 : 0);
    for (int k = 1; k < points; ++k) off[k - 1] = std::sqrt(static_cast<double>(k));
    QuadratureRule rule = from_recurrence(off, QuadFamily::GaussHermite);
    const double sigma = std::sqrt(sigma2);
    for (double& x : rule.nodes) x = mu + sigma * x;
    return rule;
}

QuadratureRule gauss_legendre(int points, double a, double b) {
    if (points < 1) throw ConfigError("quadrature needs at least one point");
    if (!(a < b)) throw ConfigError("gauss_legendre: requires a < b");
    // monic Legendre recurrence on [-1, 1]: beta_k = k^2 / (4k^2 - 1)
    std::vector<double> off(points > 1 ? points - 1 : 0);
    for (int k = 1; k < points; ++k) {
        const double kk = static_cast<double>(k);
        off[k - 1] = std::sqrt(kk * kk / (4.0 * kk * kk - 1.0));
    }
    QuadratureRule rule = from_recurrence(off, QuadFamily::GaussLegendre);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (double& x : rule.nodes) x = mid + half * x;
    return rule;
}

QuadratureRule rule_for(const Uncertainty& u, int points) {
    return u.kind == Uncertainty::Kind::Gaussian ? gauss_hermite(points, u.mu, u.sigma2)
                                                 : gauss_legendre(points, u.a, u.b);
}

BasisMoments basis_moments(const GpcBasis& basis, const std::vector<QuadratureRule>& rules) {
    const int z = basis.dims();
    if (static_cast<int>(rules.size()) != z)
        throw ConfigError("basis_moments: one rule per input dimension required");
    const int m = basis.order;
    BasisMoments mom;
    mom.m0.assign(z, std::vector<double>(m + 1, 0.0));
    mom.m1.assign(z, std::vector<double>(m + 1, 0.0));
    mom.m2.assign(z, std::vector<double>(m + 1, 0.0));
    for (int j = 0; j < z; ++j) {
        if (static_cast<int>(rules[j].nodes.size()) < m + 1)
            throw ConfigError("basis_moments: rule has fewer points than order + 1");
        for (int k = 0; k <= m; ++k) {
            double s0 = 0.0, s1 = 0.0, s2 = 0.0;
            for (std::size_t l = 0; l < rules[j].nodes.size(); ++l) {
                const double theta = rules[j].nodes[l];
                const double w = rules[j].weights[l];
                const double phi = basis.eval(j, k, theta);
                s0 += w * phi;
                s1 += w * theta * phi;
                s2 += w * phi * phi;
            }
            mom.m0[j][k] = s0;
            mom.m1[j][k] = s1;
            mom.m2[j][k] = s2;
        }
    }
    return mom;
}

} // namespace rcons
