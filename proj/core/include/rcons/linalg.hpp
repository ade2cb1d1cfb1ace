#pragma once

#include <complex>
#include <vector>

namespace rcons {

/// Dense row-major matrix. Sizes in this project stay small (a few hundred
/// rows at most), so everything below is plain O(n^3) with no blocking.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static Mat identity(int n);
    static Mat ones(int r, int c);

    Mat transpose() const;
    double max_abs() const;
    double frobenius() const;
};

Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Mat& x, const Mat& y);
Mat operator*(double s, const Mat& x);

/// Solves A X = B by LU with partial pivoting. Throws SingularMiddleBlock-free
/// std::runtime_error on exact singularity.
Mat solve(Mat a, Mat b);

/// Rank-revealing-enough check used before inverting small blocks.
bool is_numerically_singular(Mat a, double rel_tol = 1e-13);

struct SymEigen {
    std::vector<double> values; ///< ascending
    Mat vectors;                ///< column k pairs with values[k]; empty if not requested
};

/// Cyclic Jacobi for symmetric matrices. Accurate to ~1e-14 * ||A|| which is
/// plenty for the certificate and quadrature work here.
SymEigen sym_eigen(Mat a, bool want_vectors);

/// Eigenvalues of a general real matrix (balance + Hessenberg + shifted QR).
std::vector<std::complex<double>> eigenvalues(Mat a);

/// max over eigenvalues of Re(lambda).
double spectral_abscissa(const Mat& a);

/// Largest singular value of the complex matrix D + C (i*omega*I - A)^{-1} B.
double transfer_sigma_max(const Mat& a, const Mat& b, const Mat& c, const Mat& d, double omega);

} // namespace rcons
