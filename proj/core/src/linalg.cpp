#include "rcons/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rcons/errors.hpp"

namespace rcons {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::ones(int r, int c) {
    Mat m(r, c);
    std::fill(m.a.begin(), m.a.end(), 1.0);
    return m;
}

Mat Mat::transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

double Mat::frobenius() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

Mat operator+(const Mat& x, const Mat& y) {
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

Mat operator-(const Mat& x, const Mat& y) {
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const double xv = x(i, k);
            if (xv == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += xv * y(k, j);
        }
    }
    return r;
}

Mat operator*(double s, const Mat& x) {
    Mat r = x;
    for (double& v : r.a) v *= s;
    return r;
}

namespace {

// LU with partial pivoting, factorization in place. Returns false if a pivot
// collapses to (relative) zero.
bool lu_factor(Mat& m, std::vector<int>& piv, double rel_tol) {
    const int n = m.rows;
    piv.resize(n);
    std::iota(piv.begin(), piv.end(), 0);
    const double scale = std::max(m.max_abs(), 1e-300);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::fabs(m(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best <= rel_tol * scale) return false;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            std::swap(piv[k], piv[p]);
        }
        const double inv = 1.0 / m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = m(i, k) * inv;
            m(i, k) = f;
            if (f == 0.0) continue;
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return true;
}

} // namespace

Mat solve(Mat a, Mat b) {
    if (a.rows != a.cols || a.rows != b.rows)
        throw std::runtime_error("solve: dimension mismatch");
    const int n = a.rows;
    std::vector<int> piv;
    if (!lu_factor(a, piv, 1e-300))
        throw std::runtime_error("solve: singular matrix");
    Mat x(n, b.cols);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < b.cols; ++j) x(i, j) = b(piv[i], j);
    // forward
    for (int i = 1; i < n; ++i)
        for (int k = 0; k < i; ++k) {
            const double f = a(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j < x.cols; ++j) x(i, j) -= f * x(k, j);
        }
    // backward
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) {
            const double f = a(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j < x.cols; ++j) x(i, j) -= f * x(k, j);
        }
        const double inv = 1.0 / a(i, i);
        for (int j = 0; j < x.cols; ++j) x(i, j) *= inv;
    }
    return x;
}

bool is_numerically_singular(Mat a, double rel_tol) {
    std::vector<int> piv;
    return !lu_factor(a, piv, rel_tol);
}

SymEigen sym_eigen(Mat a, bool want_vectors) {
    const int n = a.rows;
    Mat v;
    if (want_vectors) v = Mat::identity(n);

    auto offdiag_norm2 = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return s;
    };

    const double total = std::max(a.frobenius(), 1e-300);
    const double stop = 1e-28 * total * total;
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (2.0 * offdiag_norm2() <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                if (want_vectors) {
                    for (int k = 0; k < n; ++k) {
                        const double vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp - s * vkq;
                        v(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    SymEigen out;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = a(i, i);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return out.values[x] < out.values[y]; });
    std::vector<double> sorted(n);
    for (int i = 0; i < n; ++i) sorted[i] = out.values[order[i]];
    out.values = std::move(sorted);
    if (want_vectors) {
        out.vectors = Mat(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

namespace {

// Row/column norm balancing by radix powers. Improves QR eigenvalue accuracy
// for badly scaled inputs; a no-op for the near-orthogonal matrices common in
// the tests.
void balance(Mat& a) {
    const int n = a.rows;
    const double radix = 2.0, sq = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::fabs(a(j, i));
                r += std::fabs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0, s = c + r;
            while (c < g) { f *= radix; c *= sq; }
            g = r * radix;
            while (c > g) { f /= radix; c /= sq; }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double ginv = 1.0 / f;
                for (int j = 0; j < n; ++j) a(i, j) *= ginv;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form.
void to_hessenberg(Mat& a) {
    const int n = a.rows;
    for (int k = 1; k < n - 1; ++k) {
        // eliminate column k-1 below row k
        double scale = 0.0;
        for (int i = k; i < n; ++i) scale += std::fabs(a(i, k - 1));
        if (scale == 0.0) continue;
        std::vector<double> u(n, 0.0);
        double h = 0.0;
        for (int i = k; i < n; ++i) {
            u[i] = a(i, k - 1) / scale;
            h += u[i] * u[i];
        }
        double g = std::sqrt(h);
        if (u[k] > 0.0) g = -g;
        h -= u[k] * g;
        u[k] -= g;
        if (h == 0.0) continue;
        // A <- P A P with P = I - u u^T / h
        for (int j = 0; j < n; ++j) {
            double f = 0.0;
            for (int i = k; i < n; ++i) f += u[i] * a(i, j);
            f /= h;
            for (int i = k; i < n; ++i) a(i, j) -= f * u[i];
        }
        for (int i = 0; i < n; ++i) {
            double f = 0.0;
            for (int j = k; j < n; ++j) f += a(i, j) * u[j];
            f /= h;
            for (int j = k; j < n; ++j) a(i, j) -= f * u[j];
        }
        a(k, k - 1) = scale * g;
        for (int i = k + 1; i < n; ++i) a(i, k - 1) = 0.0;
    }
}

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
std::vector<std::complex<double>> hqr(Mat& a) {
    const int n = a.rows;
    std::vector<std::complex<double>> wri(n);
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(a(i, j));
    if (anorm == 0.0) return wri; // zero matrix

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(a(l, l - 1)) <= 1e-16 * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                wri[nn--] = x + t;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + (p >= 0.0 ? z : -z);
                        wri[nn - 1] = wri[nn] = x + z;
                        if (z != 0.0) wri[nn] = x - w / z;
                    } else {
                        wri[nn] = std::complex<double>(x + p, -z);
                        wri[nn - 1] = std::conj(wri[nn]);
                    }
                    nn -= 2;
                } else {
                    if (its == 60)
                        throw NonConvergence("eigenvalues: QR iteration stalled");
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0, s = 0.0;
                    if (its == 10 || its == 20 || its == 30 || its == 40 || its == 50) {
                        // exceptional shift
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        const double v = std::fabs(p) * (std::fabs(a(m - 1, m - 1)) +
                                                         std::fabs(z) + std::fabs(a(m + 1, m + 1)));
                        if (u <= 1e-16 * v) break;
                    }
                    for (int i = m; i < nn - 1; ++i) {
                        a(i + 2, i) = 0.0;
                        if (i != m) a(i + 2, i - 1) = 0.0;
                    }
                    for (int k = m; k < nn; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k + 1 != nn) r = a(k + 2, k - 1);
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = std::sqrt(p * p + q * q + r * r);
                        if (p < 0.0) s = -s;
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            p = a(k, j) + q * a(k + 1, j);
                            if (k + 1 != nn) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k + 1 != nn) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return wri;
}

} // namespace

std::vector<std::complex<double>> eigenvalues(Mat a) {
    if (a.rows != a.cols) throw std::runtime_error("eigenvalues: matrix not square");
    if (a.rows == 0) return {};
    if (a.rows == 1) return {std::complex<double>(a(0, 0), 0.0)};
    balance(a);
    to_hessenberg(a);
    return hqr(a);
}

double spectral_abscissa(const Mat& a) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& ev : eigenvalues(a)) m = std::max(m, ev.real());
    return m;
}

double transfer_sigma_max(const Mat& a, const Mat& b, const Mat& c, const Mat& d, double omega) {
    const int n = a.rows, m = b.cols, p = c.rows;
    // (i w I - A) X = B as a real 2n x 2n system
    Mat lhs(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            lhs(i, j) = -a(i, j);
            lhs(n + i, n + j) = -a(i, j);
        }
        lhs(i, n + i) = -omega;
        lhs(n + i, i) = omega;
    }
    Mat rhs(2 * n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) rhs(i, j) = b(i, j);
    const Mat x = solve(std::move(lhs), std::move(rhs));
    Mat xr(n, m), xi(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            xr(i, j) = x(i, j);
            xi(i, j) = x(n + i, j);
        }
    Mat gr = c * xr + d;
    Mat gi = c * xi;

    // sigma_max via the Hermitian Gram matrix of the smaller side, embedded as
    // a real symmetric matrix of twice the size.
    const bool use_cols = m <= p;
    const int k = use_cols ? m : p;
    Mat re(k, k), im(k, k);
    if (use_cols) {
        Mat grt = gr.transpose(), git = gi.transpose();
        re = grt * gr + git * gi;
        Mat q = grt * gi - git * gr;
        im = q;
    } else {
        Mat grt = gr.transpose(), git = gi.transpose();
        re = gr * grt + gi * git;
        im = gi * grt - gr * git;
    }
    Mat emb(2 * k, 2 * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            emb(i, j) = re(i, j);
            emb(k + i, k + j) = re(i, j);
            emb(i, k + j) = -im(i, j);
            emb(k + i, j) = im(i, j);
        }
    const SymEigen se = sym_eigen(std::move(emb), false);
    const double top = se.values.empty() ? 0.0 : se.values.back();
    return std::sqrt(std::max(top, 0.0));
}

} // namespace rcons
