#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "core.hpp"

namespace kovatlas {

/// Dense row-major matrix, sized for this problem (n <= ~8).
class Mat {
  public:
    Mat() : n_(0), m_(0) {}
    Mat(int rows, int cols) : n_(rows), m_(cols), d_(static_cast<size_t>(rows * cols), 0.0) {}
    static Mat identity(int n) {
        Mat I(n, n);
        for (int i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    double& operator()(int i, int j) { return d_[static_cast<size_t>(i * m_ + j)]; }
    double operator()(int i, int j) const { return d_[static_cast<size_t>(i * m_ + j)]; }
    int rows() const { return n_; }
    int cols() const { return m_; }

    Mat transpose() const {
        Mat t(m_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < m_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        Mat r(n_, o.m_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < m_; ++k) {
                double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (int j = 0; j < o.m_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    std::vector<double> operator*(const std::vector<double>& v) const {
        std::vector<double> r(static_cast<size_t>(n_), 0.0);
        for (int i = 0; i < n_; ++i) {
            double s = 0;
            for (int j = 0; j < m_; ++j) s += (*this)(i, j) * v[static_cast<size_t>(j)];
            r[static_cast<size_t>(i)] = s;
        }
        return r;
    }

    Mat& operator+=(const Mat& o) {
        for (size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
        return *this;
    }
    Mat& operator*=(double s) {
        for (double& x : d_) x *= s;
        return *this;
    }

    double frobenius() const {
        double s = 0;
        for (double x : d_) s += x * x;
        return std::sqrt(s);
    }

  private:
    int n_, m_;
    std::vector<double> d_;
};

namespace detail {

inline double sign_of(double a, double b) { return b >= 0 ? std::abs(a) : -std::abs(a); }

/// In-place balancing by powers of two (norm equilibration).
inline void balance(Mat& a) {
    const int n = a.rows();
    const double radix = 2.0, sqrdx = radix * radix;
    bool last = false;
    while (!last) {
        last = true;
        for (int i = 0; i < n; ++i) {
            double r = 0, c = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c != 0 && r != 0) {
                double g = r / radix, f = 1.0, s = c + r;
                while (c < g) {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while (c > g) {
                    f /= radix;
                    c /= sqrdx;
                }
                if ((c + r) / f < 0.95 * s) {
                    last = false;
                    g = 1.0 / f;
                    for (int j = 0; j < n; ++j) a(i, j) *= g;
                    for (int j = 0; j < n; ++j) a(j, i) *= f;
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form (in place).
inline void hessenberg(Mat& a) {
    const int n = a.rows();
    for (int k = 1; k < n - 1; ++k) {
        double scale = 0;
        for (int i = k; i < n; ++i) scale += std::abs(a(i, k - 1));
        if (scale == 0.0) continue;
        std::vector<double> v(static_cast<size_t>(n), 0.0);
        double sigma = 0;
        for (int i = k; i < n; ++i) {
            v[static_cast<size_t>(i)] = a(i, k - 1) / scale;
            sigma += v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
        }
        double alpha = -sign_of(std::sqrt(sigma), v[static_cast<size_t>(k)]);
        double beta = sigma - alpha * v[static_cast<size_t>(k)];
        if (beta == 0.0) continue;
        v[static_cast<size_t>(k)] -= alpha;
        // A <- P A P with P = I - v v^T / beta
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int i = k; i < n; ++i) s += v[static_cast<size_t>(i)] * a(i, j);
            s /= beta;
            for (int i = k; i < n; ++i) a(i, j) -= s * v[static_cast<size_t>(i)];
        }
        for (int i = 0; i < n; ++i) {
            double s = 0;
            for (int j = k; j < n; ++j) s += a(i, j) * v[static_cast<size_t>(j)];
            s /= beta;
            for (int j = k; j < n; ++j) a(i, j) -= s * v[static_cast<size_t>(j)];
        }
        a(k, k - 1) = scale * alpha;
        for (int i = k + 1; i < n; ++i) a(i, k - 1) = 0.0;
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
inline std::vector<std::complex<double>> hqr(Mat& a) {
    const int n = a.rows();
    std::vector<std::complex<double>> eig;
    eig.reserve(static_cast<size_t>(n));
    const double eps = 2.3e-16;
    double anorm = 0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
    if (anorm == 0.0) {
        for (int i = 0; i < n; ++i) eig.emplace_back(0.0, 0.0);
        return eig;
    }
    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                eig.emplace_back(x + t, 0.0);
                nn--;
                break;
            }
            double y = a(nn - 1, nn - 1);
            double w = a(nn, nn - 1) * a(nn - 1, nn);
            if (l == nn - 1) {
                double p = 0.5 * (y - x);
                double q = p * p + w;
                double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    z = p + sign_of(z, p);
                    eig.emplace_back(x + z, 0.0);
                    eig.emplace_back(std::abs(z) > 0 ? x - w / z : x + z, 0.0);
                } else {
                    eig.emplace_back(x + p, z);
                    eig.emplace_back(x + p, -z);
                }
                nn -= 2;
                break;
            }
            // No deflation yet: one double-shift sweep.
            double p = 0, q = 0, r = 0, z = 0;
            if (its == 30) {
                // Accept the 2x2 trailing block anyway; accuracy degrades but
                // this is unreachable for the well-scaled matrices used here.
                its = 0;
            }
            if (its == 10 || its == 20) {
                t += x;
                for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                y = x = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++its;
            int m;
            for (m = nn - 2; m >= l; --m) {
                z = a(m, m);
                double rr = x - z;
                double ss = y - z;
                p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
                q = a(m + 1, m + 1) - z - rr - ss;
                r = a(m + 2, m + 1);
                double sc = std::abs(p) + std::abs(q) + std::abs(r);
                p /= sc;
                q /= sc;
                r /= sc;
                if (m == l) break;
                double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                          std::abs(a(m + 1, m + 1)));
                if (u <= eps * v) break;
            }
            for (int i = m + 2; i <= nn; ++i) {
                a(i, i - 2) = 0.0;
                if (i != m + 2) a(i, i - 3) = 0.0;
            }
            for (int k = m; k <= nn - 1; ++k) {
                if (k != m) {
                    p = a(k, k - 1);
                    q = a(k + 1, k - 1);
                    r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x != 0.0) {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                if (s == 0.0) continue;
                if (k == m) {
                    if (l != m) a(k, k - 1) = -a(k, k - 1);
                } else {
                    a(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                double yy = q / s;
                z = r / s;
                q /= p;
                r /= p;
                for (int j = k; j <= nn; ++j) {
                    double pp = a(k, j) + q * a(k + 1, j);
                    if (k != nn - 1) {
                        pp += r * a(k + 2, j);
                        a(k + 2, j) -= pp * z;
                    }
                    a(k + 1, j) -= pp * yy;
                    a(k, j) -= pp * x;
                }
                int mmin = (nn < k + 3) ? nn : k + 3;
                for (int i = l; i <= mmin; ++i) {
                    double pp = x * a(i, k) + yy * a(i, k + 1);
                    if (k != nn - 1) {
                        pp += z * a(i, k + 2);
                        a(i, k + 2) -= pp * r;
                    }
                    a(i, k + 1) -= pp * q;
                    a(i, k) -= pp;
                }
            }
        } while (true);
    }
    return eig;
}

}  // namespace detail

/// Eigenvalues of a small real matrix (balanced Hessenberg + shifted QR).
inline std::vector<std::complex<double>> eigenvalues(Mat a) {
    detail::balance(a);
    detail::hessenberg(a);
    return detail::hqr(a);
}

/// Orthonormal basis of the column space via column-pivoted Householder QR.
/// Returns the first `rank` columns of Q, with rank decided by |R_ii| against
/// rel_tol * |R_00|.
inline Mat column_space(const Mat& a, double rel_tol = 1e-9, int max_rank = -1) {
    const int n = a.rows(), m = a.cols();
    Mat r = a;
    Mat q = Mat::identity(n);
    std::vector<int> perm(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) perm[static_cast<size_t>(j)] = j;
    std::vector<double> colnorm(static_cast<size_t>(m), 0.0);
    int kmax = std::min(n, m);
    double r00 = 0;
    int rank = 0;
    for (int k = 0; k < kmax; ++k) {
        // Pivot: largest remaining column norm.
        int piv = k;
        double best = -1;
        for (int j = k; j < m; ++j) {
            double s = 0;
            for (int i = k; i < n; ++i) s += r(i, j) * r(i, j);
            colnorm[static_cast<size_t>(j)] = std::sqrt(s);
            if (colnorm[static_cast<size_t>(j)] > best) {
                best = colnorm[static_cast<size_t>(j)];
                piv = j;
            }
        }
        if (piv != k) {
            for (int i = 0; i < n; ++i) std::swap(r(i, k), r(i, piv));
            std::swap(perm[static_cast<size_t>(k)], perm[static_cast<size_t>(piv)]);
        }
        if (k == 0) r00 = best;
        if (best <= rel_tol * std::max(r00, 1e-300)) break;
        rank = k + 1;
        // Householder zeroing column k below the diagonal.
        std::vector<double> v(static_cast<size_t>(n), 0.0);
        double sigma = 0;
        for (int i = k; i < n; ++i) {
            v[static_cast<size_t>(i)] = r(i, k);
            sigma += v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
        }
        double alpha = -detail::sign_of(std::sqrt(sigma), v[static_cast<size_t>(k)]);
        double beta = sigma - alpha * v[static_cast<size_t>(k)];
        if (beta == 0.0) continue;
        v[static_cast<size_t>(k)] -= alpha;
        for (int j = k; j < m; ++j) {
            double s = 0;
            for (int i = k; i < n; ++i) s += v[static_cast<size_t>(i)] * r(i, j);
            s /= beta;
            for (int i = k; i < n; ++i) r(i, j) -= s * v[static_cast<size_t>(i)];
        }
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int i = k; i < n; ++i) s += v[static_cast<size_t>(i)] * q(j, i);
            s /= beta;
            for (int i = k; i < n; ++i) q(j, i) -= s * v[static_cast<size_t>(i)];
        }
        if (max_rank > 0 && rank == max_rank) break;
    }
    Mat basis(n, rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j) basis(i, j) = q(i, j);
    return basis;
}

/// Solve A x = b by Gaussian elimination with partial pivoting (small n).
inline std::vector<double> solve(Mat a, std::vector<double> b) {
    const int n = a.rows();
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(piv)]);
        }
        double d = a(k, k);
        if (std::abs(d) < 1e-300) d = (d >= 0 ? 1e-300 : -1e-300);
        for (int i = k + 1; i < n; ++i) {
            double f = a(i, k) / d;
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(k)];
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[static_cast<size_t>(j)];
        double d = a(i, i);
        if (std::abs(d) < 1e-300) d = (d >= 0 ? 1e-300 : -1e-300);
        x[static_cast<size_t>(i)] = s / d;
    }
    return x;
}

}  // namespace kovatlas
