#pragma once

// Reference implementations for the test suite, written straight from the
// definitions with plain nested loops and full matrices. Nothing here shares
// code with the library; agreement is the point of the comparison.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct BruteResult {
    double tauCov = 0.0;
    double tauCorr = 0.0;
    double gamma3 = 0.0;
    double gamma4 = 0.0;
    double sigmaX2 = 0.0;
    double sigmaY2 = 0.0;
    std::vector<double> hajek;  // row means of the kernel over the other index
};

using Mat = std::vector<std::vector<double>>;

inline Mat brute_centred(const std::vector<double>& v) {
    std::size_t n = v.size();
    Mat c(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            if (k != l) c[k][l] = v[k] >= v[l] ? 1.0 : -1.0;

    std::vector<double> rm(n, 0.0), cm(n, 0.0);
    double g = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            rm[k] += c[k][l];
            cm[l] += c[k][l];
            g += c[k][l];
        }
    for (std::size_t k = 0; k < n; ++k) {
        rm[k] /= double(n - 1);
        cm[k] /= double(n - 1);
    }
    g /= double(n) * double(n - 1);

    Mat out(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            if (k != l) out[k][l] = c[k][l] - rm[k] - cm[l] + g;
    return out;
}

inline BruteResult brute_tau(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    Mat kx = brute_centred(x);
    Mat ky = brute_centred(y);

    BruteResult r;
    double num = 0.0, sx = 0.0, sy = 0.0, p3 = 0.0, p4 = 0.0;
    r.hajek.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            double z = kx[k][l] * ky[k][l];
            num += z;
            sx += kx[k][l] * kx[k][l];
            sy += ky[k][l] * ky[k][l];
            p3 += z * z * z;
            p4 += z * z * z * z;
            r.hajek[k] += z;
        }
        r.hajek[k] /= double(n - 1);
    }
    double pairs = double(n) * double(n - 1);
    r.tauCov = num / pairs;
    r.gamma3 = p3 / pairs;
    r.gamma4 = p4 / pairs;
    r.sigmaX2 = sx / pairs;
    r.sigmaY2 = sy / pairs;
    r.tauCorr = (sx > 0 && sy > 0) ? num / std::sqrt(sx * sy) : 0.0;
    return r;
}

// Kendall tau_a with strict inequalities in both margins (ties count zero),
// normalised by the number of unordered pairs.
inline double brute_tau_a(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx != 0 && dy != 0) s += (dx > 0) == (dy > 0) ? 1.0 : -1.0;
        }
    return s / (0.5 * double(n) * double(n - 1));
}

// Central-difference gradient of a scalar function of a vector.
template <typename F>
std::vector<double> finite_diff_grad(F f, std::vector<double> theta, double h = 1e-6) {
    std::vector<double> g(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        double t = theta[j];
        theta[j] = t + h;
        double fp = f(theta);
        theta[j] = t - h;
        double fm = f(theta);
        theta[j] = t;
        g[j] = (fp - fm) / (2 * h);
    }
    return g;
}

// Central-difference Hessian of a scalar function of a vector.
template <typename F>
Mat finite_diff_hessian(F f, std::vector<double> theta, double h = 1e-4) {
    std::size_t p = theta.size();
    Mat H(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            std::vector<double> t = theta;
            t[i] += h;
            t[j] += h;
            double fpp = f(t);
            t = theta;
            t[i] += h;
            t[j] -= h;
            double fpm = f(t);
            t = theta;
            t[i] -= h;
            t[j] += h;
            double fmp = f(t);
            t = theta;
            t[i] -= h;
            t[j] -= h;
            double fmm = f(t);
            H[i][j] = (fpp - fpm - fmp + fmm) / (4 * h * h);
        }
    return H;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations applied as
// explicit similarity transforms. Ascending order.
inline std::vector<double> jacobi_eigenvalues(Mat a) {
    std::size_t n = a.size();
    auto rotate = [&](std::size_t p, std::size_t q) {
        double phi = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        double c = std::cos(phi), s = std::sin(phi);
        Mat g(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) g[i][i] = 1.0;
        g[p][p] = c;
        g[p][q] = s;
        g[q][p] = -s;
        g[q][q] = c;
        Mat t(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) t[i][j] += g[k][i] * a[k][j];
        Mat b(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) b[i][j] += t[i][k] * g[k][j];
        a = std::move(b);
    };
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-26) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::fabs(a[p][q]) > 1e-16) rotate(p, q);
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (ev[j] < ev[i]) std::swap(ev[i], ev[j]);
    return ev;
}

}  // namespace oracle
