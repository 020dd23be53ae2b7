#include "modstab/polyroots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modstab {

double poly_eval(std::span<const double> c, double z) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

std::complex<double> poly_eval(std::span<const double> c, std::complex<double> z) {
    std::complex<double> v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

std::vector<double> poly_derivative(std::span<const double> c) {
    std::vector<double> d;
    for (std::size_t j = 1; j < c.size(); ++j) d.push_back(double(j) * c[j]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

namespace {

// Parlett-Reinsch balancing: equalize row/column 1-norms by powers of 2.
void balance(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::abs(a(i, j));
                c += std::abs(a(j, i));
            }
            if (r == 0.0 || c == 0.0) continue;
            double f = 1.0;
            const double s = r + c;
            while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
            while (c > r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
            if (c + r < 0.95 * s) {
                converged = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

} // namespace

std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && coeffs[deg] == 0.0) --deg;
    if (deg < 1) return {};

    const double lead = coeffs[deg];
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / lead;
    balance(comp);

    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(deg);
    for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()[i];

    const auto dcoef = poly_derivative(coeffs.first(deg + 1));
    for (auto& r : roots) {
        const std::complex<double> p = poly_eval(coeffs.first(deg + 1), r);
        const std::complex<double> dp = poly_eval(dcoef, r);
        if (std::abs(dp) > 1e-3 * std::abs(p) / (std::abs(r) + 1.0)) {
            const std::complex<double> rn = r - p / dp;
            if (std::abs(poly_eval(coeffs.first(deg + 1), rn)) <= std::abs(p)) r = rn;
        }
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

} // namespace modstab
