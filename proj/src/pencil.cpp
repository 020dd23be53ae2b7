#include "modstab/pencil.hpp"

#include "modstab/errors.hpp"
#include "modstab/polyroots.hpp"

#include <algorithm>
#include <cmath>

namespace modstab {

std::array<double, 5> quartic_coeffs(const PencilMatrices& p) {
    // With lambda = -i s the diagonal entries become A(s) = -s^2 a2 + s a1 + a0
    // (a1 the imaginary part of the M1 entry), so det = A*D - B^2 has real
    // coefficients. Returned highest degree first: c4 s^4 + ... + c0.
    const double a2 = p.M2(0, 0), b2 = p.M2(0, 1), d2 = p.M2(1, 1);
    const double a1 = p.M1_imag(0, 0), b1 = p.M1_imag(0, 1), d1 = p.M1_imag(1, 1);
    const double a0 = p.M0(0, 0), b0 = p.M0(0, 1), d0 = p.M0(1, 1);

    std::array<double, 5> c{};
    c[0] = a2 * d2 - b2 * b2;
    c[1] = -(a2 * d1 + d2 * a1) + 2 * b2 * b1;
    c[2] = -(a2 * d0 + d2 * a0) + a1 * d1 + 2 * b2 * b0 - b1 * b1;
    c[3] = a1 * d0 + d1 * a0 - 2 * b1 * b0;
    c[4] = a0 * d0 - b0 * b0;

    double norm = 0.0;
    for (double v : c) norm = std::max(norm, std::abs(v));
    const double mscale = p.M2.cwiseAbs().maxCoeff() + p.M1_imag.cwiseAbs().maxCoeff() +
                          p.M0.cwiseAbs().maxCoeff();
    if (norm <= 1e-13 * mscale * mscale)
        throw DegeneratePencil("all quartic coefficients vanish relative to the pencil scale");
    return c;
}

namespace {

// q(lambda) = c4 l^4 - i c3 l^3 - c2 l^2 + i c1 l + c0 (image of the s-quartic)
std::complex<double> lambda_poly(const std::array<double, 5>& c, std::complex<double> l) {
    const std::complex<double> i(0.0, 1.0);
    return ((((c[0] * l - i * c[1]) * l - c[2]) * l + i * c[3]) * l) + c[4];
}

std::complex<double> lambda_poly_deriv(const std::array<double, 5>& c, std::complex<double> l) {
    const std::complex<double> i(0.0, 1.0);
    return ((4.0 * c[0] * l - 3.0 * i * c[1]) * l - 2.0 * c[2]) * l + i * c[3];
}

} // namespace

QuarticRoots solve_quartic(const std::array<double, 5>& c) {
    double norm = 0.0;
    for (double v : c) norm = std::max(norm, std::abs(v));
    if (norm == 0.0) throw DegeneratePencil("zero pencil");

    QuarticRoots out;
    // low-to-high for the root finder
    std::vector<double> low{c[4], c[3], c[2], c[1], c[0]};
    if (std::abs(c[0]) < 1e-13 * norm) {
        out.deflated = true;
        low.pop_back();
        while (low.size() > 1 && std::abs(low.back()) < 1e-13 * norm) low.pop_back();
    }
    const auto sroots = poly_roots(low);

    for (const auto& s : sroots) {
        std::complex<double> l = std::complex<double>(0.0, -1.0) * s;  // lambda = -i s
        const auto p = lambda_poly(c, l);
        const auto dp = lambda_poly_deriv(c, l);
        if (std::abs(dp) > 1e-30) {
            const auto ln = l - p / dp;
            if (std::abs(lambda_poly(c, ln)) <= std::abs(p)) l = ln;
        }
        out.lambda.push_back(l);
        out.residuals.push_back(std::abs(lambda_poly(c, l)));
    }
    std::sort(out.lambda.begin(), out.lambda.end(), [](const auto& a, const auto& b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });
    return out;
}

StabilityReport classify(std::span<const std::complex<double>> roots, double threshold) {
    StabilityReport rep;
    std::vector<std::complex<double>> rs(roots.begin(), roots.end());
    std::sort(rs.begin(), rs.end(), [](const auto& a, const auto& b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });

    // pair each root with the member closest to its reflection -conj(r);
    // a self-pair snaps the root onto the imaginary axis
    std::vector<bool> used(rs.size(), false);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (used[i]) continue;
        const auto target = -std::conj(rs[i]);
        std::size_t best = i;
        double best_d = std::abs(rs[i] - target);
        for (std::size_t j = i + 1; j < rs.size(); ++j) {
            if (used[j]) continue;
            const double dj = std::abs(rs[j] - target);
            if (dj < best_d) { best_d = dj; best = j; }
        }
        used[i] = used[best] = true;
        if (best == i) {
            rep.roots.push_back({0.0, rs[i].imag()});
        } else {
            const auto mu = 0.5 * (rs[i] - std::conj(rs[best]));
            rep.roots.push_back(mu);
            rep.roots.push_back(-std::conj(mu));
        }
    }

    for (const auto& l : rep.roots) {
        const double s = std::max(1.0, std::abs(l));
        const bool re0 = std::abs(l.real()) <= threshold * s;
        const bool im0 = std::abs(l.imag()) <= threshold * s;
        if (!re0) ++rep.unstable_dim;
        if (re0) ++rep.n_imag;
        else if (im0) ++rep.n_real;
        else ++rep.n_complex;
    }
    return rep;
}

} // namespace modstab
