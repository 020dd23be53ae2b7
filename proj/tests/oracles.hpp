// Test-only oracles, independent of the implementation paths they check:
// centered finite differences of quadrature moments, closed-form harmonic
// integrals, and deterministic in-domain case sampling.
#ifndef MODSTAB_TESTS_ORACLES_HPP
#define MODSTAB_TESTS_ORACLES_HPP

#include "modstab/analysis.hpp"

#include <cmath>
#include <random>

namespace oracles {

using namespace modstab;

struct MomentValues {
    double T, M, eta, U;
};

inline MomentValues quadrature_moments(const WaveParams& p) {
    const QuadraturePolynomial poly = build_poly(p);
    const MomentSet ms = moment_set(poly, p);
    return {ms.T, ms.M, ms.eta, ms.U};
}

// centered finite differences of (T, M, eta, U) with respect to
// (E, kappa, omega, zeta), step 1e-5 * parameter scale, Richardson-extrapolated
// with a half step so the oracle's truncation error stays well under the
// 1e-6 comparison tolerance
inline Eigen::Matrix4d fd_jacobian(const WaveParams& p) {
    auto centered = [&](double step_scale) {
        Eigen::Matrix4d fd;
        const std::array<double, 4> base{p.E, p.kappa, p.omega, p.zeta};
        for (int c = 0; c < 4; ++c) {
            const double h = step_scale * std::max(1.0, std::abs(base[c]));
            WaveParams pp = p, pm = p;
            double* fields_p[4] = {&pp.E, &pp.kappa, &pp.omega, &pp.zeta};
            double* fields_m[4] = {&pm.E, &pm.kappa, &pm.omega, &pm.zeta};
            *fields_p[c] += h;
            *fields_m[c] -= h;
            const MomentValues vp = quadrature_moments(pp);
            const MomentValues vm = quadrature_moments(pm);
            fd(0, c) = (vp.T - vm.T) / (2 * h);
            fd(1, c) = (vp.M - vm.M) / (2 * h);
            fd(2, c) = (vp.eta - vm.eta) / (2 * h);
            fd(3, c) = (vp.U - vm.U) / (2 * h);
        }
        return fd;
    };
    const Eigen::Matrix4d full = centered(1e-5);
    const Eigen::Matrix4d half = centered(5e-6);
    return (4.0 * half - full) / 3.0;
}

// max over entries of |a - b| / max(|a|, |b|, floor), floor keeping near-zero
// entries from blowing the ratio up
inline double rel_err(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b) {
    const double floor = 1e-6 * std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double d = std::abs(a(i, j) - b(i, j));
            const double s = std::max({std::abs(a(i, j)), std::abs(b(i, j)), floor});
            worst = std::max(worst, d / s);
        }
    return worst;
}

inline double rel(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// uniformly sampled case point, margin away from the domain boundaries
inline CaseId random_case(CaseId::Family f, std::mt19937& rng, double margin = 0.05) {
    std::uniform_real_distribution<double> un(margin, 1.0 - margin);
    return domain_point(f, un(rng), un(rng));
}

inline const std::array<CaseId::Family, 5>& all_families() {
    static const std::array<CaseId::Family, 5> fams{
        CaseId::Family::CubicFocusing, CaseId::Family::CubicDefocusing,
        CaseId::Family::QuinticFocusing4, CaseId::Family::QuinticFocusing2,
        CaseId::Family::QuinticDefocusing};
    return fams;
}

// harmonic limit zeta = 0: P = -kappa^2 + 2Ez - omega z^2, everything closed form
struct Harmonic {
    double E, kappa, omega;
    bool valid() const { return omega > 0 && kappa > 0 && E * E > omega * kappa * kappa; }
    double T() const { return M_PI / std::sqrt(omega); }
    double M() const { return M_PI * E / std::pow(omega, 1.5); }
    double eta() const { return M_PI; }
    double r1() const { return (E - std::sqrt(E * E - omega * kappa * kappa)) / omega; }
    double r2() const { return (E + std::sqrt(E * E - omega * kappa * kappa)) / omega; }
    WaveParams params() const { return {E, kappa, omega, 0.0, NonlinearitySpec::cubic()}; }
};

// multiset distance: largest over a of the distance to the closest b (and back)
inline double hausdorff(const std::vector<std::complex<double>>& a,
                        const std::vector<std::complex<double>>& b) {
    auto one_way = [](const auto& xs, const auto& ys) {
        double worst = 0.0;
        for (const auto& x : xs) {
            double best = 1e300;
            for (const auto& y : ys) best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_way(a, b), one_way(b, a));
}

} // namespace oracles

#endif
