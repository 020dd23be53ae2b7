#include "modstab/modulation.hpp"

#include "modstab/errors.hpp"

#include <cmath>
#include <sstream>

namespace modstab {

namespace {

constexpr double kGenericityTol = 1e-9;
constexpr double kMarginalTol = 1e-8;

// cancellation scale for sigma = {T,eta}_{E,kappa}: the bracket's own terms,
// floored by the dimensionally matching value product |T||eta|/(|E| kappa) so
// the all-derivatives-vanish harmonic limit is still flagged
double sigma_scale_of(const DerivativeSet& d, const MomentSet& ms, const WaveParams& p) {
    const double pE = std::max(std::abs(p.E), 1e-30);
    const double pk = std::max(p.kappa, 1e-30);
    return std::abs(d.dTdE() * d.dEtadkappa()) + std::abs(d.dTdkappa() * d.dEtadE()) +
           std::abs(ms.T * ms.eta) / (pE * pk);
}

void require_generic(const KernelCoefficients& c, const DerivativeSet& d, const MomentSet& ms,
                     const WaveParams& p) {
    const double scale = sigma_scale_of(d, ms, p);
    if (std::abs(c.sigma) <= kGenericityTol * scale) {
        std::ostringstream os;
        os << "sigma = {T,eta}_{E,kappa} = " << c.sigma
           << " vanishes within tolerance; kernel is higher dimensional";
        throw NonGenericKernel(os.str());
    }
}

void fill_M2(const KernelCoefficients& c, const DerivativeSet& d, const MomentSet& ms,
             PencilMatrices& p) {
    const double a2 = -c.sigma / 2 * (c.gamma * d.dMdE() + c.rho * d.dMdkappa() + c.sigma * d.dMdomega());
    const double b2 = -c.sigma * c.rho * ms.T / 2;
    const double d2 = -c.sigma / 2 * (c.nu * ms.T + c.sigma * ms.M / 2);
    p.M2 << a2, b2, b2, d2;
}

} // namespace

KernelCoefficients kernel_coefficients(const DerivativeSet& d, const MomentSet& ms) {
    KernelCoefficients c{};
    c.sigma = d.dTdE() * d.dEtadkappa() - d.dTdkappa() * d.dEtadE();
    c.gamma = d.dTdkappa() * d.dEtadomega() - d.dTdomega() * d.dEtadkappa();
    c.rho = d.dTdomega() * d.dEtadE() - d.dTdE() * d.dEtadomega();
    c.tau = ms.T * d.dTdkappa() / 2;
    c.nu = -ms.T * d.dTdE() / 2;
    c.xi = d.dTdkappa() * d.dEtadzeta() - d.dTdzeta() * d.dEtadkappa();
    c.psi = d.dTdzeta() * d.dEtadE() - d.dTdE() * d.dEtadzeta();
    return c;
}

GenericityReport genericity(const KernelCoefficients& c, const DerivativeSet& d,
                            const MomentSet& ms, const WaveParams& params) {
    GenericityReport g;
    g.sigma = c.sigma;
    g.sigma_scale = sigma_scale_of(d, ms, params);
    g.kernel_generic = std::abs(c.sigma) > kGenericityTol * g.sigma_scale;

    // K second derivatives through T = K_E, M = -2 K_omega, eta = -K_kappa,
    // bordered by (T, 0, 0, -M). The sign of D4 is fixed by the condensation
    // identity det M2 = sigma^3 D4 / 4.
    Eigen::Matrix4d K;
    K << -d.dEtadkappa(), -d.dEtadE(), -d.dEtadomega(), ms.T,
         -d.dEtadE(), d.dTdE(), d.dTdomega(), 0.0,
         -d.dEtadomega(), d.dTdomega(), -d.dMdomega() / 2, 0.0,
         ms.T, 0.0, 0.0, -ms.M;
    g.D4 = -K.determinant();

    double had = 1.0;
    for (int i = 0; i < 4; ++i) had *= K.row(i).norm();
    g.d4_scale = had;
    g.chain_generic = std::abs(g.D4) > kGenericityTol * g.d4_scale;

    PencilMatrices p;
    fill_M2(c, d, ms, p);
    g.det_M2 = p.M2.determinant();
    g.m2_scale = std::abs(p.M2(0, 0) * p.M2(1, 1)) + p.M2(0, 1) * p.M2(0, 1);
    g.chain_marginal = std::abs(g.det_M2) < kMarginalTol * g.m2_scale;
    return g;
}

PencilMatrices longitudinal_pencil(const KernelCoefficients& c, const DerivativeSet& d,
                                   const MomentSet& ms, const WaveParams& params) {
    require_generic(c, d, ms, params);
    PencilMatrices p;
    p.perturbation = Perturbation::Longitudinal;
    fill_M2(c, d, ms, p);

    const double s = c.sigma, T = ms.T;
    const double a1 = s * T * 2 * c.rho;
    const double b1 = s * T * (c.nu + c.gamma);
    const double d1 = s * T * (2 * c.tau + s * params.kappa);
    p.M1_imag << a1, b1, b1, d1;

    const double a0 = 2 * s * T * c.nu;
    const double b0 = 2 * s * T * c.tau;
    // +zeta*xi: the sign that matches the Galerkin spectrum at every probe
    // point; see the d1/b1 structure above for the companion terms.
    const double d0 = 2 * s * T * (params.omega * c.gamma + params.zeta * c.xi - params.E * s);
    p.M0 << a0, b0, b0, d0;
    return p;
}

PencilMatrices transverse_pencil(const KernelCoefficients& c, const DerivativeSet& d,
                                 const MomentSet& ms, const WaveParams& params,
                                 Perturbation kind) {
    require_generic(c, d, ms, params);
    PencilMatrices p;
    p.perturbation = kind;
    fill_M2(c, d, ms, p);

    const double s = c.sigma;
    const double a0p = -s * s * ms.M;
    const double b0p = -s * s * params.kappa * ms.T;
    const double d0p = -s * s * (2 * params.E * ms.T - params.omega * ms.M - params.zeta * ms.U);
    const double sign = kind == Perturbation::TransverseHyperbolic ? -1.0 : 1.0;
    p.M0 << sign * a0p, sign * b0p, sign * b0p, sign * d0p;
    return p;
}

} // namespace modstab
