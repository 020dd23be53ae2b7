#ifndef MODSTAB_MODULATION_HPP
#define MODSTAB_MODULATION_HPP

#include "modstab/picard_fuchs.hpp"

#include <Eigen/Dense>

namespace modstab {

enum class Perturbation { Longitudinal, TransverseElliptic, TransverseHyperbolic };

// The seven scalars entering the normal form, each a 2x2 Jacobian bracket
// {A,B}_{a,b} = A_a B_b - A_b B_a of period/quasi-momentum derivatives:
//   sigma = {T,eta}_{E,kappa}   gamma = {T,eta}_{kappa,omega}
//   rho   = {T,eta}_{omega,E}   tau = T T_kappa / 2   nu = -T T_E / 2
//   xi    = {T,eta}_{kappa,zeta}   psi = {T,eta}_{zeta,E}
struct KernelCoefficients {
    double sigma, gamma, rho, tau, nu, xi, psi;
};

struct GenericityReport {
    double sigma = 0.0;
    double det_M2 = 0.0;
    double D4 = 0.0;            // bordered K-Hessian determinant (sign fixed so det_M2 = sigma^3 D4 / 4)
    bool kernel_generic = false;
    bool chain_generic = false;
    bool chain_marginal = false;
    double sigma_scale = 0.0;   // magnitudes the tolerances were measured against
    double m2_scale = 0.0;
    double d4_scale = 0.0;
};

// Quadratic pencil det(lambda^2 M2 + lambda M1 + M0) = 0 at unit perturbation.
// M1 is purely imaginary symmetric; M1_imag stores its imaginary part (zero
// for transverse perturbations).
struct PencilMatrices {
    Eigen::Matrix2d M2 = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d M1_imag = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d M0 = Eigen::Matrix2d::Zero();
    Perturbation perturbation = Perturbation::Longitudinal;
};

KernelCoefficients kernel_coefficients(const DerivativeSet& derivs, const MomentSet& moments);

GenericityReport genericity(const KernelCoefficients& coeffs, const DerivativeSet& derivs,
                            const MomentSet& moments, const WaveParams& params);

PencilMatrices longitudinal_pencil(const KernelCoefficients& coeffs, const DerivativeSet& derivs,
                                   const MomentSet& moments, const WaveParams& params);

PencilMatrices transverse_pencil(const KernelCoefficients& coeffs, const DerivativeSet& derivs,
                                 const MomentSet& moments, const WaveParams& params,
                                 Perturbation kind);

} // namespace modstab

#endif
