#ifndef MODSTAB_PICARD_FUCHS_HPP
#define MODSTAB_PICARD_FUCHS_HPP

#include "modstab/moments.hpp"
#include "modstab/nonlinearity.hpp"

#include <Eigen/Dense>

namespace modstab {

// J_k for k >= d-1 by repeated application of
//   sum_{j=1}^{d} (j + 2m) alpha_j J_{j+m-1} = 0,   m = 0, 1, ...
// downward onto the stored basis. Exact linear algebra, no quadrature.
double reduce_moment(const QuadraturePolynomial& poly, const MomentSet& moments, int k);

// Solution of the extended 2d x 2d system S x = j built exactly as displayed
// (d alpha-shift rows for k = -1..d-2, then d rows with weights j*alpha_j for
// k = 0..d-1; right side (J_{-1}, J_0..J_{d-2}, 0, 2J_0, ..., 2(d-1)J_{d-2})).
// The raw solution satisfies x = -2 D with D_k = -1/4 contour(z^k P^{-3/2});
// we return D so that dJ_j/dalpha_k = D_{j+k} holds directly.
struct SylvesterSolution {
    Eigen::VectorXd D;       // D_{-1} .. D_{2d-2}
    double det_S = 0.0;      // determinant of the raw system matrix
    double rcond = 0.0;
    double residual = 0.0;   // ||S x - j|| / ||j|| of the raw solve
    bool ill_conditioned = false;

    double dJ(int j, int k) const { return D[j + k + 1]; }
};

SylvesterSolution solve_sylvester(const QuadraturePolynomial& poly, const MomentSet& moments);

// Exact Jacobian of (T, M, eta, U) with respect to (E, kappa, omega, zeta),
// via dJ_j/dalpha_k = D_{j+k} and the chain
//   d/dE = 2 d/da1,  d/dkappa = -2 kappa d/da0,  d/domega = -d/da2,
//   d/dzeta = sum_{m>=3} (dalpha_m/dzeta) d/da_m.
// eta = kappa J_{-1} carries its product-rule term here; U is reduced to basis
// moments first and the reduction is differentiated exactly.
struct DerivativeSet {
    // rows T, M, eta, U; columns E, kappa, omega, zeta
    Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();
    SylvesterSolution syl;

    double dTdE() const { return jac(0, 0); }
    double dTdkappa() const { return jac(0, 1); }
    double dTdomega() const { return jac(0, 2); }
    double dTdzeta() const { return jac(0, 3); }
    double dMdE() const { return jac(1, 0); }
    double dMdkappa() const { return jac(1, 1); }
    double dMdomega() const { return jac(1, 2); }
    double dMdzeta() const { return jac(1, 3); }
    double dEtadE() const { return jac(2, 0); }
    double dEtadkappa() const { return jac(2, 1); }
    double dEtadomega() const { return jac(2, 2); }
    double dEtadzeta() const { return jac(2, 3); }
    double dUdE() const { return jac(3, 0); }
    double dUdkappa() const { return jac(3, 1); }
    double dUdomega() const { return jac(3, 2); }
    double dUdzeta() const { return jac(3, 3); }
};

DerivativeSet jacobian(const QuadraturePolynomial& poly, const WaveParams& params,
                       const MomentSet& moments, const SylvesterSolution& syl);

} // namespace modstab

#endif
