#ifndef MODSTAB_FLOQUET_HPP
#define MODSTAB_FLOQUET_HPP

#include "modstab/modulation.hpp"
#include "modstab/moments.hpp"
#include "modstab/nonlinearity.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace modstab {

// Traveling-wave profile sampled on a uniform grid over [0, T), reconstructed
// by integrating z'' = 2 P'(z) from z(0) = r1, z'(0) = 0 (so A'(0) = 0 and the
// amplitude starts at its minimum), plus the Fourier coefficients of every
// field the Galerkin operator needs.
struct WaveProfile {
    double T = 0.0;
    int n_s = 0;
    std::vector<double> z, zp;          // z = A^2 and its derivative
    std::vector<double> A, Sy, Syy;
    // coefficient c[n] of exp(2 pi i n y / T); index via mode()
    Eigen::VectorXcd c_Sy, c_Syy, c_Sy2, c_f, c_fpz, c_A;

    static std::complex<double> mode(const Eigen::VectorXcd& c, int n) {
        const int ns = static_cast<int>(c.size());
        return c[((n % ns) + ns) % ns];
    }
    // fraction of spectral energy above mode N, maximized over the operator fields
    double tail_energy(int N) const;
};

WaveProfile reconstruct_wave(const WaveParams& params, const QuadraturePolynomial& poly,
                             double period, int n_s);

struct GalerkinOperator {
    double mu_or_k = 0.0;
    int N = 0;                          // modes -N..N per field component
    Perturbation perturbation = Perturbation::Longitudinal;
    Eigen::MatrixXcd matrix;            // size 2(2N+1)
};

// Fourier-Galerkin truncation of L(mu) = L + mu L1 + mu^2 L2 (longitudinal) or
// L(k) = L +- k^2 L2 (transverse elliptic/hyperbolic). Throws InsufficientModes
// when the profile's spectral tail above N exceeds 1e-8 of the total energy.
GalerkinOperator build_operator(const WaveProfile& profile, const WaveParams& params,
                                Perturbation pert, double mu_or_k, int N);

// Eigenvalues sorted by |Im|, then |Re|.
std::vector<std::complex<double>> spectrum(const GalerkinOperator& op);

struct SlopeEstimate {
    std::array<std::complex<double>, 4> slopes;   // sorted by (Im, Re)
    int N = 0;                                    // mode count actually used
    double gap = 0.0;                             // |lambda_5| / |lambda_4| at epsilon
};

// Four spectral slopes at the origin from eigenvalues at perturbation size
// epsilon, matched against a half-size step by nearest-neighbour continuation
// and divided by epsilon. N escalates x2 up to max_modes on InsufficientModes.
SlopeEstimate slope_estimate(const WaveParams& params, const QuadraturePolynomial& poly,
                             Perturbation pert, double epsilon, int N = 20,
                             int max_modes = 512);

} // namespace modstab

#endif
