#ifndef MODSTAB_MOMENTS_HPP
#define MODSTAB_MOMENTS_HPP

#include "modstab/nonlinearity.hpp"

#include <functional>
#include <map>

namespace modstab {

// Node-doubling Gauss-Legendre ladder in the angle variable Phi after the
// substitution z = (r1+r2)/2 + (r2-r1)/2 sin(Phi), which removes the
// square-root endpoint singularities. Fixed ladder keeps results
// deterministic for identical inputs.
struct QuadratureOptions {
    int start_nodes = 64;
    int max_nodes = 4096;
    double rtol = 1e-12;
};

// Period-type moments of one wave, all as real integrals over the bracket:
//   J_k = int_{r1}^{r2} z^k dz / sqrt(P(z)),   T = J_0,  M = J_1,  eta = kappa J_{-1},
//   U   = int_0^T F(A^2) dy = int F(z) dz / sqrt(P),
//   K   = int_0^T A_y^2 dy  = int sqrt(P)/z dz.
struct MomentSet {
    std::map<int, double> J;   // indices -1 .. max(1, d-2)
    double T = 0.0;
    double M = 0.0;
    double eta = 0.0;
    double U = 0.0;
    double K = 0.0;
    int nodes = 0;             // largest node count any integral needed
};

// J_k for any k >= -1 (k = -1 requires r1 > 0, which holds whenever kappa > 0).
double moment(const QuadraturePolynomial& poly, int k, const QuadratureOptions& opts = {});

MomentSet moment_set(const QuadraturePolynomial& poly, const WaveParams& params,
                     const QuadratureOptions& opts = {});

// Integral of g(z, cos^2 Phi) dPhi over (-pi/2, pi/2) under the bracket
// substitution; exposed for the potential and kinetic integrals and for tests.
double bracket_integral(const QuadraturePolynomial& poly,
                        const std::function<double(double, double)>& g,
                        const QuadratureOptions& opts, int* nodes_used = nullptr);

} // namespace modstab

#endif
