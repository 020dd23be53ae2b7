#ifndef MODSTAB_PENCIL_HPP
#define MODSTAB_PENCIL_HPP

#include "modstab/modulation.hpp"

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace modstab {

// Coefficients (highest degree first) of the real quartic in s = i*lambda
// obtained by expanding det(lambda^2 M2 + lambda M1 + M0).
std::array<double, 5> quartic_coeffs(const PencilMatrices& pencil);

struct QuarticRoots {
    std::vector<std::complex<double>> lambda;   // roots back in the lambda variable
    std::vector<double> residuals;              // |q(lambda_i)| after polish
    bool deflated = false;                      // leading coefficient dropped; one root at infinity
};

QuarticRoots solve_quartic(const std::array<double, 5>& coeffs);

struct StabilityReport {
    std::vector<std::complex<double>> roots;    // symmetrized under lambda -> -conj(lambda)
    std::vector<double> residuals;
    int n_real = 0;
    int n_imag = 0;
    int n_complex = 0;
    int unstable_dim = 0;                       // roots with |Re| above threshold
    bool root_at_infinity = false;
    bool kernel_generic = true;
    bool chain_marginal = false;
};

// A root counts as real-part-zero iff |Re lambda| <= threshold * max(1, |lambda|).
// Roots are symmetrized into exact (lambda, -conj(lambda)) pairs before counting.
StabilityReport classify(std::span<const std::complex<double>> roots, double threshold);

constexpr double kDefaultClassifyThreshold = 1e-6;

} // namespace modstab

#endif
