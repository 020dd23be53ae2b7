#ifndef MODSTAB_POLYROOTS_HPP
#define MODSTAB_POLYROOTS_HPP

#include <complex>
#include <span>
#include <vector>

namespace modstab {

// Horner evaluation of sum_j c[j] z^j.
double poly_eval(std::span<const double> c, double z);
std::complex<double> poly_eval(std::span<const double> c, std::complex<double> z);
std::vector<double> poly_derivative(std::span<const double> c);

// All complex roots of a real polynomial (coefficients low to high, leading
// coefficient nonzero): balanced companion-matrix eigenvalues followed by one
// Newton polish per root against the original coefficients.
std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs);

} // namespace modstab

#endif
