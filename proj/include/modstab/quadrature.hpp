#ifndef MODSTAB_QUADRATURE_HPP
#define MODSTAB_QUADRATURE_HPP

#include <vector>

namespace modstab {

struct GaussLegendreRule {
    std::vector<double> x;   // nodes on (-1, 1)
    std::vector<double> w;
};

// Cached rule of order n (thread-safe).
const GaussLegendreRule& gauss_legendre(int n);

} // namespace modstab

#endif
