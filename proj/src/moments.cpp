#include "modstab/moments.hpp"

#include "modstab/errors.hpp"
#include "modstab/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace modstab {

double bracket_integral(const QuadraturePolynomial& poly,
                        const std::function<double(double, double)>& g,
                        const QuadratureOptions& opts, int* nodes_used) {
    const double mid = 0.5 * (poly.r1 + poly.r2);
    const double half = 0.5 * (poly.r2 - poly.r1);

    auto eval = [&](int n) {
        const auto& rule = gauss_legendre(n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double phi = 0.5 * M_PI * rule.x[i];
            const double sp = std::sin(phi);
            const double z = mid + half * sp;
            s += rule.w[i] * g(z, 1.0 - sp * sp);
        }
        return 0.5 * M_PI * s;
    };

    double prev = eval(opts.start_nodes);
    for (int n = 2 * opts.start_nodes; n <= opts.max_nodes; n *= 2) {
        const double cur = eval(n);
        if (std::abs(cur - prev) <= opts.rtol * std::abs(cur)) {
            if (nodes_used) *nodes_used = n;
            return cur;
        }
        prev = cur;
    }
    std::ostringstream os;
    os << "bracket integral did not reach rtol " << opts.rtol << " by "
       << opts.max_nodes << " nodes";
    throw QuadratureNoConvergence(os.str());
}

double moment(const QuadraturePolynomial& poly, int k, const QuadratureOptions& opts) {
    return bracket_integral(
        poly,
        [&](double z, double) { return std::pow(z, k) / std::sqrt(poly.deflated_neg(z)); },
        opts);
}

MomentSet moment_set(const QuadraturePolynomial& poly, const WaveParams& params,
                     const QuadratureOptions& opts) {
    MomentSet ms;
    const int d = poly.degree();
    int nodes = 0;

    const int top = std::max(1, d - 2);
    for (int k = -1; k <= top; ++k) {
        int n = 0;
        ms.J[k] = bracket_integral(
            poly,
            [&](double z, double) { return std::pow(z, k) / std::sqrt(poly.deflated_neg(z)); },
            opts, &n);
        nodes = std::max(nodes, n);
    }
    ms.T = ms.J[0];
    ms.M = ms.J[1];
    ms.eta = params.kappa * ms.J[-1];

    int n = 0;
    ms.U = bracket_integral(
        poly,
        [&](double z, double) {
            return params.nonlinearity.F(z) / std::sqrt(poly.deflated_neg(z));
        },
        opts, &n);
    nodes = std::max(nodes, n);

    // K integrand sqrt(P)/z = half^2 cos^2(Phi) sqrt(-Q(z)) / z after the
    // substitution; bounded since r1 > 0.
    const double half = 0.5 * (poly.r2 - poly.r1);
    ms.K = bracket_integral(
        poly,
        [&](double z, double c2) {
            return half * half * c2 * std::sqrt(poly.deflated_neg(z)) / z;
        },
        opts, &n);
    nodes = std::max(nodes, n);

    ms.nodes = nodes;
    return ms;
}

} // namespace modstab
