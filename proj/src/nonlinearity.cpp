#include "modstab/nonlinearity.hpp"

#include "modstab/errors.hpp"
#include "modstab/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace modstab {

NonlinearitySpec NonlinearitySpec::cubic() {
    return NonlinearitySpec(NonlinearityKind::Cubic, {1.0});
}

NonlinearitySpec NonlinearitySpec::quintic() {
    return NonlinearitySpec(NonlinearityKind::Quintic, {0.0, 1.0});
}

NonlinearitySpec NonlinearitySpec::general(std::vector<double> f_coeffs) {
    while (!f_coeffs.empty() && f_coeffs.back() == 0.0) f_coeffs.pop_back();
    if (f_coeffs.empty())
        throw OutOfDomain("nonlinearity f is identically zero; F(z) must be "
                          "linearly independent from 1, z, 1/z");
    return NonlinearitySpec(NonlinearityKind::GeneralPoly, std::move(f_coeffs));
}

double NonlinearitySpec::f(double z) const {
    double v = 0.0;
    for (auto it = f_.rbegin(); it != f_.rend(); ++it) v = (v + *it) * z;
    return v;
}

double NonlinearitySpec::f_prime(double z) const {
    double v = 0.0;
    for (int i = static_cast<int>(f_.size()) - 1; i >= 0; --i)
        v = v * z + double(i + 1) * f_[i];
    return v;
}

double NonlinearitySpec::F(double z) const {
    double v = 0.0;
    for (int i = static_cast<int>(f_.size()) - 1; i >= 0; --i)
        v = (v + f_[i] / double(i + 2)) * z;
    return v * z;
}

int NonlinearitySpec::poly_degree() const {
    return static_cast<int>(f_.size()) + 2;
}

double QuadraturePolynomial::operator()(double z) const { return poly_eval(alpha, z); }

double QuadraturePolynomial::deriv(double z) const {
    double v = 0.0;
    for (int j = degree(); j >= 1; --j) v = v * z + double(j) * alpha[j];
    return v;
}

double QuadraturePolynomial::deflated_neg(double z) const {
    std::complex<double> q = alpha.back();
    for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
        if (i == bracket_roots[0] || i == bracket_roots[1]) continue;
        q *= (z - roots[i]);
    }
    return -q.real();
}

namespace {

std::vector<double> assemble_alpha(const WaveParams& p) {
    // P(z) = -kappa^2 + 2Ez - omega z^2 - zeta z F(z); zF(z) contributes
    // alpha_j = -zeta f_{j-2}/(j-1) for j >= 3.
    const auto& f = p.nonlinearity.f_coeffs();
    std::vector<double> a(3 + f.size(), 0.0);
    a[0] = -p.kappa * p.kappa;
    a[1] = 2.0 * p.E;
    a[2] = -p.omega;
    for (std::size_t i = 0; i < f.size(); ++i)
        a[3 + i] = -p.zeta * f[i] / double(i + 2);
    while (a.size() > 1 && a.back() == 0.0) a.pop_back();
    return a;
}

double simplicity_tolerance(const QuadraturePolynomial& q, double r) {
    double amax = 0.0;
    for (double a : q.alpha) amax = std::max(amax, std::abs(a));
    return 1e-8 * amax * std::pow(std::max(1.0, std::abs(r)), q.degree() - 1);
}

void check_bracket_simple(const QuadraturePolynomial& q) {
    for (double r : {q.r1, q.r2}) {
        if (std::abs(q.deriv(r)) <= simplicity_tolerance(q, r)) {
            std::ostringstream os;
            os << "bracket endpoint z = " << r
               << " is a multiple root within tolerance (boundary of the wave domain)";
            throw DegenerateRoot(os.str());
        }
    }
}

int find_root_index(const std::vector<std::complex<double>>& roots, double r,
                    const std::array<int, 2>& taken) {
    int best = -1;
    double best_d = 1e300;
    for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
        if (i == taken[0] || i == taken[1]) continue;
        const double d = std::abs(roots[i] - r);
        if (d < best_d) { best_d = d; best = i; }
    }
    return best;
}

} // namespace

QuadraturePolynomial build_poly(const WaveParams& params, int bracket_index) {
    if (!(params.kappa > 0.0))
        throw OutOfDomain("kappa > 0 required");

    QuadraturePolynomial q;
    q.alpha = assemble_alpha(params);
    if (q.degree() < 2)
        throw NoBracket("P(z) has degree < 2; no oscillation interval can exist");
    q.roots = poly_roots(q.alpha);

    // real positive roots, left to right
    std::vector<std::pair<double, int>> re;
    for (int i = 0; i < static_cast<int>(q.roots.size()); ++i) {
        const auto& r = q.roots[i];
        if (std::abs(r.imag()) <= 1e-9 * std::max(1.0, std::abs(r)) && r.real() > 0.0)
            re.emplace_back(r.real(), i);
    }
    std::sort(re.begin(), re.end());

    // candidate brackets: consecutive pairs with P > 0 at the midpoint
    std::vector<std::array<int, 2>> candidates;
    for (std::size_t i = 0; i + 1 < re.size(); ++i) {
        const double mid = 0.5 * (re[i].first + re[i + 1].first);
        if (q(mid) > 0.0)
            candidates.push_back({re[i].second, re[i + 1].second});
    }
    if (candidates.empty())
        throw NoBracket("no positivity interval between positive real roots of P(z); "
                        "parameters admit no periodic wave");
    int pick = bracket_index < 0 ? static_cast<int>(candidates.size()) - 1 : bracket_index;
    if (pick >= static_cast<int>(candidates.size()))
        throw NoBracket("bracket index out of range");

    q.bracket_roots = candidates[pick];
    q.r1 = q.roots[q.bracket_roots[0]].real();
    q.r2 = q.roots[q.bracket_roots[1]].real();
    check_bracket_simple(q);
    return q;
}

WaveParams case_map(const CaseId& c) {
    using F = CaseId::Family;
    const double p1 = c.p1, p2 = c.p2;
    switch (c.family) {
    case F::CubicFocusing: {
        const double k = p1, b = p2;
        return {b * (1 + k * k) - 1.5 * b * b - k * k / 2,
                std::sqrt(std::max(0.0, b * (1 - b) * (b - k * k))),
                1 + k * k - 3 * b, 2.0, NonlinearitySpec::cubic()};
    }
    case F::CubicDefocusing: {
        const double l = p1, m = p2;
        return {0.5 * (l + m + l * m), std::sqrt(std::max(0.0, l * m)),
                1 + l + m, -2.0, NonlinearitySpec::cubic()};
    }
    case F::QuinticFocusing4: {
        const double l = p1, m = p2;
        return {(1 + m) * (m - l) * (l - 1) / 2,
                std::sqrt(std::max(0.0, l * m * (1 + m - l))),
                -1 - m - m * m + (1 + m) * l - l * l, 3.0, NonlinearitySpec::quintic()};
    }
    case F::QuinticFocusing2: {
        const double phi = p1, m = p2, t = std::tan(phi);
        const double h = (1 + m) / 2;
        return {0.5 * (1 + m) * (t * t + 0.25 * (1 - m) * (1 - m)),
                std::sqrt(std::max(0.0, m * (t * t + h * h))),
                -0.25 * (3 * m * m + 2 * m + 3 - 4 * t * t), 3.0, NonlinearitySpec::quintic()};
    }
    case F::QuinticDefocusing: {
        const double l = p1, m = p2;
        return {0.5 * (1 + l) * (1 + m) * (l + m),
                std::sqrt(std::max(0.0, l * m * (1 + l + m))),
                1 + l * l + (l + m) * (1 + m), -3.0, NonlinearitySpec::quintic()};
    }
    }
    throw OutOfDomain("unknown case family");
}

CaseWave from_case(const CaseId& c) {
    using F = CaseId::Family;
    const double p1 = c.p1, p2 = c.p2;

    auto fail = [&](const char* ineq) {
        std::ostringstream os;
        os << "case parameters (" << p1 << ", " << p2 << ") violate " << ineq;
        throw OutOfDomain(os.str());
    };

    std::vector<std::complex<double>> roots;
    double r1 = 0.0, r2 = 0.0;
    switch (c.family) {
    case F::CubicFocusing: {
        const double k = p1, b = p2;
        if (!(k >= 0.0)) fail("k >= 0");
        if (!(k * k < b && b < 1.0)) fail("k^2 < b < 1");
        roots = {b - 1, b - k * k, b};
        r1 = b - k * k; r2 = b;
        break;
    }
    case F::CubicDefocusing: {
        const double l = p1, m = p2;
        if (!(0.0 < l && l < m && m < 1.0)) fail("0 < l < m < 1");
        roots = {l, m, 1.0};
        r1 = l; r2 = m;
        break;
    }
    case F::QuinticFocusing4: {
        const double l = p1, m = p2;
        if (!(0.0 < m && m < 1.0)) fail("0 < m < 1");
        if (!(0.0 < l && l < (1 + m) / 2)) fail("0 < l < (1+m)/2");
        roots = {l - (1 + m), -l, m, 1.0};
        r1 = m; r2 = 1.0;
        break;
    }
    case F::QuinticFocusing2: {
        const double phi = p1, m = p2;
        if (!(0.0 < phi && phi < M_PI / 2)) fail("0 < phi < pi/2");
        if (!(0.0 < m && m < 1.0)) fail("0 < m < 1");
        const double t = std::tan(phi), h = (1 + m) / 2;
        roots = {{-h, t}, {-h, -t}, m, 1.0};
        r1 = m; r2 = 1.0;
        break;
    }
    case F::QuinticDefocusing: {
        const double l = p1, m = p2;
        if (m == l && 0.0 < l && l < 1.0)
            throw DegenerateRoot("quintic defocusing m = l admits only the "
                                 "constant-amplitude solution");
        if (!(0.0 < m && m < l && l < 1.0)) fail("0 < m < l < 1");
        roots = {-(1 + l + m), m, l, 1.0};
        r1 = m; r2 = l;
        break;
    }
    }

    CaseWave cw{case_map(c), QuadraturePolynomial{}};
    cw.poly.alpha = assemble_alpha(cw.params);

    // expand alpha_d * prod (z - r_i); imaginary parts cancel in conjugate pairs
    std::vector<std::complex<double>> prod{cw.poly.alpha.back()};
    for (const auto& r : roots) {
        std::vector<std::complex<double>> nxt(prod.size() + 1, 0.0);
        for (std::size_t i = 0; i < prod.size(); ++i) {
            nxt[i] += prod[i] * (-r);
            nxt[i + 1] += prod[i];
        }
        prod = std::move(nxt);
    }
    for (std::size_t j = 0; j < prod.size(); ++j) {
        const double rel = std::abs(prod[j].real() - cw.poly.alpha[j]);
        if (rel > 1e-10 * (1.0 + std::abs(cw.poly.alpha[j])))
            throw OutOfDomain("case map inconsistent with analytic roots");
    }

    cw.poly.roots = roots;
    cw.poly.bracket_roots = {find_root_index(roots, r1, {-1, -1}), -1};
    cw.poly.bracket_roots[1] = find_root_index(roots, r2, {cw.poly.bracket_roots[0], -1});
    cw.poly.r1 = r1;
    cw.poly.r2 = r2;
    check_bracket_simple(cw.poly);
    return cw;
}

double trig_solution(double m, double y) {
    // phase advances at beta*y/2: the full orbit period is 2 pi / beta, which
    // is what the quadrature period integral and the ODE orbit give
    const double beta = std::sqrt((1 + 3 * m) * (3 + m));
    const double c2 = std::cos(beta * y / 2) * std::cos(beta * y / 2);
    const double s2 = std::sin(beta * y / 2) * std::sin(beta * y / 2);
    const double num = (1 + 3 * m) * c2 - (3 + m) * s2;
    const double den = (1 + 3 * m) * c2 + (3 + m) * s2;
    return (1 + m) / 2 + (1 - m) / 2 * num / den;
}

double dark_soliton(double l, double y) {
    const double beta = std::sqrt((1 - l) * (l + 3));
    const double t2 = std::tanh(beta * y) * std::tanh(beta * y);
    return (l * (l + 3) + (l + 2) * (1 - l) * t2) / ((l + 3) - (1 - l) * t2);
}

} // namespace modstab
