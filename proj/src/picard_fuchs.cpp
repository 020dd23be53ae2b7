#include "modstab/picard_fuchs.hpp"

#include "modstab/errors.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace modstab {

namespace {

double alpha_scale(const QuadraturePolynomial& poly) {
    double s = 0.0;
    for (double a : poly.alpha) s = std::max(s, std::abs(a));
    return s;
}

void require_leading(const QuadraturePolynomial& poly) {
    const int d = poly.degree();
    if (std::abs(poly.alpha[d]) <= 1e-12 * alpha_scale(poly)) {
        std::ostringstream os;
        os << "leading coefficient alpha_" << d << " = " << poly.alpha[d]
           << " too small for moment reduction";
        throw LeadingCoefficientZero(os.str());
    }
}

} // namespace

double reduce_moment(const QuadraturePolynomial& poly, const MomentSet& moments, int k) {
    const int d = poly.degree();
    if (k <= d - 2) return moments.J.at(k);
    require_leading(poly);

    // from the closed-contour identity for (z^m sqrt(P))':
    //   sum_{j=0}^{d} (j + 2m) alpha_j J_{j+m-1} = 0
    // (the j = 0 term 2m alpha_0 J_{m-1} survives for m >= 1)
    std::map<int, double> J = moments.J;
    for (int kk = d - 1; kk <= k; ++kk) {
        const int m = kk - d + 1;
        double s = 0.0;
        for (int j = 0; j < d; ++j)
            s += double(j + 2 * m) * poly.alpha[j] * J.at(j + m - 1);
        J[kk] = -s / (double(d + 2 * m) * poly.alpha[d]);
    }
    return J.at(k);
}

SylvesterSolution solve_sylvester(const QuadraturePolynomial& poly, const MomentSet& moments) {
    const int d = poly.degree();
    const int n = 2 * d;
    const auto& a = poly.alpha;

    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < d; ++r) {               // k = r - 1
        for (int j = 0; j <= d; ++j) S(r, r + j) = a[j];
        rhs[r] = moments.J.at(r - 1);
    }
    for (int k = 0; k < d; ++k) {
        for (int j = 1; j <= d; ++j) S(d + k, k + j) = double(j) * a[j];
        rhs[d + k] = k == 0 ? 0.0 : 2.0 * k * moments.J.at(k - 1);
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(S);
    SylvesterSolution sol;
    sol.det_S = lu.determinant();
    sol.rcond = lu.rcond();
    if (!(sol.rcond > 1e-14)) {
        std::ostringstream os;
        os << "extended Sylvester system is singular (rcond = " << sol.rcond
           << "); P(z) has a root of higher multiplicity";
        throw SingularSylvester(os.str());
    }
    sol.ill_conditioned = sol.rcond < 1e-10;

    const Eigen::VectorXd x = lu.solve(rhs);
    sol.residual = (S * x - rhs).norm() / rhs.norm();
    sol.D = -0.5 * x;
    return sol;
}

namespace {

// value + gradient with respect to the alpha coefficients
struct Dual {
    double v;
    Eigen::VectorXd g;
};

Dual dual_const(double v, int n) { return {v, Eigen::VectorXd::Zero(n)}; }

// J_k with alpha-gradient: basis moments carry dJ_b/dalpha_j = D_{b+j}; higher
// moments are reduced through the recurrence with product/quotient rules.
Dual moment_dual(const QuadraturePolynomial& poly, const MomentSet& moments,
                 const SylvesterSolution& syl, int k) {
    const int d = poly.degree();
    const int n = d + 1;
    if (k <= d - 2) {
        Dual r = dual_const(moments.J.at(k), n);
        for (int j = 0; j <= d; ++j) r.g[j] = syl.dJ(k, j);
        return r;
    }
    require_leading(poly);
    const int m = k - d + 1;
    // s = sum_{j=0}^{d-1} (j+2m) alpha_j J_{j+m-1};  J_k = -s / ((d+2m) alpha_d)
    Dual s = dual_const(0.0, n);
    for (int j = 0; j < d; ++j) {
        const double c = double(j + 2 * m);
        const Dual Jj = moment_dual(poly, moments, syl, j + m - 1);
        s.v += c * poly.alpha[j] * Jj.v;
        s.g += c * poly.alpha[j] * Jj.g;
        s.g[j] += c * Jj.v;
    }
    const double denom = double(d + 2 * m) * poly.alpha[d];
    Dual r = dual_const(-s.v / denom, n);
    r.g = -s.g / denom;
    r.g[d] += s.v * double(d + 2 * m) / (denom * denom);
    return r;
}

} // namespace

DerivativeSet jacobian(const QuadraturePolynomial& poly, const WaveParams& params,
                       const MomentSet& moments, const SylvesterSolution& syl) {
    const int d = poly.degree();
    const int n = d + 1;

    // dalpha_m/dzeta for m >= 3 (alpha_m = -zeta f_{m-2}/(m-1))
    Eigen::VectorXd dadz = Eigen::VectorXd::Zero(n);
    const auto& f = params.nonlinearity.f_coeffs();
    for (int m = 3; m <= d; ++m) {
        const int fi = m - 3;
        if (fi < static_cast<int>(f.size())) dadz[m] = -f[fi] / double(m - 1);
    }

    auto to_params = [&](const Dual& q) {
        Eigen::Vector4d row;
        row[0] = 2.0 * q.g[1];
        row[1] = -2.0 * params.kappa * q.g[0];
        row[2] = -q.g[2];
        row[3] = q.g.dot(dadz);
        return row;
    };

    DerivativeSet ds;
    ds.syl = syl;

    const Dual T = moment_dual(poly, moments, syl, 0);
    const Dual M = moment_dual(poly, moments, syl, 1);
    const Dual chi = moment_dual(poly, moments, syl, -1);
    ds.jac.row(0) = to_params(T).transpose();
    ds.jac.row(1) = to_params(M).transpose();
    ds.jac.row(2) = (params.kappa * to_params(chi)).transpose();
    ds.jac(2, 1) += chi.v;   // eta = kappa * chi product rule

    // U = sum_i f_i/(i+2) J_{i+2}
    Dual U = dual_const(0.0, n);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0.0) continue;
        const Dual Ji = moment_dual(poly, moments, syl, static_cast<int>(i) + 2);
        const double c = f[i] / double(i + 2);
        U.v += c * Ji.v;
        U.g += c * Ji.g;
    }
    ds.jac.row(3) = to_params(U).transpose();
    return ds;
}

} // namespace modstab
