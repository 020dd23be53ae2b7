#ifndef MODSTAB_NONLINEARITY_HPP
#define MODSTAB_NONLINEARITY_HPP

#include <array>
#include <complex>
#include <vector>

namespace modstab {

enum class NonlinearityKind { Cubic, Quintic, GeneralPoly };

// Polynomial nonlinearity f(z) = f1 z + f2 z^2 + ... (no constant term) of the
// equation i w_t = w_xx + zeta f(|w|^2) w, together with its antiderivative
// F (F' = f, F(0) = 0). The sign of the nonlinearity is carried by zeta.
class NonlinearitySpec {
public:
    static NonlinearitySpec cubic();            // f(z) = z
    static NonlinearitySpec quintic();          // f(z) = z^2
    static NonlinearitySpec general(std::vector<double> f_coeffs);

    double f(double z) const;
    double f_prime(double z) const;
    double F(double z) const;

    NonlinearityKind kind() const { return kind_; }
    const std::vector<double>& f_coeffs() const { return f_; }

    // degree of the quadrature polynomial P(z) = -kappa^2 + 2Ez - omega z^2 - zeta z F(z)
    // when zeta != 0; trailing zero coefficients of f are ignored.
    int poly_degree() const;

private:
    NonlinearitySpec(NonlinearityKind k, std::vector<double> f) : kind_(k), f_(std::move(f)) {}
    NonlinearityKind kind_;
    std::vector<double> f_;   // f_[i] multiplies z^{i+1}
};

// One traveling wave: amplitude equation A_y^2 = 2E - omega A^2 - kappa^2/A^2 - zeta F(A^2),
// with c = y0 = theta0 = 0 fixed by Galilean, translation and U(1) symmetry.
struct WaveParams {
    double E;
    double kappa;    // > 0 inside the domain
    double omega;
    double zeta;
    NonlinearitySpec nonlinearity;
};

// P(z) = sum_j alpha[j] z^j with z = A^2; the wave oscillates over the bracket
// (r1, r2), consecutive simple real roots with P > 0 in between and r1 > 0.
struct QuadraturePolynomial {
    std::vector<double> alpha;
    std::vector<std::complex<double>> roots;
    double r1 = 0.0, r2 = 0.0;
    std::array<int, 2> bracket_roots{-1, -1};   // indices into roots

    int degree() const { return static_cast<int>(alpha.size()) - 1; }
    double operator()(double z) const;
    double deriv(double z) const;

    // -Q(z) where Q(z) = alpha_d * prod over non-bracket roots (z - r); equals
    // P(z)/((r2 - z)(z - r1)) and stays positive on the bracket. Evaluated from
    // the stored roots so the bracket endpoints never cancel catastrophically.
    double deflated_neg(double z) const;
};

// Assembles P(z) from raw parameters, solves for all roots and selects the
// oscillation bracket. bracket_index = -1 picks the rightmost interval of
// positivity on the positive real axis; 0,1,... index the intervals from the
// left when several exist.
QuadraturePolynomial build_poly(const WaveParams& params, int bracket_index = -1);

// --- root-based wave parameterizations --------------------------------------

struct CaseId {
    enum class Family {
        CubicFocusing,     // (k, b), k^2 < b < 1, zeta = 2
        CubicDefocusing,   // (l, m), 0 < l < m < 1, zeta = -2
        QuinticFocusing4,  // (l, m), 0 < m < 1, 0 < l < (1+m)/2, zeta = 3
        QuinticFocusing2,  // (phi, m), 0 < phi < pi/2, 0 < m < 1, zeta = 3
        QuinticDefocusing, // (l, m), 0 < m < l < 1, zeta = -3
    };
    Family family;
    double p1 = 0.0, p2 = 0.0;
};

struct CaseWave {
    WaveParams params;
    QuadraturePolynomial poly;   // roots known in closed form, no numeric solve
};

// Closed-form (E, kappa, omega, zeta) for a case point; no domain validation.
WaveParams case_map(const CaseId& c);

// Validates the case inequalities, then returns parameters plus the quadrature
// polynomial with analytically known roots and bracket.
CaseWave from_case(const CaseId& c);

// Degenerate trigonometric solution of the focusing quintic at l = (1+m)/2;
// returns z(y) = A^2(y). Test fixture for the wave-reconstruction oracle.
double trig_solution(double m, double y);

// Dark solitary wave of the defocusing quintic at m = 1; returns z(y).
double dark_soliton(double l, double y);

} // namespace modstab

#endif
