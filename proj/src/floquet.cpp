#include "modstab/floquet.hpp"

#include "modstab/errors.hpp"

#include <boost/numeric/odeint.hpp>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace modstab {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

Eigen::VectorXcd fourier_coeffs(const std::vector<double>& samples) {
    const int n = static_cast<int>(samples.size());
    std::vector<std::complex<double>> in(n), out(n);
    for (int i = 0; i < n; ++i) in[i] = samples[i];
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
    Eigen::VectorXcd c(n);
    for (int i = 0; i < n; ++i) c[i] = out[i] / double(n);
    return c;
}

double tail_fraction(const Eigen::VectorXcd& c, int N) {
    const int ns = static_cast<int>(c.size());
    double total = 0.0, tail = 0.0;
    for (int i = 0; i < ns; ++i) {
        const int n = i <= ns / 2 ? i : i - ns;
        const double e = std::norm(c[i]);
        total += e;
        if (std::abs(n) > N) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

} // namespace

double WaveProfile::tail_energy(int N) const {
    double t = 0.0;
    for (const auto* c : {&c_A, &c_Sy, &c_Syy, &c_Sy2, &c_f, &c_fpz})
        t = std::max(t, tail_fraction(*c, N));
    return t;
}

WaveProfile reconstruct_wave(const WaveParams& params, const QuadraturePolynomial& poly,
                             double period, int n_s) {
    using state_type = std::array<double, 2>;
    namespace odeint = boost::numeric::odeint;

    WaveProfile prof;
    prof.T = period;
    prof.n_s = n_s;
    prof.z.resize(n_s);
    prof.zp.resize(n_s);

    auto rhs = [&](const state_type& s, state_type& dsdt, double) {
        dsdt[0] = s[1];
        dsdt[1] = 2.0 * poly.deriv(s[0]);
    };

    state_type s{poly.r1, 0.0};
    const double dt = period / n_s;
    int idx = 0;
    auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<state_type>>(1e-14, 1e-12);
    odeint::integrate_const(stepper, rhs, s, 0.0, period + 0.5 * dt, dt,
                            [&](const state_type& st, double) {
                                if (idx < n_s) {
                                    prof.z[idx] = st[0];
                                    prof.zp[idx] = st[1];
                                }
                                ++idx;
                            });

    if (std::abs(s[0] - poly.r1) > 1e-6 * (poly.r2 - poly.r1)) {
        std::ostringstream os;
        os << "orbit failed to close: |z(T) - r1| = " << std::abs(s[0] - poly.r1)
           << " vs bracket width " << poly.r2 - poly.r1;
        throw PeriodMismatch(os.str());
    }

    prof.A.resize(n_s);
    prof.Sy.resize(n_s);
    prof.Syy.resize(n_s);
    std::vector<double> sy2(n_s), fz(n_s), fpz(n_s);
    for (int i = 0; i < n_s; ++i) {
        const double z = prof.z[i];
        prof.A[i] = std::sqrt(z);
        prof.Sy[i] = params.kappa / z;
        prof.Syy[i] = -params.kappa * prof.zp[i] / (z * z);
        sy2[i] = prof.Sy[i] * prof.Sy[i];
        fz[i] = params.nonlinearity.f(z);
        fpz[i] = params.nonlinearity.f_prime(z) * z;
    }
    prof.c_A = fourier_coeffs(prof.A);
    prof.c_Sy = fourier_coeffs(prof.Sy);
    prof.c_Syy = fourier_coeffs(prof.Syy);
    prof.c_Sy2 = fourier_coeffs(sy2);
    prof.c_f = fourier_coeffs(fz);
    prof.c_fpz = fourier_coeffs(fpz);
    return prof;
}

GalerkinOperator build_operator(const WaveProfile& prof, const WaveParams& params,
                                Perturbation pert, double mu_or_k, int N) {
    if (4 * N + 2 > prof.n_s)
        throw InsufficientModes("profile grid too coarse for requested mode count");
    const double tail = prof.tail_energy(N);
    if (tail > 1e-8) {
        std::ostringstream os;
        os << "spectral tail above mode " << N << " holds fraction " << tail
           << " of the energy (limit 1e-8)";
        throw InsufficientModes(os.str());
    }

    const int m = 2 * N + 1;
    auto toeplitz = [&](const Eigen::VectorXcd& c) {
        Eigen::MatrixXcd t(m, m);
        for (int i = -N; i <= N; ++i)
            for (int j = -N; j <= N; ++j)
                t(i + N, j + N) = WaveProfile::mode(c, i - j);
        return t;
    };

    const std::complex<double> iu(0.0, 1.0);
    Eigen::VectorXcd ik(m);
    for (int n = -N; n <= N; ++n) ik[n + N] = iu * (2.0 * M_PI * n / prof.T);
    const Eigen::MatrixXcd Dk = ik.asDiagonal();
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(m, m);

    const Eigen::MatrixXcd Sy = toeplitz(prof.c_Sy);
    const Eigen::MatrixXcd K = toeplitz(prof.c_Syy) + 2.0 * Sy * Dk;
    const Eigen::MatrixXcd common =
        -params.omega * I - Dk * Dk + toeplitz(prof.c_Sy2) - params.zeta * toeplitz(prof.c_f);
    const Eigen::MatrixXcd Lp = common - 2.0 * params.zeta * toeplitz(prof.c_fpz);
    const Eigen::MatrixXcd& Lm = common;

    GalerkinOperator op;
    op.mu_or_k = mu_or_k;
    op.N = N;
    op.perturbation = pert;
    op.matrix.resize(2 * m, 2 * m);
    op.matrix.topLeftCorner(m, m) = K;
    op.matrix.topRightCorner(m, m) = -Lm;
    op.matrix.bottomLeftCorner(m, m) = Lp;
    op.matrix.bottomRightCorner(m, m) = K;

    if (pert == Perturbation::Longitudinal) {
        const double mu = mu_or_k;
        op.matrix.topLeftCorner(m, m) += 2.0 * iu * mu * Sy;
        op.matrix.bottomRightCorner(m, m) += 2.0 * iu * mu * Sy;
        op.matrix.topRightCorner(m, m) += 2.0 * iu * mu * Dk - mu * mu * I;
        op.matrix.bottomLeftCorner(m, m) += -2.0 * iu * mu * Dk + mu * mu * I;
    } else {
        const double k2 = mu_or_k * mu_or_k;
        const double sign = pert == Perturbation::TransverseElliptic ? 1.0 : -1.0;
        op.matrix.topRightCorner(m, m) -= sign * k2 * I;
        op.matrix.bottomLeftCorner(m, m) += sign * k2 * I;
    }
    return op;
}

std::vector<std::complex<double>> spectrum(const GalerkinOperator& op) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.matrix, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw EigenNoConvergence("complex eigensolver failed on the Galerkin matrix");
    std::vector<std::complex<double>> ev(es.eigenvalues().data(),
                                         es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        const double ia = std::abs(a.imag()), ib = std::abs(b.imag());
        if (ia != ib) return ia < ib;
        return std::abs(a.real()) < std::abs(b.real());
    });
    return ev;
}

namespace {

std::vector<std::complex<double>> smallest_four(const GalerkinOperator& op, double* gap) {
    auto ev = spectrum(op);
    std::sort(ev.begin(), ev.end(),
              [](const auto& a, const auto& b) { return std::abs(a) < std::abs(b); });
    if (ev.size() < 5) throw TrackingAmbiguous("operator too small to isolate four branches");
    if (gap) *gap = std::abs(ev[4]) / std::max(1e-300, std::abs(ev[3]));
    return {ev.begin(), ev.begin() + 4};
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

} // namespace

SlopeEstimate slope_estimate(const WaveParams& params, const QuadraturePolynomial& poly,
                             Perturbation pert, double epsilon, int N, int max_modes) {
    const double period = moment(poly, 0);
    for (;; N *= 2) {
        try {
            const int n_s = next_pow2(std::max(1024, 8 * N));
            const WaveProfile prof = reconstruct_wave(params, poly, period, n_s);

            double gap = 0.0;
            const auto full = smallest_four(build_operator(prof, params, pert, epsilon, N), &gap);
            if (gap < 2.0) {
                std::ostringstream os;
                os << "four smallest eigenvalues not separated from the fifth "
                      "(gap factor " << gap << " < 2)";
                throw TrackingAmbiguous(os.str());
            }
            const auto half = smallest_four(build_operator(prof, params, pert, epsilon / 2, N), nullptr);

            // nearest-neighbour continuation from the half step confirms the four
            // branches connect linearly to the origin
            std::array<bool, 4> taken{};
            SlopeEstimate se;
            se.N = N;
            se.gap = gap;
            for (int i = 0; i < 4; ++i) {
                const auto sl = full[i] / epsilon;
                int best = -1;
                double bd = 1e300;
                for (int j = 0; j < 4; ++j) {
                    if (taken[j]) continue;
                    const double dj = std::abs(half[j] / (epsilon / 2) - sl);
                    if (dj < bd) { bd = dj; best = j; }
                }
                taken[best] = true;
                if (bd > 0.5 * std::max(1.0, std::abs(sl)))
                    throw TrackingAmbiguous("half-step continuation lost a branch");
                se.slopes[i] = sl;
            }
            std::sort(se.slopes.begin(), se.slopes.end(), [](const auto& a, const auto& b) {
                if (a.imag() != b.imag()) return a.imag() < b.imag();
                return a.real() < b.real();
            });
            return se;
        } catch (const InsufficientModes&) {
            if (2 * N > max_modes) throw;
        }
    }
}

} // namespace modstab
