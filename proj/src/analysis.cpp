#include "modstab/analysis.hpp"

#include "modstab/errors.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <thread>

namespace modstab {

namespace {

PointAnalysis run_pipeline(const WaveParams& params, QuadraturePolynomial poly,
                           Perturbation pert, double threshold, const QuadratureOptions& qopts) {
    PointAnalysis pa{params, std::move(poly), {}, {}, {}, {}, {}, {}, {}};
    pa.moments = moment_set(pa.poly, params, qopts);
    const SylvesterSolution syl = solve_sylvester(pa.poly, pa.moments);
    pa.derivs = jacobian(pa.poly, params, pa.moments, syl);
    pa.coeffs = kernel_coefficients(pa.derivs, pa.moments);
    pa.gen = genericity(pa.coeffs, pa.derivs, pa.moments, params);
    pa.pencil = pert == Perturbation::Longitudinal
                    ? longitudinal_pencil(pa.coeffs, pa.derivs, pa.moments, params)
                    : transverse_pencil(pa.coeffs, pa.derivs, pa.moments, params, pert);
    pa.quartic = quartic_coeffs(pa.pencil);
    const QuarticRoots qr = solve_quartic(pa.quartic);
    pa.stab = classify(qr.lambda, threshold);
    pa.stab.residuals = qr.residuals;
    pa.stab.root_at_infinity = qr.deflated;
    pa.stab.kernel_generic = pa.gen.kernel_generic;
    pa.stab.chain_marginal = pa.gen.chain_marginal;
    return pa;
}

} // namespace

PointAnalysis analyze_params(const WaveParams& params, Perturbation pert, double threshold,
                             const QuadratureOptions& qopts, int bracket_index) {
    return run_pipeline(params, build_poly(params, bracket_index), pert, threshold, qopts);
}

PointAnalysis analyze_case(const CaseId& c, Perturbation pert, double threshold,
                           const QuadratureOptions& qopts) {
    CaseWave cw = from_case(c);
    return run_pipeline(cw.params, std::move(cw.poly), pert, threshold, qopts);
}

std::optional<CaseId::Family> parse_family(const std::string& name) {
    using F = CaseId::Family;
    if (name == "cubic-f" || name == "cubic-focusing") return F::CubicFocusing;
    if (name == "cubic-d" || name == "cubic-defocusing") return F::CubicDefocusing;
    if (name == "quintic-f4") return F::QuinticFocusing4;
    if (name == "quintic-f2") return F::QuinticFocusing2;
    if (name == "quintic-d" || name == "quintic-defocusing") return F::QuinticDefocusing;
    return std::nullopt;
}

std::string family_name(CaseId::Family f) {
    switch (f) {
    case CaseId::Family::CubicFocusing: return "cubic-f";
    case CaseId::Family::CubicDefocusing: return "cubic-d";
    case CaseId::Family::QuinticFocusing4: return "quintic-f4";
    case CaseId::Family::QuinticFocusing2: return "quintic-f2";
    case CaseId::Family::QuinticDefocusing: return "quintic-d";
    }
    return "?";
}

std::optional<Perturbation> parse_perturbation(const std::string& name) {
    if (name == "longitudinal") return Perturbation::Longitudinal;
    if (name == "transverse-elliptic") return Perturbation::TransverseElliptic;
    if (name == "transverse-hyperbolic") return Perturbation::TransverseHyperbolic;
    return std::nullopt;
}

std::string perturbation_name(Perturbation p) {
    switch (p) {
    case Perturbation::Longitudinal: return "longitudinal";
    case Perturbation::TransverseElliptic: return "transverse-elliptic";
    case Perturbation::TransverseHyperbolic: return "transverse-hyperbolic";
    }
    return "?";
}

CaseId domain_point(CaseId::Family f, double u, double v) {
    using F = CaseId::Family;
    switch (f) {
    case F::CubicFocusing: return {f, u, u * u + v * (1 - u * u)};          // k, b
    case F::CubicDefocusing: return {f, u * v, v};                          // l = u m, m
    case F::QuinticFocusing4: return {f, u * (1 + v) / 2, v};               // l, m
    case F::QuinticFocusing2: return {f, u * M_PI / 2, v};                  // phi, m
    case F::QuinticDefocusing: return {f, v, u * v};                        // l = v, m = u l
    }
    return {f, u, v};
}

std::vector<GridPoint> run_grid(const GridSpec& spec, Perturbation pert, double threshold,
                                bool keep_roots, int threads) {
    const int n1 = spec.n1, n2 = spec.n2;
    std::vector<GridPoint> rows(static_cast<std::size_t>(n1) * n2);

    auto coord = [&](int idx, int n, const std::optional<std::array<double, 2>>& range) {
        const double t = spec.inset + (1 - 2 * spec.inset) * (idx + 0.5) / n;
        return range ? (*range)[0] + ((*range)[1] - (*range)[0]) * t : t;
    };

    auto work = [&](std::size_t flat) {
        const int i = static_cast<int>(flat) / n2;
        const int j = static_cast<int>(flat) % n2;
        GridPoint& row = rows[flat];
        row.i = i;
        row.j = j;

        CaseId cid{spec.family, 0.0, 0.0};
        if (spec.p1_range || spec.p2_range) {
            cid.p1 = row.p1 = coord(i, n1, spec.p1_range);
            cid.p2 = row.p2 = coord(j, n2, spec.p2_range);
        } else {
            cid = domain_point(spec.family, coord(i, n1, std::nullopt), coord(j, n2, std::nullopt));
            row.p1 = cid.p1;
            row.p2 = cid.p2;
        }

        try {
            // staged so genericity data survives a later pencil failure
            const CaseWave cw = from_case(cid);
            const MomentSet ms = moment_set(cw.poly, cw.params);
            row.nodes = ms.nodes;
            const SylvesterSolution syl = solve_sylvester(cw.poly, ms);
            const DerivativeSet dv = jacobian(cw.poly, cw.params, ms, syl);
            const KernelCoefficients kc = kernel_coefficients(dv, ms);
            const GenericityReport gen = genericity(kc, dv, ms, cw.params);
            row.sigma = kc.sigma;
            row.det_M2 = gen.det_M2;
            row.D4 = gen.D4;
            if (gen.chain_marginal) row.flag = "chain-marginal";

            const PencilMatrices pm =
                pert == Perturbation::Longitudinal
                    ? longitudinal_pencil(kc, dv, ms, cw.params)
                    : transverse_pencil(kc, dv, ms, cw.params, pert);
            const QuarticRoots qr = solve_quartic(quartic_coeffs(pm));
            const StabilityReport rep = classify(qr.lambda, threshold);
            row.ok = true;
            row.unstable_dim = rep.unstable_dim;
            if (keep_roots) row.roots = rep.roots;
        } catch (const Error& e) {
            const char* colon = std::strchr(e.what(), ':');
            row.flag = colon ? std::string(e.what(), colon - e.what()) : std::string(e.what());
        } catch (const std::exception&) {
            row.flag = "InternalError";
        }
    };

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (std::size_t k = next.fetch_add(1); k < rows.size(); k = next.fetch_add(1))
                work(k);
        });
    for (auto& th : pool) th.join();
    return rows;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void append_header(std::ostringstream& os, const GridSpec& spec, Perturbation pert,
                   double threshold, const QuadratureOptions& qopts, const char* kind) {
    os << "# " << kToolVersion << " " << kind << "\n";
    os << "# case=" << family_name(spec.family) << " perturbation=" << perturbation_name(pert)
       << " grid=" << spec.n1 << "x" << spec.n2 << " inset=" << fmt(spec.inset)
       << " threshold=" << fmt(threshold) << "\n";
    if (spec.p1_range)
        os << "# p1_range=" << fmt((*spec.p1_range)[0]) << "," << fmt((*spec.p1_range)[1]) << "\n";
    if (spec.p2_range)
        os << "# p2_range=" << fmt((*spec.p2_range)[0]) << "," << fmt((*spec.p2_range)[1]) << "\n";
    os << "# quadrature: start_nodes=" << qopts.start_nodes << " max_nodes=" << qopts.max_nodes
       << " rtol=" << fmt(qopts.rtol) << "\n";
}

void append_histogram(std::ostringstream& os, const std::vector<GridPoint>& rows) {
    const auto h = dim_histogram(rows);
    os << "# histogram:";
    for (const auto& [dim, count] : h) {
        if (dim < 0)
            os << " err=" << count;
        else
            os << " " << dim << "D=" << count;
    }
    os << "\n";
}

} // namespace

std::map<int, int> dim_histogram(const std::vector<GridPoint>& rows) {
    std::map<int, int> h;
    for (const auto& r : rows) ++h[r.ok ? r.unstable_dim : -1];
    return h;
}

std::string grid_to_csv(const GridSpec& spec, Perturbation pert, double threshold,
                        const std::vector<GridPoint>& rows, const QuadratureOptions& qopts,
                        const char* kind) {
    std::ostringstream os;
    append_header(os, spec, pert, threshold, qopts, kind);
    const bool with_roots = !rows.empty() && !rows.front().roots.empty();
    os << "# columns: i,j,p1,p2,unstable_dim,sigma,det_M2,D4,nodes,flag";
    if (with_roots) os << ",re1,im1,re2,im2,re3,im3,re4,im4";
    os << "\n";
    for (const auto& r : rows) {
        os << r.i << "," << r.j << "," << fmt(r.p1) << "," << fmt(r.p2) << ","
           << r.unstable_dim << "," << fmt(r.sigma) << "," << fmt(r.det_M2) << ","
           << fmt(r.D4) << "," << r.nodes << "," << r.flag;
        if (with_roots) {
            for (std::size_t q = 0; q < 4; ++q) {
                if (q < r.roots.size())
                    os << "," << fmt(r.roots[q].real()) << "," << fmt(r.roots[q].imag());
                else
                    os << ",,";
            }
        }
        os << "\n";
    }
    append_histogram(os, rows);
    return os.str();
}

std::string grid_to_jsonl(const GridSpec& spec, Perturbation pert, double threshold,
                          const std::vector<GridPoint>& rows) {
    std::ostringstream os;
    os << R"({"tool":")" << kToolVersion << R"(","case":")" << family_name(spec.family)
       << R"(","perturbation":")" << perturbation_name(pert) << R"(","grid":[)" << spec.n1
       << "," << spec.n2 << R"(],"inset":)" << fmt(spec.inset) << R"(,"threshold":)"
       << fmt(threshold) << "}\n";
    for (const auto& r : rows) {
        os << R"({"i":)" << r.i << R"(,"j":)" << r.j << R"(,"p1":)" << fmt(r.p1) << R"(,"p2":)"
           << fmt(r.p2) << R"(,"unstable_dim":)" << r.unstable_dim << R"(,"sigma":)"
           << fmt(r.sigma) << R"(,"det_M2":)" << fmt(r.det_M2) << R"(,"D4":)" << fmt(r.D4)
           << R"(,"nodes":)" << r.nodes << R"(,"flag":")" << r.flag << "\"";
        if (!r.roots.empty()) {
            os << R"(,"roots":[)";
            for (std::size_t q = 0; q < r.roots.size(); ++q) {
                if (q) os << ",";
                os << "[" << fmt(r.roots[q].real()) << "," << fmt(r.roots[q].imag()) << "]";
            }
            os << "]";
        }
        os << "}\n";
    }
    return os.str();
}

} // namespace modstab
