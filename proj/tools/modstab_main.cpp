// Command-line front end: single-point analysis, parameter-space stability
// sweeps, Galerkin spectra and genericity scans, with machine-readable output.
//
//   modstab analyze  --case quintic-f4 --p 0.01 0.4 --perturbation transverse-elliptic
//   modstab sweep    --case cubic-d --grid 50 50 --perturbation longitudinal --out sweep.csv
//   modstab spectrum --case cubic-f --p 0.9 0.85 --modes 20 --mu-samples 200 --out spec.csv
//   modstab check    --case quintic-f4 --grid 100 100 --p1-range 0 0.03 --out check.csv
//
// Exit codes: 0 ok, 2 domain error, 3 degeneracy, 4 numerical failure.

#include "modstab/analysis.hpp"
#include "modstab/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

using json = nlohmann::ordered_json;
using namespace modstab;

namespace {

struct PointArgs {
    std::string case_name;
    std::vector<double> p;
    std::vector<double> raw;       // E kappa omega zeta
    std::string nonlinearity = "cubic";
    std::string perturbation = "longitudinal";
    double threshold = kDefaultClassifyThreshold;
    int bracket = -1;
};

void add_point_flags(CLI::App* cmd, PointArgs& a, bool with_threshold = true) {
    cmd->add_option("--case", a.case_name,
                    "case family: cubic-f, cubic-d, quintic-f4, quintic-f2, quintic-d");
    cmd->add_option("--p", a.p, "case parameters (two values)")->expected(2);
    cmd->add_option("--raw", a.raw, "raw parameters E KAPPA OMEGA ZETA")->expected(4);
    cmd->add_option("--nonlinearity", a.nonlinearity,
                    "for --raw: cubic, quintic or poly:<c1,c2,...>");
    cmd->add_option("--perturbation", a.perturbation,
                    "longitudinal | transverse-elliptic | transverse-hyperbolic");
    if (with_threshold)
        cmd->add_option("--threshold", a.threshold, "relative real-part threshold for classification");
    cmd->add_option("--bracket", a.bracket, "override oscillation-bracket index (raw input only)");
}

NonlinearitySpec parse_nonlinearity(const std::string& s) {
    if (s == "cubic") return NonlinearitySpec::cubic();
    if (s == "quintic") return NonlinearitySpec::quintic();
    if (s.rfind("poly:", 0) == 0) {
        std::vector<double> cs;
        std::stringstream ss(s.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) cs.push_back(std::stod(tok));
        return NonlinearitySpec::general(cs);
    }
    throw OutOfDomain("unknown nonlinearity '" + s + "'");
}

Perturbation parse_pert_or_throw(const std::string& s) {
    auto p = parse_perturbation(s);
    if (!p) throw OutOfDomain("unknown perturbation '" + s + "'");
    return *p;
}

PointAnalysis analyze_from_args(const PointArgs& a, Perturbation pert) {
    if (!a.case_name.empty()) {
        auto fam = parse_family(a.case_name);
        if (!fam) throw OutOfDomain("unknown case '" + a.case_name + "'");
        if (a.p.size() != 2) throw OutOfDomain("--case requires --p <a> <b>");
        return analyze_case({*fam, a.p[0], a.p[1]}, pert, a.threshold);
    }
    if (a.raw.size() == 4) {
        WaveParams wp{a.raw[0], a.raw[1], a.raw[2], a.raw[3], parse_nonlinearity(a.nonlinearity)};
        return analyze_params(wp, pert, a.threshold, {}, a.bracket);
    }
    throw OutOfDomain("either --case with --p, or --raw, is required");
}

json complex_list(const std::vector<std::complex<double>>& v) {
    json arr = json::array();
    for (const auto& c : v) arr.push_back({c.real(), c.imag()});
    return arr;
}

json matrix2(const Eigen::Matrix2d& m) {
    return json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}});
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file " + path, 4);
    f << content;
}

int cmd_analyze(const PointArgs& a) {
    const Perturbation pert = parse_pert_or_throw(a.perturbation);
    const PointAnalysis pa = analyze_from_args(a, pert);

    json out;
    out["tool"] = kToolVersion;
    out["params"] = {{"E", pa.params.E},
                     {"kappa", pa.params.kappa},
                     {"omega", pa.params.omega},
                     {"zeta", pa.params.zeta}};
    out["bracket"] = {pa.poly.r1, pa.poly.r2};
    json alpha = json::array();
    for (double v : pa.poly.alpha) alpha.push_back(v);
    out["alpha"] = alpha;
    out["moments"] = {{"T", pa.moments.T}, {"M", pa.moments.M},   {"eta", pa.moments.eta},
                      {"U", pa.moments.U}, {"K", pa.moments.K},   {"nodes", pa.moments.nodes}};
    json jac = json::array();
    for (int r = 0; r < 4; ++r)
        jac.push_back({pa.derivs.jac(r, 0), pa.derivs.jac(r, 1), pa.derivs.jac(r, 2),
                       pa.derivs.jac(r, 3)});
    out["jacobian_TMetaU_by_EkappaOmegaZeta"] = jac;
    out["kernel_coefficients"] = {{"sigma", pa.coeffs.sigma}, {"gamma", pa.coeffs.gamma},
                                  {"rho", pa.coeffs.rho},     {"tau", pa.coeffs.tau},
                                  {"nu", pa.coeffs.nu},       {"xi", pa.coeffs.xi},
                                  {"psi", pa.coeffs.psi}};
    out["sylvester"] = {{"det_S", pa.derivs.syl.det_S},
                        {"rcond", pa.derivs.syl.rcond},
                        {"residual", pa.derivs.syl.residual},
                        {"ill_conditioned", pa.derivs.syl.ill_conditioned}};
    out["genericity"] = {{"sigma", pa.gen.sigma},
                         {"det_M2", pa.gen.det_M2},
                         {"D4", pa.gen.D4},
                         {"kernel_generic", pa.gen.kernel_generic},
                         {"chain_generic", pa.gen.chain_generic},
                         {"chain_marginal", pa.gen.chain_marginal}};
    out["pencil"] = {{"perturbation", perturbation_name(pert)},
                     {"M2", matrix2(pa.pencil.M2)},
                     {"M1_imag", matrix2(pa.pencil.M1_imag)},
                     {"M0", matrix2(pa.pencil.M0)}};
    out["quartic_s_coeffs"] = pa.quartic;
    out["roots"] = complex_list(pa.stab.roots);
    out["classification"] = {{"unstable_dim", pa.stab.unstable_dim},
                             {"n_real", pa.stab.n_real},
                             {"n_imag", pa.stab.n_imag},
                             {"n_complex", pa.stab.n_complex},
                             {"root_at_infinity", pa.stab.root_at_infinity}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const PointArgs& a, int n1, int n2, double inset,
              std::vector<double> p1r, std::vector<double> p2r, const std::string& out_path,
              const std::string& format, bool keep_roots, int threads, bool is_check) {
    auto fam = parse_family(a.case_name);
    if (!fam) throw OutOfDomain("sweep requires a valid --case");
    GridSpec spec;
    spec.family = *fam;
    spec.n1 = n1;
    spec.n2 = n2;
    spec.inset = inset;
    if (p1r.size() == 2) spec.p1_range = {p1r[0], p1r[1]};
    if (p2r.size() == 2) spec.p2_range = {p2r[0], p2r[1]};
    if (spec.n1 < 2 || spec.n2 < 2) throw OutOfDomain("grid must be at least 2x2");
    if (!(spec.inset > 0)) throw OutOfDomain("inset must be positive");

    const Perturbation pert = parse_pert_or_throw(a.perturbation);
    const auto rows = run_grid(spec, pert, a.threshold, keep_roots, threads);
    std::string content = format == "jsonl"
                              ? grid_to_jsonl(spec, pert, a.threshold, rows)
                              : grid_to_csv(spec, pert, a.threshold, rows, {},
                                            is_check ? "check" : "sweep");
    write_output(out_path, content);

    const auto h = dim_histogram(rows);
    std::ostringstream sum;
    sum << (is_check ? "check" : "sweep") << " " << family_name(*fam) << " "
        << perturbation_name(pert) << " histogram:";
    for (const auto& [dim, count] : h)
        sum << " " << (dim < 0 ? std::string("err") : std::to_string(dim) + "D") << "=" << count;
    std::cerr << sum.str() << "\n";
    return 0;
}

int cmd_spectrum(const PointArgs& a, int modes, int samples, double mu_max, double window,
                 const std::string& out_path, const std::string& format, int threads) {
    const Perturbation pert = parse_pert_or_throw(a.perturbation);
    const PointAnalysis pa = analyze_from_args(a, pert);
    const WaveParams& wp = pa.params;

    double mmax = mu_max;
    if (mmax <= 0) mmax = pert == Perturbation::Longitudinal ? M_PI / pa.moments.T : 1.0;

    // pencil slope overlay
    const QuarticRoots slopes = solve_quartic(pa.quartic);

    int N = modes;
    std::ostringstream os;
    const bool jsonl = format == "jsonl";
    if (!jsonl) {
        os << "# " << kToolVersion << " spectrum\n";
        os << "# case=" << a.case_name << " perturbation=" << perturbation_name(pert)
           << " samples=" << samples << " mu_max=";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", mmax);
        os << buf << "\n";
        os << "# columns: type,mu,re,im\n";
    }
    auto emit = [&](const char* type, double mu, std::complex<double> v) {
        char line[160];
        std::snprintf(line, sizeof line, "%s,%.17g,%.17g,%.17g", type, mu, v.real(), v.imag());
        if (jsonl)
            os << R"({"type":")" << type << R"(","mu":)" << mu << R"(,"re":)" << v.real()
               << R"(,"im":)" << v.imag() << "}\n";
        else
            os << line << "\n";
    };
    for (const auto& s : slopes.lambda) emit("slope", 0.0, s);

    // the profile and the mode requirement are mu-independent: escalate N
    // once, then sweep the perturbation range
    auto make_profile = [&](int n) {
        const int n_s = 1 << static_cast<int>(std::ceil(std::log2(std::max(1024, 8 * n))));
        return reconstruct_wave(wp, pa.poly, pa.moments.T, n_s);
    };
    WaveProfile prof = make_profile(N);
    while (prof.tail_energy(N) > 1e-8 && 2 * N <= 512) {
        N *= 2;
        prof = make_profile(N);
    }

    // samples are independent eigensolves; results land in preallocated slots
    // so the output is deterministic regardless of scheduling
    std::vector<std::string> chunks(samples);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next.fetch_add(1); k < samples; k = next.fetch_add(1)) {
            const double mu = pert == Perturbation::Longitudinal
                                  ? -mmax + (2 * mmax) * (k + 0.5) / samples
                                  : mmax * (k + 1.0) / samples;
            const auto ev = spectrum(build_operator(prof, wp, pert, mu, N));
            std::ostringstream local;
            for (const auto& l : ev) {
                if (window > 0 && std::abs(l) > window) continue;
                if (jsonl)
                    local << R"({"type":"eig","mu":)" << mu << R"(,"re":)" << l.real()
                          << R"(,"im":)" << l.imag() << "}\n";
                else {
                    char line[160];
                    std::snprintf(line, sizeof line, "eig,%.17g,%.17g,%.17g", mu, l.real(),
                                  l.imag());
                    local << line << "\n";
                }
            }
            chunks[k] = local.str();
        }
    };
    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& c : chunks) os << c;

    write_output(out_path, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modulational stability of periodic NLS traveling waves"};
    app.require_subcommand(1);

    PointArgs a_an, a_sw, a_sp, a_ck;
    std::vector<int> grid{50, 50};
    int threads = 0;
    double inset = 1e-3;
    std::vector<double> p1r, p2r;
    std::string out_path, format = "csv";
    bool keep_roots = false;
    int modes = 20, samples = 200;
    double mu_max = 0.0, window = 0.0;

    auto* an = app.add_subcommand("analyze", "full pipeline at one point, JSON to stdout");
    add_point_flags(an, a_an);

    auto* sw = app.add_subcommand("sweep", "stability classification over a parameter grid");
    add_point_flags(sw, a_sw);
    sw->add_option("--grid", grid, "grid resolution n1 n2")->expected(2);
    sw->add_option("--inset", inset, "domain inset in normalized coordinates");
    sw->add_option("--p1-range", p1r, "explicit p1 range lo hi")->expected(2);
    sw->add_option("--p2-range", p2r, "explicit p2 range lo hi")->expected(2);
    sw->add_option("--out", out_path, "output path ('-' for stdout)");
    sw->add_option("--format", format, "csv | jsonl");
    sw->add_flag("--roots", keep_roots, "include the four slope roots per row");
    sw->add_option("--threads", threads, "worker threads (default: hardware)");

    auto* sp = app.add_subcommand("spectrum", "Galerkin eigenvalues over a perturbation range");
    add_point_flags(sp, a_sp);
    sp->add_option("--modes", modes, "Fourier mode cutoff N");
    sp->add_option("--mu-samples", samples, "number of perturbation samples");
    sp->add_option("--mu-max", mu_max, "range bound (default: pi/T longitudinal, 1 transverse)");
    sp->add_option("--window", window, "keep only |lambda| <= window (0: all)");
    sp->add_option("--out", out_path, "output path ('-' for stdout)");
    sp->add_option("--format", format, "csv | jsonl");
    sp->add_option("--threads", threads, "worker threads (default: hardware)");

    auto* ck = app.add_subcommand("check", "genericity scan: sigma, det_M2, D4 over a grid");
    add_point_flags(ck, a_ck);
    ck->add_option("--grid", grid, "grid resolution n1 n2")->expected(2);
    ck->add_option("--inset", inset, "domain inset in normalized coordinates");
    ck->add_option("--p1-range", p1r, "explicit p1 range lo hi")->expected(2);
    ck->add_option("--p2-range", p2r, "explicit p2 range lo hi")->expected(2);
    ck->add_option("--out", out_path, "output path ('-' for stdout)");
    ck->add_option("--format", format, "csv | jsonl");
    ck->add_option("--threads", threads, "worker threads (default: hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (an->parsed()) return cmd_analyze(a_an);
        if (sw->parsed())
            return cmd_sweep(a_sw, grid[0], grid[1], inset, p1r, p2r, out_path, format,
                             keep_roots, threads, false);
        if (sp->parsed())
            return cmd_spectrum(a_sp, modes, samples, mu_max, window, out_path, format, threads);
        if (ck->parsed())
            return cmd_sweep(a_ck, grid[0], grid[1], inset, p1r, p2r, out_path, format, false,
                             threads, true);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
