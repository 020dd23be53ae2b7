#ifndef MODSTAB_ANALYSIS_HPP
#define MODSTAB_ANALYSIS_HPP

#include "modstab/floquet.hpp"
#include "modstab/modulation.hpp"
#include "modstab/moments.hpp"
#include "modstab/nonlinearity.hpp"
#include "modstab/pencil.hpp"
#include "modstab/picard_fuchs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modstab {

inline constexpr const char* kToolVersion = "modstab 1.0.0";

// Full single-point pipeline: polynomial -> moments -> Picard-Fuchs ->
// kernel coefficients -> genericity -> pencil -> slopes -> classification.
struct PointAnalysis {
    WaveParams params;
    QuadraturePolynomial poly;
    MomentSet moments;
    DerivativeSet derivs;
    KernelCoefficients coeffs;
    GenericityReport gen;
    PencilMatrices pencil;
    std::array<double, 5> quartic{};
    StabilityReport stab;
};

PointAnalysis analyze_params(const WaveParams& params, Perturbation pert,
                             double threshold = kDefaultClassifyThreshold,
                             const QuadratureOptions& qopts = {}, int bracket_index = -1);

PointAnalysis analyze_case(const CaseId& c, Perturbation pert,
                           double threshold = kDefaultClassifyThreshold,
                           const QuadratureOptions& qopts = {});

// --- case-name and grid machinery -------------------------------------------

std::optional<CaseId::Family> parse_family(const std::string& name);
std::string family_name(CaseId::Family f);
std::optional<Perturbation> parse_perturbation(const std::string& name);
std::string perturbation_name(Perturbation p);

// Map normalized (u, v) in (0,1)^2 onto the case parameter domain.
CaseId domain_point(CaseId::Family f, double u, double v);

struct GridSpec {
    CaseId::Family family;
    int n1 = 50, n2 = 50;
    double inset = 1e-3;    // in normalized coordinates
    // explicit raw-coordinate ranges (for region closeups); the grid is
    // cell-centred within the inset-shrunk range either way
    std::optional<std::array<double, 2>> p1_range, p2_range;
};

struct GridPoint {
    int i = 0, j = 0;
    double p1 = 0.0, p2 = 0.0;
    bool ok = false;
    int unstable_dim = -1;
    int nodes = 0;              // quadrature nodes the moment ladder settled at
    double sigma = 0.0, det_M2 = 0.0, D4 = 0.0;
    std::string flag;       // error name, or "chain-marginal"
    std::vector<std::complex<double>> roots;
};

// Evaluates the pipeline at every grid point (row-major in p1 then p2) using a
// worker pool; per-point failures are recorded in-row and never abort the
// sweep. Results are deterministic and ordering-independent of scheduling.
std::vector<GridPoint> run_grid(const GridSpec& spec, Perturbation pert, double threshold,
                                bool keep_roots, int threads = 0);

// Deterministic CSV (with '#' metadata header) or JSON-lines rendering.
std::string grid_to_csv(const GridSpec& spec, Perturbation pert, double threshold,
                        const std::vector<GridPoint>& rows, const QuadratureOptions& qopts = {},
                        const char* kind = "sweep");
std::string grid_to_jsonl(const GridSpec& spec, Perturbation pert, double threshold,
                          const std::vector<GridPoint>& rows);

// Histogram over unstable_dim of successful rows (key -1 collects failures).
std::map<int, int> dim_histogram(const std::vector<GridPoint>& rows);

} // namespace modstab

#endif
