#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revcap/closedform.hpp"

// Optimizers and experiments on top of the information layer: single-letter
// capacities, capacity curves, thermal-noise thresholds, degradability and
// antidegradability checks, additivity and data-processing probes, and the
// analytic erasure reference.

namespace revcap {

struct OptimizationResult {
    double argmax_p = 0.0;
    double value = 0.0;      // capacity, clamped at zero
    double raw_value = 0.0;  // unclamped optimizer value
    long evaluations = 0;
    bool refined = false;
};

struct CurveRow {
    double eta = 0.0;
    std::optional<double> alpha;  // absent for the damping family
    double value_ci = 0.0;
    double value_rci = 0.0;
    double p_ci = 0.0;
    double p_rci = 0.0;
};

struct ViolationReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    std::map<std::string, double> witness;
    bool violated = false;
    bool domain_flag = false;
    std::string note;
};

// Coarse 1024-point grid on [1e-6, 1-1e-6] at theta = pi/2, then
// golden-section refinement of the bracketing interval to width tol.
OptimizationResult optimize_population(const ChannelSpec& spec, Measure measure, double tol = 1e-9);

// One row per grid point over [eta_from, eta_to] with steps intervals
// (steps + 1 rows); both measures optimized.
std::vector<CurveRow> capacity_curve(Family family, double eta_from, double eta_to, int steps,
                                     std::optional<double> alpha, int jobs = 1);

// Minimum alpha in [0, 1/2] at which the optimized capacity drops to zero
// (threshold 1e-7 bits), found by bisection to width tol.
double noise_threshold(Measure measure, double eta, double tol = 1e-7);

// Choi distance |Choi(D_{(1-eta)/eta} o D_eta) - Choi(D_{1-eta})|; for
// eta < 1/2 the candidate parameter exceeds 1 and the report carries a
// domain flag instead.
ViolationReport check_degradable_ad(double eta);

// Choi distance between D_{(eta/(1-eta),alpha)} o (env-qubit channel) and
// D_{(eta,alpha)}; requires eta <= 1/2.
ViolationReport check_antidegradable_gad(double eta, double alpha);

// Margin of I_R(ch (x) ch, joint) <= I_R(ch, marginal_1) + I_R(ch, marginal_2).
ViolationReport additivity_check(const KrausChannel& ch, const DensityMatrix& joint_input);
ViolationReport additivity_check(const ChannelSpec& spec, const DensityMatrix& joint_input);

// Flags I_R(post o first, rho) exceeding I_R(first, rho) by more than 1e-9.
// A probe: reports, never asserts discovery.
ViolationReport dpi_probe(const KrausChannel& first, const KrausChannel& post,
                          const DensityMatrix& rho);

// ci = (1 - 2 epsilon) H(p); rci = (1 - epsilon) H(p) - H(epsilon).
std::pair<double, double> erasure_reference(double epsilon, double p);

// Seeded Wishart-style random density matrix (rank factors of standard
// complex Gaussians), deterministic in seed.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

}  // namespace revcap
