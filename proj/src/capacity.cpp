#include "revcap/capacity.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "revcap/parallel.hpp"

namespace revcap {

using detail::require;

namespace {

constexpr double kZeroCapacityThreshold = 1e-7;  // bits
constexpr double kChoiTolerance = 1e-10;

double population_value(const ChannelSpec& spec, Measure measure, double p) {
    if (spec.family == Family::ad)
        return closed_form_value(ClosedFamily::ad, measure, spec.eta, 0.0, p, 1.5707963267948966);
    return closed_form_value(ClosedFamily::gad, measure, spec.eta, spec.alpha, p, 1.5707963267948966);
}

}  // namespace

OptimizationResult optimize_population(const ChannelSpec& spec, Measure measure, double tol) {
    require(spec.family == Family::ad || spec.family == Family::gad,
            "optimize_population: channel family must be ad or gad");
    require(tol >= 1e-10, "optimize_population: tol must be >= 1e-10");

    constexpr int kGridPoints = 1024;
    constexpr double kLo = 1e-6;
    constexpr double kHi = 1.0 - 1e-6;

    OptimizationResult result;
    const auto value = [&](double p) {
        ++result.evaluations;
        return population_value(spec, measure, p);
    };

    int best = 0;
    double best_value = -1e300;
    std::vector<double> grid(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        grid[i] = kLo + (kHi - kLo) * i / (kGridPoints - 1);
        const double v = value(grid[i]);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }

    double lo = grid[std::max(best - 1, 0)];
    double hi = grid[std::min(best + 1, kGridPoints - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - (hi - lo) * inv_phi;
    double d = lo + (hi - lo) * inv_phi;
    double fc = value(c);
    double fd = value(d);
    while (hi - lo > tol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - (hi - lo) * inv_phi;
            fc = value(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + (hi - lo) * inv_phi;
            fd = value(d);
        }
    }
    result.refined = true;
    result.argmax_p = 0.5 * (lo + hi);
    result.raw_value = std::max({best_value, fc, fd, value(result.argmax_p)});
    result.value = std::max(result.raw_value, 0.0);
    return result;
}

std::vector<CurveRow> capacity_curve(Family family, double eta_from, double eta_to, int steps,
                                     std::optional<double> alpha, int jobs) {
    require(family == Family::ad || family == Family::gad, "capacity_curve: family must be ad or gad");
    require(eta_from >= 0.0 && eta_from < eta_to && eta_to <= 1.0,
            "capacity_curve: need 0 <= eta_from < eta_to <= 1");
    require(steps >= 2, "capacity_curve: steps must be >= 2");
    require(family != Family::gad || alpha.has_value(), "capacity_curve: alpha required for gad");
    require(family != Family::ad || !alpha.has_value(), "capacity_curve: alpha not accepted for ad");

    std::vector<CurveRow> rows(steps + 1);
    const auto worker = [&](int i) {
        const double eta = eta_from + (eta_to - eta_from) * i / steps;
        ChannelSpec spec;
        spec.family = family;
        spec.eta = eta;
        spec.alpha = alpha.value_or(0.0);
        CurveRow row;
        row.eta = eta;
        row.alpha = alpha;
        const OptimizationResult ci = optimize_population(spec, Measure::ci);
        const OptimizationResult rci = optimize_population(spec, Measure::rci);
        row.value_ci = ci.value;
        row.p_ci = ci.argmax_p;
        row.value_rci = rci.value;
        row.p_rci = rci.argmax_p;
        rows[i] = row;
    };

    parallel_for_index(steps + 1, jobs, worker);
    return rows;
}

double noise_threshold(Measure measure, double eta, double tol) {
    require(eta >= 0.0 && eta <= 1.0, "noise_threshold: eta must lie in [0, 1]");
    require(tol >= 1e-10, "noise_threshold: tol must be >= 1e-10");
    const auto capacity = [&](double alpha) {
        ChannelSpec spec;
        spec.family = Family::gad;
        spec.eta = eta;
        spec.alpha = alpha;
        return optimize_population(spec, measure).value;
    };
    if (capacity(0.0) <= kZeroCapacityThreshold) return 0.0;
    if (capacity(0.5) > kZeroCapacityThreshold) return 0.5;
    double lo = 0.0;   // capacity above threshold
    double hi = 0.5;   // capacity at or below threshold
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (capacity(mid) > kZeroCapacityThreshold)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ViolationReport check_degradable_ad(double eta) {
    require(eta > 0.0 && eta <= 1.0, "check_degradable_ad: eta must lie in (0, 1]");
    ViolationReport report;
    const double degrading = (1.0 - eta) / eta;
    report.witness = {{"eta", eta}, {"degrading_eta", degrading}};
    if (eta < 0.5) {
        report.domain_flag = true;
        report.note = "no valid damping degrading parameter: (1-eta)/eta > 1";
        return report;
    }
    const double dist = choi_distance(compose(make_ad(degrading), make_ad(eta)), make_ad(1.0 - eta));
    report.lhs = dist;
    report.rhs = kChoiTolerance;
    report.margin = report.rhs - report.lhs;
    report.violated = dist > kChoiTolerance;
    return report;
}

ViolationReport check_antidegradable_gad(double eta, double alpha) {
    require(alpha >= 0.0 && alpha <= 1.0, "check_antidegradable_gad: alpha must lie in [0, 1]");
    require(eta > 0.0, "check_antidegradable_gad: eta must be positive");
    if (eta > 0.5)
        throw std::domain_error("check_antidegradable_gad: eta/(1-eta) exceeds 1 for eta > 1/2");
    ViolationReport report;
    const double antidegrading = eta / (1.0 - eta);
    report.witness = {{"eta", eta}, {"alpha", alpha}, {"antidegrading_eta", antidegrading}};
    const KrausChannel composed =
        compose(make_gad(antidegrading, alpha).channel, gad_env_qubit_channel(eta, alpha));
    const double dist = choi_distance(composed, make_gad(eta, alpha).channel);
    report.lhs = dist;
    report.rhs = kChoiTolerance;
    report.margin = report.rhs - report.lhs;
    report.violated = dist > kChoiTolerance;
    return report;
}

ViolationReport additivity_check(const KrausChannel& ch, const DensityMatrix& joint_input) {
    require(joint_input.dim == ch.in_dim * ch.in_dim,
            "additivity_check: joint input dimension must be in_dim^2");
    const std::vector<int> dims{ch.in_dim, ch.in_dim};
    const DensityMatrix rho1 = partial_trace(joint_input, dims, {0});
    const DensityMatrix rho2 = partial_trace(joint_input, dims, {1});
    const KrausChannel pair = tensor_channels(ch, ch);

    ViolationReport report;
    report.lhs = reverse_coherent_information(pair, joint_input).value;
    report.rhs = reverse_coherent_information(ch, rho1).value +
                 reverse_coherent_information(ch, rho2).value;
    report.margin = report.rhs - report.lhs;
    report.violated = report.margin < -1e-9;
    return report;
}

ViolationReport additivity_check(const ChannelSpec& spec, const DensityMatrix& joint_input) {
    return additivity_check(from_spec(spec), joint_input);
}

ViolationReport dpi_probe(const KrausChannel& first, const KrausChannel& post,
                          const DensityMatrix& rho) {
    require(first.out_dim == post.in_dim, "dpi_probe: channels do not chain");
    ViolationReport report;
    report.lhs = reverse_coherent_information(compose(post, first), rho).value;  // post-processed
    report.rhs = reverse_coherent_information(first, rho).value;                 // single channel
    report.margin = report.rhs - report.lhs;
    report.violated = report.margin < -1e-9;
    return report;
}

std::pair<double, double> erasure_reference(double epsilon, double p) {
    require(epsilon >= 0.0 && epsilon <= 1.0, "erasure_reference: epsilon must lie in [0, 1]");
    require(p >= 0.0 && p <= 1.0, "erasure_reference: p must lie in [0, 1]");
    const double hp = binary_entropy(p);
    return {(1.0 - 2.0 * epsilon) * hp, (1.0 - epsilon) * hp - binary_entropy(epsilon)};
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
    require(dim >= 1 && rank >= 1, "random_density: dim and rank must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto gauss = [&]() {
        double u1 = uni(rng);
        while (u1 <= 1e-300) u1 = uni(rng);
        const double u2 = uni(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        return complex(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
    };
    ComplexMatrix g(dim, rank);
    for (auto& e : g.entries) e = gauss();
    ComplexMatrix w = g * adjoint(g);
    const double tr = trace(w).real();
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = w(i, j) / tr;
    // Symmetrize away the last bits of rounding so the validator accepts it.
    for (int i = 0; i < dim; ++i) {
        m(i, i) = complex(m(i, i).real(), 0.0);
        for (int j = i + 1; j < dim; ++j) {
            const complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
    return DensityMatrix::from_matrix(std::move(m));
}

}  // namespace revcap
