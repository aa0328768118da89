#include "revcap/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revcap {

using detail::require;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;

void require_params(const InputParams& params) {
    require(std::isfinite(params.p) && params.p >= 0.0 && params.p <= 1.0, "p must lie in [0, 1]");
    require(std::isfinite(params.theta) && params.theta >= 0.0 && params.theta <= kPi,
            "theta must lie in [0, pi]");
    require(std::isfinite(params.phi) && params.phi >= 0.0 && params.phi < 2.0 * kPi,
            "phi must lie in [0, 2 pi)");
}

void require_unit(double x, const char* name) {
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0, std::string(name) + " must lie in [0, 1]");
}

double entropy_pair(double lp, double lm) {
    double h = 0.0;
    if (lp > 1e-15) h -= lp * std::log2(lp);
    if (lm > 1e-15) h -= lm * std::log2(lm);
    return h;
}

// -log2((1-s)/(1+s)) / s on [0, 1); series below s = 1e-5 removes the 0/0 at
// s = 0. Diverges as s -> 1, which callers must reject first.
double neg_log_ratio_over_s(double s) {
    if (s < 1e-5) return (2.0 / kLn2) * (1.0 + s * s / 3.0);
    return -std::log2((1.0 - s) / (1.0 + s)) / s;
}

// a(x) = (1-2xp)^2 + 4x(1-p)p cos^2 theta
double radicand(double x, double p, double cos2theta) {
    const double lin = 1.0 - 2.0 * x * p;
    return lin * lin + 4.0 * x * (1.0 - p) * p * cos2theta;
}

// F(x) = (x / sqrt(a)) log2[(1 - sqrt(a)) / (1 + sqrt(a))]
double f_term(double x, double p, double cos2theta) {
    const double a = radicand(x, p, cos2theta);
    if (a >= 1.0 - 1e-12)
        throw std::domain_error("derivative term F(x): log argument vanishes (radicand a -> 1)");
    return -x * neg_log_ratio_over_s(std::sqrt(std::max(a, 0.0)));
}

}  // namespace

std::string measure_name(Measure m) { return m == Measure::ci ? "ci" : "rci"; }

std::pair<DensityMatrix, StateVector> general_input(const InputParams& params) {
    require_params(params);
    const double p = params.p;
    const double root = std::sqrt((1.0 - p) * p);
    const complex phase = std::exp(complex(0.0, params.phi));
    const double ct = std::cos(params.theta);
    const double st = std::sin(params.theta);

    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0 - p;
    m(1, 1) = p;
    m(0, 1) = root * std::conj(phase) * ct;
    m(1, 0) = root * phase * ct;
    DensityMatrix rho = DensityMatrix::from_matrix(std::move(m));

    // |psi>_AA' = sqrt(1-p)|0>_A|0>_A' + sqrt(p) e^{i phi} (cos|0> + sin|1>)_A |1>_A'
    std::vector<complex> amps(4);
    amps[0] = std::sqrt(1.0 - p);
    amps[1] = std::sqrt(p) * phase * ct;  // |0>_A |1>_A'
    amps[3] = std::sqrt(p) * phase * st;  // |1>_A |1>_A'
    return {std::move(rho), StateVector(std::move(amps))};
}

double phase_invariance_check(const InputParams& params, double eta) {
    require_unit(eta, "eta");
    const KrausChannel ch = make_ad(eta);
    const auto entropies = [&](double phi) {
        InputParams q = params;
        q.phi = phi;
        auto [rho, psi] = general_input(q);
        const DensityMatrix joint = apply_to_half(ch, outer(psi), 2);
        const std::vector<int> dims{2, 2};
        const double s_a = von_neumann_entropy(partial_trace(joint, dims, {0}));
        const double s_b = von_neumann_entropy(partial_trace(joint, dims, {1}));
        const double s_ab = von_neumann_entropy(joint);
        return std::array<double, 3>{s_a, s_b, s_ab};
    };
    const auto at_phi = entropies(params.phi);
    const auto at_zero = entropies(0.0);
    double dev = 0.0;
    for (int i = 0; i < 3; ++i) dev = std::max(dev, std::abs(at_phi[i] - at_zero[i]));
    return dev;
}

std::pair<double, double> lambda_pm(double x, double p, double theta) {
    require_unit(x, "x");
    require_unit(p, "p");
    const double ct = std::cos(theta);
    const double s = std::sqrt(std::max(radicand(x, p, ct * ct), 0.0));
    return {(1.0 + s) / 2.0, (1.0 - s) / 2.0};
}

InfoValue ad_closed_form(double eta, const InputParams& params, Measure measure) {
    require_unit(eta, "eta");
    require_params(params);
    const auto [jp, jm] = lambda_pm(1.0 - eta, params.p, params.theta);
    const double s_ab = entropy_pair(jp, std::max(jm, 0.0));
    double s_first;
    if (measure == Measure::ci) {
        const auto [bp, bm] = lambda_pm(eta, params.p, params.theta);
        s_first = entropy_pair(bp, std::max(bm, 0.0));
    } else {
        const auto [ap, am] = lambda_pm(1.0, params.p, params.theta);
        s_first = entropy_pair(ap, std::max(am, 0.0));
    }
    return InfoValue{s_first - s_ab, Method::closed_form};
}

Spectrum gad_diag_eigenvalues(double eta, double alpha, double p) {
    require_unit(eta, "eta");
    require_unit(alpha, "alpha");
    require_unit(p, "p");
    const double l1 = alpha * (1.0 - eta) * (1.0 - p);
    const double l2 = (1.0 - alpha) * (1.0 - eta) * p;
    const double disc = 1.0 - 2.0 * (l1 + l2) + (l2 - l1) * (l2 - l1);
    const double s = std::sqrt(std::max(disc, 0.0));
    Spectrum out;
    out.values = {l1, l2, (1.0 - l1 - l2 + s) / 2.0, (1.0 - l1 - l2 - s) / 2.0};
    for (double& v : out.values) v = std::max(v, 0.0);
    std::sort(out.values.begin(), out.values.end(), std::greater<double>());
    return out;
}

GadCoefficients gad_coefficients(double eta, double alpha, double p, Measure measure) {
    GadCoefficients k;
    const double mix = alpha + p - 2.0 * alpha * p;
    k.a = std::pow(1.0 - 2.0 * (1.0 - eta) * mix, 2);
    k.b = 4.0 * (1.0 - eta) * (1.0 - 4.0 * (1.0 - alpha) * alpha * (1.0 - eta));
    k.c = 1.0 - 2.0 * (1.0 - eta) * mix + 2.0 * (p - alpha) * (p - alpha) * (1.0 - eta) * (1.0 - eta);
    k.d = 2.0 * (1.0 - eta);
    k.e_prime = std::pow(1.0 - 2.0 * p, 2);
    k.f_prime = 4.0;
    if (measure == Measure::ci) {
        k.e = std::pow(1.0 - 2.0 * (p * eta + alpha * (1.0 - eta)), 2);
        k.f = 4.0 * eta;
    } else {
        k.e = k.e_prime;
        k.f = k.f_prime;
    }
    return k;
}

namespace {

std::array<double, 4> gad_joint_eigenvalues_impl(double eta, double alpha, double p, double theta,
                                                 double inner_scale) {
    const GadCoefficients k = gad_coefficients(eta, alpha, p, Measure::ci);
    const double ct = std::cos(theta);
    const double q = p * (1.0 - p) * ct * ct;
    const double root_a = std::sqrt(std::max(k.a + k.b * q, 0.0));
    std::array<double, 4> lams{};
    int n = 0;
    for (int i = 0; i < 2; ++i) {
        const double sign_i = (i == 0) ? 1.0 : -1.0;
        const double inner = k.c + k.d * q - sign_i * root_a;
        const double root_g = inner_scale * std::sqrt(std::max(inner, 0.0));
        for (int j = 0; j < 2; ++j) {
            const double sign_j = (j == 0) ? 1.0 : -1.0;
            lams[n++] = 0.25 * (1.0 - sign_i * root_a + sign_j * root_g);
        }
    }
    for (double& v : lams) v = std::max(v, 0.0);
    std::sort(lams.begin(), lams.end(), std::greater<double>());
    return lams;
}

}  // namespace

std::array<double, 4> gad_joint_eigenvalues(double eta, double alpha, double p, double theta) {
    return gad_joint_eigenvalues_impl(eta, alpha, p, theta, std::sqrt(2.0));
}

std::array<double, 4> gad_joint_eigenvalues_transcribed(double eta, double alpha, double p,
                                                        double theta) {
    return gad_joint_eigenvalues_impl(eta, alpha, p, theta, 1.0);
}

InfoValue gad_closed_form(double eta, double alpha, const InputParams& params, Measure measure) {
    require_unit(eta, "eta");
    require_unit(alpha, "alpha");
    require_params(params);
    const auto lams = gad_joint_eigenvalues(eta, alpha, params.p, params.theta);
    double s_ab = 0.0;
    for (double l : lams)
        if (l > 1e-15) s_ab -= l * std::log2(l);

    double s_first;
    if (measure == Measure::ci) {
        const GadCoefficients k = gad_coefficients(eta, alpha, params.p, Measure::ci);
        const double ct = std::cos(params.theta);
        const double q = params.p * (1.0 - params.p) * ct * ct;
        const double s = std::sqrt(std::max(k.e + k.f * q, 0.0));
        s_first = entropy_pair((1.0 + s) / 2.0, std::max((1.0 - s) / 2.0, 0.0));
    } else {
        const auto [ap, am] = lambda_pm(1.0, params.p, params.theta);
        s_first = entropy_pair(ap, std::max(am, 0.0));
    }
    return InfoValue{s_first - s_ab, Method::closed_form};
}

namespace {

struct GadDerivativeParts {
    double z = 0.0;
    std::array<std::array<double, 2>, 2> y{};
    std::array<std::array<double, 2>, 2> j{};
    double bracket = 0.0;
};

// Derivative bracket for the generalized family. The reconciled form doubles
// the output-entropy term and evaluates the Y radicals at q = p(1-p)cos^2 theta;
// the transcribed form keeps unit weight and plain cos^2 theta.
GadDerivativeParts gad_bracket(const GadCoefficients& k, double p, double theta, bool double_z,
                               bool scale_y_argument) {
    GadDerivativeParts parts;
    const double ct = std::cos(theta);
    const double q = p * (1.0 - p) * ct * ct;
    const double qy = scale_y_argument ? q : ct * ct;

    const double sb2 = k.e + k.f * q;
    if (sb2 >= 1.0 - 1e-12)
        throw std::domain_error("derivative term Z: log argument vanishes (radicand e + f q -> 1)");
    parts.z = k.f * neg_log_ratio_over_s(std::sqrt(std::max(sb2, 0.0)));

    const double a_q = k.a + k.b * q;
    const double a_y = k.a + k.b * qy;
    if (a_y <= 1e-14 || a_q <= 1e-14)
        throw std::domain_error("derivative term Y: eigenvalue-gap radical vanishes (a + b q -> 0)");
    const double root_aq = std::sqrt(a_q);
    const double root_ay = std::sqrt(a_y);

    parts.bracket = (double_z ? 2.0 : 1.0) * parts.z;
    for (int i = 0; i < 2; ++i) {
        const double sign_i = (i == 0) ? 1.0 : -1.0;
        const double g_q = k.c + k.d * q - sign_i * root_aq;
        const double g_y = k.c + k.d * qy - sign_i * root_ay;
        for (int j = 0; j < 2; ++j) {
            const double sign_j = (j == 0) ? 1.0 : -1.0;
            const double lam = 0.25 * (1.0 - sign_i * root_aq + sign_j * std::sqrt(2.0 * std::max(g_q, 0.0)));
            double y;
            if (g_y <= 1e-14) {
                throw std::domain_error("derivative term Y(i,j): inner radical vanishes (c + d q -+ sqrt(a + b q) -> 0)");
            }
            y = sign_i * (k.b / root_ay +
                          sign_j * (k.b / root_ay - sign_i * 2.0 * k.d) / (std::sqrt(2.0) * std::sqrt(g_y)));
            double jlog;
            double term;
            if (lam <= 1e-14) {
                // Identically-zero eigenvalue branch (alpha -> 0); its weight
                // vanishes with it, so the term contributes nothing.
                if (std::abs(y) > 1e-9)
                    throw std::domain_error("derivative term J(i,j): vanishing eigenvalue with nonzero weight");
                jlog = 0.0;
                term = 0.0;
            } else {
                jlog = std::log2(lam);
                term = y * (1.0 + jlog);
            }
            parts.y[i][j] = y;
            parts.j[i][j] = jlog;
            parts.bracket += term;
        }
    }
    return parts;
}

}  // namespace

DerivativeBreakdown derivative_dtheta(ClosedFamily family, Measure measure, double eta, double alpha,
                                      const InputParams& params) {
    require_unit(eta, "eta");
    require_params(params);
    const double p = params.p;
    const double theta = params.theta;
    require(p > 0.0 && p < 1.0, "derivative: p must lie in the open interval (0, 1)");

    DerivativeBreakdown out;
    const double ct = std::cos(theta);
    const double cos2 = ct * ct;

    if (family == ClosedFamily::ad) {
        const double x_first = (measure == Measure::ci) ? eta : 1.0;
        const double f_first = f_term(x_first, p, cos2);
        const double f_joint = f_term(1.0 - eta, p, cos2);
        out.f_terms[x_first] = f_first;
        out.f_terms[1.0 - eta] = f_joint;
        out.total = -p * (1.0 - p) * std::sin(2.0 * theta) * (f_first - f_joint);
        out.coeffs = gad_coefficients(eta, 0.0, p, measure);
        return out;
    }

    require_unit(alpha, "alpha");
    const GadCoefficients k = gad_coefficients(eta, alpha, p, measure);
    const GadDerivativeParts parts = gad_bracket(k, p, theta, true, true);
    out.z_term = parts.z;
    out.y_terms = parts.y;
    out.j_terms = parts.j;
    out.coeffs = k;
    out.total = p * (1.0 - p) / 8.0 * std::sin(2.0 * theta) * parts.bracket;
    return out;
}

double gad_derivative_transcribed(Measure measure, double eta, double alpha,
                                  const InputParams& params) {
    return gad_derivative_variant(measure, eta, alpha, params, false, false);
}

double gad_derivative_variant(Measure measure, double eta, double alpha, const InputParams& params,
                              bool double_z, bool scale_y_argument) {
    const GadCoefficients k = gad_coefficients(eta, alpha, params.p, measure);
    const GadDerivativeParts parts = gad_bracket(k, params.p, params.theta, double_z, scale_y_argument);
    return params.p * (1.0 - params.p) / 8.0 * std::sin(2.0 * params.theta) * parts.bracket;
}

double closed_form_value(ClosedFamily family, Measure measure, double eta, double alpha, double p,
                         double theta) {
    const InputParams params{p, theta, 0.0};
    if (family == ClosedFamily::ad) return ad_closed_form(eta, params, measure).value;
    return gad_closed_form(eta, alpha, params, measure).value;
}

namespace {

ExtremumKind classify(double below, double at, double above) {
    const double second_difference = above - 2.0 * at + below;
    if (std::abs(second_difference) < 1e-12) return ExtremumKind::degenerate;
    return second_difference < 0.0 ? ExtremumKind::maximum : ExtremumKind::minimum;
}

}  // namespace

ThetaScan extremum_scan(ClosedFamily family, Measure measure, double eta, double alpha, double p,
                        int grid_n) {
    require(grid_n >= 64, "extremum scan: grid_n must be >= 64");
    require(p > 0.0 && p < 1.0, "extremum scan: p must lie in the open interval (0, 1)");

    const double h = kPi / grid_n;
    const auto value = [&](double theta) {
        // The information value is even around both endpoints.
        double t = std::abs(theta);
        if (t > kPi) t = 2.0 * kPi - t;
        return closed_form_value(family, measure, eta, alpha, p, t);
    };
    const auto deriv = [&](double theta) -> double {
        return derivative_dtheta(family, measure, eta, alpha, InputParams{p, theta, 0.0}).total;
    };

    ThetaScan scan;
    std::vector<double> d(grid_n + 1);
    std::vector<bool> ok(grid_n + 1, false);
    for (int i = 0; i <= grid_n; ++i) {
        try {
            d[i] = deriv(i * h);
            ok[i] = true;
        } catch (const std::domain_error&) {
            ++scan.skipped_points;
        }
    }

    std::vector<double> roots{0.0, kPi};  // stationary by symmetry
    for (int i = 0; i <= grid_n; ++i)
        if (ok[i] && std::abs(d[i]) <= 1e-12) roots.push_back(i * h);
    for (int i = 0; i < grid_n; ++i) {
        if (!ok[i] || !ok[i + 1]) continue;
        if (d[i] == 0.0 || d[i + 1] == 0.0 || d[i] * d[i + 1] > 0.0) continue;
        double lo = i * h, hi = (i + 1) * h;
        double dlo = d[i];
        bool failed = false;
        while (hi - lo > 1e-8) {
            const double mid = 0.5 * (lo + hi);
            double dmid;
            try {
                dmid = deriv(mid);
            } catch (const std::domain_error&) {
                ++scan.skipped_points;
                failed = true;
                break;
            }
            if (dmid == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((dlo < 0.0) == (dmid < 0.0)) {
                lo = mid;
                dlo = dmid;
            } else {
                hi = mid;
            }
        }
        if (!failed) roots.push_back(0.5 * (lo + hi));
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots)
        if (unique.empty() || r - unique.back() > 1e-7) unique.push_back(r);

    for (double r : unique) {
        const double at = value(r);
        scan.extrema.push_back(Extremum{r, classify(value(r - h), at, value(r + h))});
    }
    return scan;
}

}  // namespace revcap
