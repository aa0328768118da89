#include "revcap/channels.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace revcap {

using detail::require;

namespace {

void require_unit_range(double x, const std::string& name) {
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0, name + " must lie in [0, 1]");
}

}  // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::identity: return "identity";
        case Family::ad: return "ad";
        case Family::gad: return "gad";
        case Family::erasure: return "erasure";
        case Family::random: return "random";
    }
    return "?";
}

KrausChannel make_kraus_channel(int in_dim, int out_dim, std::vector<ComplexMatrix> kraus) {
    require(in_dim >= 1 && out_dim >= 1, "kraus channel: dimensions must be >= 1");
    require(!kraus.empty(), "kraus channel: needs at least one Kraus operator");
    ComplexMatrix sum(in_dim, in_dim);
    for (const auto& e : kraus) {
        require(e.rows == out_dim && e.cols == in_dim, "kraus channel: operator shape mismatch");
        require(all_finite(e), "kraus channel: non-finite Kraus entry");
        sum = sum + adjoint(e) * e;
    }
    require(max_abs_diff(sum, ComplexMatrix::identity(in_dim)) <= 1e-12,
            "kraus channel: completeness sum_k E_k^dag E_k != I within 1e-12");
    return KrausChannel{in_dim, out_dim, std::move(kraus)};
}

KrausChannel make_identity(int dim) {
    return make_kraus_channel(dim, dim, {ComplexMatrix::identity(dim)});
}

KrausChannel make_ad(double eta) {
    require_unit_range(eta, "eta");
    ComplexMatrix e0(2, 2, {1.0, 0.0, 0.0, std::sqrt(eta)});
    ComplexMatrix e1(2, 2, {0.0, std::sqrt(1.0 - eta), 0.0, 0.0});
    return make_kraus_channel(2, 2, {std::move(e0), std::move(e1)});
}

namespace {

// U_RO on (input, env-in), basis |i,e> with the input index slowest.
ComplexMatrix relaxation_unitary(double eta) {
    const double se = std::sqrt(eta);
    const double sq = std::sqrt(1.0 - eta);
    return ComplexMatrix(4, 4,
                         {1.0, 0.0, 0.0, 0.0,
                          0.0, se,  sq,  0.0,
                          0.0, -sq, se,  0.0,
                          0.0, 0.0, 0.0, 1.0});
}

// Isometry rows ordered (bob, env-out, purifier), slowest first.
ComplexMatrix gad_isometry_matrix(double eta, double alpha) {
    const ComplexMatrix u = relaxation_unitary(eta);
    const double env_amp[2] = {std::sqrt(1.0 - alpha), std::sqrt(alpha)};
    ComplexMatrix v(8, 2);
    for (int i = 0; i < 2; ++i) {
        for (int ein = 0; ein < 2; ++ein) {
            const double amp = env_amp[ein];  // purifier index equals ein
            if (amp == 0.0) continue;
            for (int b = 0; b < 2; ++b)
                for (int e1 = 0; e1 < 2; ++e1)
                    v(b * 4 + e1 * 2 + ein, i) += u(b * 2 + e1, i * 2 + ein) * amp;
        }
    }
    return v;
}

std::vector<ComplexMatrix> kraus_from_isometry(const ComplexMatrix& v, int out_dim, int env_dim) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(env_dim);
    for (int k = 0; k < env_dim; ++k) {
        ComplexMatrix e(out_dim, v.cols);
        for (int b = 0; b < out_dim; ++b)
            for (int i = 0; i < v.cols; ++i) e(b, i) = v(b * env_dim + k, i);
        kraus.push_back(std::move(e));
    }
    return kraus;
}

}  // namespace

GadDilation make_gad(double eta, double alpha) {
    require_unit_range(eta, "eta");
    require_unit_range(alpha, "alpha");
    ComplexMatrix v = gad_isometry_matrix(eta, alpha);
    require(max_abs_diff(adjoint(v) * v, ComplexMatrix::identity(2)) <= 1e-12,
            "gad dilation: isometry check failed");
    GadDilation d;
    d.channel = make_kraus_channel(2, 2, kraus_from_isometry(v, 2, 4));
    d.isometry = StinespringIsometry{2, 2, 4, std::move(v)};
    return d;
}

KrausChannel make_erasure(double epsilon) {
    require_unit_range(epsilon, "epsilon");
    const double keep = std::sqrt(1.0 - epsilon);
    const double flag = std::sqrt(epsilon);
    ComplexMatrix k0(3, 2, {keep, 0.0, 0.0, keep, 0.0, 0.0});
    ComplexMatrix k1(3, 2, {0.0, 0.0, 0.0, 0.0, flag, 0.0});
    ComplexMatrix k2(3, 2, {0.0, 0.0, 0.0, 0.0, 0.0, flag});
    return make_kraus_channel(2, 3, {std::move(k0), std::move(k1), std::move(k2)});
}

KrausChannel from_spec(const ChannelSpec& spec) {
    switch (spec.family) {
        case Family::identity: return make_identity(2);
        case Family::ad: return make_ad(spec.eta);
        case Family::gad: return make_gad(spec.eta, spec.alpha).channel;
        case Family::erasure: return make_erasure(spec.epsilon);
        case Family::random: return random_channel(2, 2, 2, spec.seed);
    }
    detail::fail_precondition("unknown channel family");
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
    require(rho.dim == ch.in_dim, "apply: state dimension does not match channel input");
    ComplexMatrix out(ch.out_dim, ch.out_dim);
    for (const auto& e : ch.kraus) out = out + e * rho.matrix * adjoint(e);
    return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix apply_to_half(const KrausChannel& ch, const DensityMatrix& rho_ra, int dim_r) {
    require(dim_r >= 1, "apply_to_half: reference dimension must be >= 1");
    require(rho_ra.dim == dim_r * ch.in_dim,
            "apply_to_half: state dimension does not match dim_r * channel input");
    const ComplexMatrix id_r = ComplexMatrix::identity(dim_r);
    ComplexMatrix out(dim_r * ch.out_dim, dim_r * ch.out_dim);
    for (const auto& e : ch.kraus) {
        const ComplexMatrix lifted = tensor(id_r, e);
        out = out + lifted * rho_ra.matrix * adjoint(lifted);
    }
    return DensityMatrix::from_matrix(std::move(out));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
    require(first.out_dim == second.in_dim, "compose: channel dimensions do not chain");
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(first.kraus.size() * second.kraus.size());
    for (const auto& f : second.kraus)
        for (const auto& e : first.kraus) kraus.push_back(f * e);
    return make_kraus_channel(first.in_dim, second.out_dim, std::move(kraus));
}

KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(a.kraus.size() * b.kraus.size());
    for (const auto& ea : a.kraus)
        for (const auto& eb : b.kraus) kraus.push_back(tensor(ea, eb));
    return make_kraus_channel(a.in_dim * b.in_dim, a.out_dim * b.out_dim, std::move(kraus));
}

StinespringIsometry stinespring(const KrausChannel& ch) {
    const int env = static_cast<int>(ch.kraus.size());
    ComplexMatrix v(ch.out_dim * env, ch.in_dim);
    for (int k = 0; k < env; ++k)
        for (int b = 0; b < ch.out_dim; ++b)
            for (int i = 0; i < ch.in_dim; ++i) v(b * env + k, i) = ch.kraus[k](b, i);
    return StinespringIsometry{ch.in_dim, ch.out_dim, env, std::move(v)};
}

KrausChannel complementary(const KrausChannel& ch) {
    const int env = static_cast<int>(ch.kraus.size());
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(ch.out_dim);
    for (int b = 0; b < ch.out_dim; ++b) {
        ComplexMatrix f(env, ch.in_dim);
        for (int k = 0; k < env; ++k)
            for (int i = 0; i < ch.in_dim; ++i) f(k, i) = ch.kraus[k](b, i);
        kraus.push_back(std::move(f));
    }
    return make_kraus_channel(ch.in_dim, env, std::move(kraus));
}

KrausChannel gad_env_qubit_channel(double eta, double alpha) {
    require_unit_range(eta, "eta");
    require_unit_range(alpha, "alpha");
    return make_gad(1.0 - eta, alpha).channel;
}

KrausChannel gad_env_qubit_trace_out(double eta, double alpha) {
    require_unit_range(eta, "eta");
    require_unit_range(alpha, "alpha");
    const ComplexMatrix v = gad_isometry_matrix(eta, alpha);
    // Keep the relaxation-output qubit e1; trace (bob, purifier).
    std::vector<ComplexMatrix> kraus;
    for (int b = 0; b < 2; ++b) {
        for (int e2 = 0; e2 < 2; ++e2) {
            ComplexMatrix g(2, 2);
            for (int e1 = 0; e1 < 2; ++e1)
                for (int i = 0; i < 2; ++i) g(e1, i) = v(b * 4 + e1 * 2 + e2, i);
            kraus.push_back(std::move(g));
        }
    }
    return make_kraus_channel(2, 2, std::move(kraus));
}

ChoiMatrix choi(const KrausChannel& ch) {
    const int d = ch.in_dim * ch.out_dim;
    ComplexMatrix c(d, d);
    for (const auto& e : ch.kraus)
        for (int i = 0; i < ch.in_dim; ++i)
            for (int j = 0; j < ch.in_dim; ++j)
                for (int a = 0; a < ch.out_dim; ++a)
                    for (int b = 0; b < ch.out_dim; ++b)
                        c(i * ch.out_dim + a, j * ch.out_dim + b) += e(a, i) * std::conj(e(b, j));
    return ChoiMatrix{ch.in_dim, ch.out_dim, std::move(c)};
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
    require(a.in_dim == b.in_dim && a.out_dim == b.out_dim, "choi_distance: dimension mismatch");
    return max_abs_diff(choi(a).matrix, choi(b).matrix);
}

KrausChannel random_channel(int in_dim, int out_dim, int env_dim, std::uint64_t seed) {
    require(in_dim >= 1 && out_dim >= 1 && env_dim >= 1, "random channel: dimensions must be >= 1");
    require(out_dim * env_dim >= in_dim,
            "random channel: out_dim * env_dim < in_dim admits no isometry");
    std::mt19937_64 rng(seed);
    const auto gauss = [&rng]() {
        // Box-Muller keeps the stream independent of library distribution internals.
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double u1 = uni(rng);
        while (u1 <= 1e-300) u1 = uni(rng);
        const double u2 = uni(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        return complex(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
    };

    const int rows = out_dim * env_dim;
    ComplexMatrix v(rows, in_dim);
    for (int j = 0; j < in_dim; ++j) {
        for (int i = 0; i < rows; ++i) v(i, j) = gauss();
        // Modified Gram-Schmidt, twice for orthogonality at the 1e-13 level.
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                complex proj{};
                for (int i = 0; i < rows; ++i) proj += std::conj(v(i, k)) * v(i, j);
                for (int i = 0; i < rows; ++i) v(i, j) -= proj * v(i, k);
            }
        }
        double norm = 0;
        for (int i = 0; i < rows; ++i) norm += std::norm(v(i, j));
        norm = std::sqrt(norm);
        require(norm > 1e-12, "random channel: degenerate Gaussian draw");
        for (int i = 0; i < rows; ++i) v(i, j) /= norm;
    }
    return make_kraus_channel(in_dim, out_dim, kraus_from_isometry(v, out_dim, env_dim));
}

}  // namespace revcap
