#include "revcap/qinfo.hpp"

#include <cmath>
#include <stdexcept>

namespace revcap {

using detail::require;

double binary_entropy(double x) {
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0, "binary entropy: argument must lie in [0, 1]");
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

double shannon_entropy(std::span<const double> p) {
    double sum = 0.0;
    double h = 0.0;
    for (double x : p) {
        require(std::isfinite(x) && x >= -1e-10, "shannon entropy: entry below -1e-10");
        sum += x;
        if (x > 1e-15) h -= x * std::log2(x);
    }
    require(std::abs(sum - 1.0) <= 1e-8, "shannon entropy: normalization violation (sum != 1 within 1e-8)");
    if (h < 0.0 && h > -1e-9) h = 0.0;  // an eigenvalue a rounding error above 1
    return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const Spectrum s = hermitian_eigenvalues(rho.matrix);
    return shannon_entropy(s.values);
}

double mutual_information(const BipartiteState& rho) {
    require(rho.dim_first * rho.dim_second == rho.state.dim, "mutual information: dims do not factor the state");
    const std::vector<int> dims{rho.dim_first, rho.dim_second};
    const double s_first = von_neumann_entropy(partial_trace(rho.state, dims, {0}));
    const double s_second = von_neumann_entropy(partial_trace(rho.state, dims, {1}));
    return s_first + s_second - von_neumann_entropy(rho.state);
}

BipartiteState joint_state(const KrausChannel& ch, const DensityMatrix& rho_a) {
    require(rho_a.dim == ch.in_dim, "joint state: input dimension does not match channel");
    const StateVector psi = purify(rho_a);
    const DensityMatrix rho_ra = outer(psi);
    DensityMatrix rho_rb = apply_to_half(ch, rho_ra, rho_a.dim);
    return BipartiteState{std::move(rho_rb), rho_a.dim, ch.out_dim};
}

InfoValue coherent_information(const KrausChannel& ch, const DensityMatrix& rho_a) {
    const BipartiteState rb = joint_state(ch, rho_a);
    const std::vector<int> dims{rb.dim_first, rb.dim_second};
    const double s_b = von_neumann_entropy(partial_trace(rb.state, dims, {1}));
    return InfoValue{s_b - von_neumann_entropy(rb.state), Method::generic};
}

InfoValue reverse_coherent_information(const KrausChannel& ch, const DensityMatrix& rho_a) {
    const BipartiteState rb = joint_state(ch, rho_a);
    const std::vector<int> dims{rb.dim_first, rb.dim_second};
    const double s_r = von_neumann_entropy(partial_trace(rb.state, dims, {0}));
    return InfoValue{s_r - von_neumann_entropy(rb.state), Method::generic};
}

InfoValue rci_via_environment(const KrausChannel& ch, const DensityMatrix& rho_a) {
    require(rho_a.dim == ch.in_dim, "rci via environment: input dimension does not match channel");
    const StateVector psi = purify(rho_a);
    const StinespringIsometry v = stinespring(ch);
    const int dim_r = rho_a.dim;
    const int dim_be = v.out_dim * v.env_dim;
    // |phi>_RBE = (I (x) V)|psi>_RA, ordering (R, B, E).
    std::vector<complex> phi(static_cast<size_t>(dim_r) * dim_be);
    for (int r = 0; r < dim_r; ++r)
        for (int be = 0; be < dim_be; ++be) {
            complex s{};
            for (int a = 0; a < v.in_dim; ++a) s += v.v(be, a) * psi.amplitudes[static_cast<size_t>(r) * dim_r + a];
            phi[static_cast<size_t>(r) * dim_be + be] = s;
        }
    const StateVector phi_rbe{std::move(phi)};
    const std::vector<int> dims{dim_r, v.out_dim, v.env_dim};
    const double s_be = von_neumann_entropy(reduced_density(phi_rbe, dims, {1, 2}));
    const double s_e = von_neumann_entropy(reduced_density(phi_rbe, dims, {2}));
    return InfoValue{s_be - s_e, Method::generic};
}

}  // namespace revcap
