#pragma once

#include <span>

#include "revcap/channels.hpp"
#include "revcap/linalg.hpp"

// Entropic quantities (base-2) and the generic, diagonalization-based
// evaluation of coherent and reverse coherent information.

namespace revcap {

struct BipartiteState {
    DensityMatrix state;
    int dim_first = 0;
    int dim_second = 0;
};

enum class Method { generic, closed_form };

struct InfoValue {
    double value = 0.0;  // bits
    Method method = Method::generic;
};

// -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.
double binary_entropy(double x);

// Entries below 1e-15 contribute exactly zero; entries in [-1e-10, 0) are
// clamped; the vector must sum to 1 within 1e-8.
double shannon_entropy(std::span<const double> p);

double von_neumann_entropy(const DensityMatrix& rho);

// S(first) + S(second) - S(joint).
double mutual_information(const BipartiteState& rho);

// rho_RB = (I (x) channel)(|psi><psi|_RA) with the reference from purify()
// on the first factor.
BipartiteState joint_state(const KrausChannel& ch, const DensityMatrix& rho_a);

// I = S(B) - S(RB).
InfoValue coherent_information(const KrausChannel& ch, const DensityMatrix& rho_a);

// I_R = S(R) - S(RB).
InfoValue reverse_coherent_information(const KrausChannel& ch, const DensityMatrix& rho_a);

// I_R = S(BE) - S(E) through |phi>_RBE = (I (x) V)|psi>_RA with the canonical
// dilation; agrees with reverse_coherent_information within 1e-10.
InfoValue rci_via_environment(const KrausChannel& ch, const DensityMatrix& rho_a);

}  // namespace revcap
