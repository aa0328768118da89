#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revcap/linalg.hpp"

// Quantum channels as Kraus operator lists, with the parametric families
// used throughout: amplitude damping D_eta, generalized amplitude damping
// D_(eta,alpha) defined by its dilation circuit, qubit-to-qutrit erasure,
// identity and seeded random channels.

namespace revcap {

struct KrausChannel {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<ComplexMatrix> kraus;  // each out_dim x in_dim
};

// Validates shapes and completeness sum_k E_k^dag E_k = I within 1e-12.
KrausChannel make_kraus_channel(int in_dim, int out_dim, std::vector<ComplexMatrix> kraus);

struct StinespringIsometry {
    int in_dim = 0;
    int out_dim = 0;
    int env_dim = 0;
    ComplexMatrix v;  // (out_dim * env_dim) x in_dim, V^dag V = I
};

struct ChoiMatrix {
    int in_dim = 0;
    int out_dim = 0;
    ComplexMatrix matrix;  // (in_dim * out_dim) square, ordering (in, out), unnormalized
};

enum class Family { identity, ad, gad, erasure, random };

struct ChannelSpec {
    Family family = Family::identity;
    double eta = 0.0;      // damping transmissivity, ad/gad
    double alpha = 0.0;    // thermal parameter, gad
    double epsilon = 0.0;  // erasure probability
    std::uint64_t seed = 0;
};

std::string family_name(Family family);

KrausChannel make_identity(int dim = 2);

// E_0 = diag(1, sqrt(eta)), E_1 = sqrt(1-eta) |0><1|.
KrausChannel make_ad(double eta);

struct GadDilation {
    KrausChannel channel;
    StinespringIsometry isometry;  // env = (relaxation output qubit, purifier qubit), env_dim 4
};

// Dilation circuit: V |psi> = (U_RO (x) I_purifier)(|psi> (x) |Psi_alpha>), with
// |Psi_alpha> = sqrt(1-alpha)|00> + sqrt(alpha)|11> and cos^2(gamma/2) = eta.
// Kraus operators are <k|_env V; alpha = 0 reduces to make_ad(eta).
GadDilation make_gad(double eta, double alpha);

// Qubit into qutrit with erasure flag |e>:
// sqrt(1-epsilon) embedding, sqrt(epsilon)|e><0|, sqrt(epsilon)|e><1|.
KrausChannel make_erasure(double epsilon);

KrausChannel from_spec(const ChannelSpec& spec);

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

// (I (x) channel) on a bipartite state; the channel acts on the second factor.
DensityMatrix apply_to_half(const KrausChannel& ch, const DensityMatrix& rho_ra, int dim_r);

// second after first; Kraus set {F_j E_k}.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b);

// Canonical dilation V |psi> = sum_k (E_k |psi>) (x) |k>; output first, env second.
StinespringIsometry stinespring(const KrausChannel& ch);

// Channel to the environment of the canonical dilation; out_dim = Kraus count,
// with the Kraus index order defining the environment basis. This makes
// complementary(make_ad(eta)) equal make_ad(1-eta) exactly.
KrausChannel complementary(const KrausChannel& ch);

// The damping-complement channel D_(1-eta,alpha). It matches the populations of
// the dilation circuit's relaxation-output qubit (whose exact marginal damps
// coherences by an extra 1-2*alpha factor, see gad_env_qubit_trace_out) and
// satisfies D_(eta,alpha) = D_(eta/(1-eta),alpha) o D_(1-eta,alpha) for eta <= 1/2.
KrausChannel gad_env_qubit_channel(double eta, double alpha);

// Literal marginal map of the dilation circuit: input -> relaxation-output
// qubit with the purifier traced out.
KrausChannel gad_env_qubit_trace_out(double eta, double alpha);

// (I (x) channel) applied to the unnormalized maximally entangled operator
// sum_ij |ii><jj|; trace equals in_dim.
ChoiMatrix choi(const KrausChannel& ch);

// Max-entry distance between Choi matrices; the channel-equality metric.
double choi_distance(const KrausChannel& a, const KrausChannel& b);

// Deterministic in seed: orthonormalizes seeded complex-Gaussian columns into
// an isometry of shape (out_dim * env_dim) x in_dim and slices Kraus operators.
KrausChannel random_channel(int in_dim, int out_dim, int env_dim, std::uint64_t seed);

}  // namespace revcap
