#include <doctest.h>

#include <random>

#include "revcap/qinfo.hpp"
#include "test_util.hpp"

using namespace revcap;
using namespace revcap::testing;

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.3) == doctest::Approx(0.881291).epsilon(1e-6));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("shannon entropy") {
    CHECK(shannon_entropy(std::vector<double>{1.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(shannon_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(shannon_entropy(std::vector<double>{0.5, 0.25, 0.125, 0.125}) ==
          doctest::Approx(1.75).epsilon(1e-15));
    CHECK_THROWS_WITH_AS(shannon_entropy(std::vector<double>{0.5, 0.4}),
                         doctest::Contains("normalization"), std::invalid_argument);
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(diagonal_state(std::vector<double>{1.0, 0.0})) == 0.0);
    CHECK(von_neumann_entropy(diagonal_state(std::vector<double>{0.5, 0.5})) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(von_neumann_entropy(diagonal_state(std::vector<double>{0.25, 0.75})) ==
          doctest::Approx(0.811278).epsilon(1e-6));
}

TEST_CASE("mutual information: product, Bell, damping joint state") {
    std::mt19937_64 rng(31);
    const DensityMatrix r = random_state(2, 2, rng);
    const DensityMatrix s = random_state(2, 2, rng);
    const BipartiteState prod{DensityMatrix::from_matrix(tensor(r.matrix, s.matrix)), 2, 2};
    CHECK(std::abs(mutual_information(prod)) <= 1e-10);

    const BipartiteState bell{outer(bell_state()), 2, 2};
    CHECK(mutual_information(bell) == doctest::Approx(2.0).epsilon(1e-12));

    // eta = 0.8, p = 0.5, theta = pi/2: S(R) + S(B) - S(RB) = 1 + H(0.4) - H(0.1).
    const BipartiteState rb = joint_state(make_ad(0.8), diagonal_state(std::vector<double>{0.5, 0.5}));
    const double expect = 1.0 + h2(0.4) - h2(0.1);
    CHECK(expect == doctest::Approx(1.501955).epsilon(1e-6));
    CHECK(mutual_information(rb) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("joint state: pure input, damping spectrum, erasure entropy") {
    const auto pure = joint_state(make_identity(), diagonal_state(std::vector<double>{1.0, 0.0}));
    CHECK(von_neumann_entropy(pure.state) <= 1e-12);

    const double eta = 0.65, p = 0.3;
    const auto rb = joint_state(make_ad(eta), diagonal_state(std::vector<double>{1 - p, p}));
    const auto s = hermitian_eigenvalues(rb.state.matrix).values;
    const double a = std::pow(1 - 2 * (1 - eta) * p, 2);  // theta = pi/2
    CHECK(s[0] == doctest::Approx((1 + std::sqrt(a)) / 2).epsilon(1e-12));
    CHECK(s[1] == doctest::Approx((1 - std::sqrt(a)) / 2).epsilon(1e-12));

    const double eps = 0.3;
    const auto erased = joint_state(make_erasure(eps), diagonal_state(std::vector<double>{0.5, 0.5}));
    CHECK(von_neumann_entropy(erased.state) == doctest::Approx(h2(eps) + eps).epsilon(1e-10));
}

TEST_CASE("coherent information: identity, closed-form value, eta = 1/2") {
    CHECK(coherent_information(make_identity(), diagonal_state(std::vector<double>{0.5, 0.5})).value ==
          doctest::Approx(1.0).epsilon(1e-12));

    const auto iv = coherent_information(make_ad(0.8), diagonal_state(std::vector<double>{0.5, 0.5}));
    CHECK(iv.method == Method::generic);
    CHECK(iv.value == doctest::Approx(h2(0.4) - h2(0.1)).epsilon(1e-11));
    CHECK(iv.value == doctest::Approx(0.501955).epsilon(1e-6));

    for (int i = 1; i < 50; ++i) {
        const double p = i / 50.0;
        const auto v = coherent_information(make_ad(0.5), diagonal_state(std::vector<double>{1 - p, p}));
        CHECK(std::abs(v.value) <= 1e-12);
    }
}

TEST_CASE("reverse coherent information: identity, closed-form value, eta = 0") {
    CHECK(reverse_coherent_information(make_identity(), diagonal_state(std::vector<double>{0.5, 0.5}))
              .value == doctest::Approx(1.0).epsilon(1e-12));

    const auto iv = reverse_coherent_information(make_ad(0.5), diagonal_state(std::vector<double>{0.5, 0.5}));
    CHECK(iv.value == doctest::Approx(h2(0.5) - h2(0.25)).epsilon(1e-11));
    CHECK(iv.value == doctest::Approx(0.188722).epsilon(1e-6));

    for (int i = 1; i < 20; ++i) {
        const double p = i / 20.0;
        const auto v = reverse_coherent_information(make_ad(0.0), diagonal_state(std::vector<double>{1 - p, p}));
        CHECK(std::abs(v.value) <= 1e-12);
    }
}

TEST_CASE("rci via environment agrees with the direct definition") {
    CHECK(rci_via_environment(make_identity(), diagonal_state(std::vector<double>{0.5, 0.5})).value ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK(rci_via_environment(make_ad(0.5), diagonal_state(std::vector<double>{0.5, 0.5})).value ==
          doctest::Approx(0.188722).epsilon(1e-6));

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        KrausChannel ch;
        switch (trial % 4) {
            case 0: ch = make_ad(0.05 + 0.9 * (trial % 10) / 10.0); break;
            case 1: ch = make_gad(0.3 + 0.05 * (trial % 10), 0.1 * (trial % 10)).channel; break;
            case 2: ch = make_erasure(0.08 * (trial % 10)); break;
            default: ch = random_channel(2, 2, 2, 1000 + trial); break;
        }
        const DensityMatrix rho = random_state(2, 2, rng);
        const double direct = reverse_coherent_information(ch, rho).value;
        const double via_env = rci_via_environment(ch, rho).value;
        CHECK(std::abs(direct - via_env) <= 1e-10);
    }
}

TEST_CASE("purification identities and the difference formula") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const KrausChannel ch = (trial % 2 == 0) ? make_gad(0.25 + 0.7 * (trial % 7) / 7.0, 0.4).channel
                                                 : random_channel(2, 3, 2, 77 + trial);
        const DensityMatrix rho = random_state(2, 2, rng);
        const BipartiteState rb = joint_state(ch, rho);
        const std::vector<int> dims{rb.dim_first, rb.dim_second};
        const double s_r = von_neumann_entropy(partial_trace(rb.state, dims, {0}));
        const double s_b = von_neumann_entropy(partial_trace(rb.state, dims, {1}));
        const double s_rb = von_neumann_entropy(rb.state);

        // S(R) equals the input entropy through the purification.
        CHECK(std::abs(s_r - von_neumann_entropy(rho)) <= 1e-10);

        const double ci = coherent_information(ch, rho).value;
        const double rci = reverse_coherent_information(ch, rho).value;
        CHECK(std::abs((rci - ci) - (s_r - s_b)) <= 1e-10);
        CHECK(std::abs(ci - (s_b - s_rb)) <= 1e-10);
        CHECK(std::abs(ci) <= std::log2(2.0) + 1e-9);

        // S(BE) = S(R) and S(E) = S(RB) for the canonical dilation.
        const StinespringIsometry v = stinespring(ch);
        const StateVector psi = purify(rho);
        std::vector<complex> phi(static_cast<size_t>(2) * v.out_dim * v.env_dim);
        for (int r = 0; r < 2; ++r)
            for (int be = 0; be < v.out_dim * v.env_dim; ++be) {
                complex acc{};
                for (int a = 0; a < 2; ++a) acc += v.v(be, a) * psi.amplitudes[static_cast<size_t>(r) * 2 + a];
                phi[static_cast<size_t>(r) * v.out_dim * v.env_dim + be] = acc;
            }
        const StateVector phi_rbe{std::move(phi)};
        const std::vector<int> rbe_dims{2, v.out_dim, v.env_dim};
        CHECK(std::abs(von_neumann_entropy(reduced_density(phi_rbe, rbe_dims, {1, 2})) - s_r) <= 1e-10);
        CHECK(std::abs(von_neumann_entropy(reduced_density(phi_rbe, rbe_dims, {2})) - s_rb) <= 1e-10);
    }
}

TEST_CASE("entropy bounds on random states") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 2 + trial % 3;
        const double s = von_neumann_entropy(random_state(dim, 1 + trial % dim, rng));
        CHECK(s >= 0.0);
        CHECK(s <= std::log2(dim) + 1e-10);
    }
}

TEST_CASE("mutual information monotone under discarding subsystems") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 500; ++trial) {
        const DensityMatrix rho = random_state(16, 1 + trial % 16, rng);
        const std::vector<int> dims{2, 2, 2, 2};
        // Bipartition (q0 q1 : q2 q3) versus the discarded pair (q1 : q3).
        const double s01 = von_neumann_entropy(partial_trace(rho, dims, {0, 1}));
        const double s23 = von_neumann_entropy(partial_trace(rho, dims, {2, 3}));
        const double whole = s01 + s23 - von_neumann_entropy(rho);
        const double s1 = von_neumann_entropy(partial_trace(rho, dims, {1}));
        const double s3 = von_neumann_entropy(partial_trace(rho, dims, {3}));
        const double s13 = von_neumann_entropy(partial_trace(rho, dims, {1, 3}));
        CHECK(whole >= s1 + s3 - s13 - 1e-9);
    }
}
