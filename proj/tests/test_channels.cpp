#include <doctest.h>

#include <random>

#include "revcap/channels.hpp"
#include "revcap/qinfo.hpp"
#include "test_util.hpp"

using namespace revcap;
using namespace revcap::testing;

TEST_CASE("make_ad: endpoints and the diag(0.5, 0.5) output") {
    CHECK(choi_distance(make_ad(1.0), make_identity()) <= 1e-14);

    const KrausChannel zero = make_ad(0.0);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix out = apply(zero, random_state(2, 2, rng));
        CHECK(std::abs(out.matrix(0, 0).real() - 1.0) <= 1e-12);
    }

    const DensityMatrix out = apply(make_ad(0.8), diagonal_state(std::vector<double>{0.5, 0.5}));
    CHECK(out.matrix(0, 0).real() == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(out.matrix(1, 1).real() == doctest::Approx(0.4).epsilon(1e-14));

    CHECK_THROWS_AS(make_ad(1.5), std::invalid_argument);
    CHECK_THROWS_AS(make_ad(-0.1), std::invalid_argument);
}

TEST_CASE("make_gad: reduction, identity point, fixed point") {
    CHECK(choi_distance(make_gad(0.64, 0.0).channel, make_ad(0.64)) <= 1e-12);
    for (double alpha : {0.0, 0.3, 1.0})
        CHECK(choi_distance(make_gad(1.0, alpha).channel, make_identity()) <= 1e-12);

    const DensityMatrix out = apply(make_gad(0.7, 0.5).channel,
                                    diagonal_state(std::vector<double>{0.5, 0.5}));
    CHECK(max_abs_diff(out.matrix, complex(0.5) * ComplexMatrix::identity(2)) <= 1e-12);

    const GadDilation d = make_gad(0.6, 0.3);
    CHECK(d.isometry.env_dim == 4);
    CHECK(max_abs_diff(adjoint(d.isometry.v) * d.isometry.v, ComplexMatrix::identity(2)) <= 1e-13);
    const DensityMatrix ground = apply(d.channel, diagonal_state(std::vector<double>{1.0, 0.0}));
    CHECK(ground.matrix(1, 1).real() == doctest::Approx(0.12).epsilon(1e-13));
}

TEST_CASE("make_erasure: endpoints and maximally mixed input") {
    const DensityMatrix embedded = apply(make_erasure(0.0), diagonal_state(std::vector<double>{0.3, 0.7}));
    CHECK(embedded.matrix(2, 2).real() <= 1e-14);

    const DensityMatrix flagged = apply(make_erasure(1.0), diagonal_state(std::vector<double>{0.3, 0.7}));
    CHECK(flagged.matrix(2, 2).real() == doctest::Approx(1.0).epsilon(1e-14));

    const DensityMatrix mixed = apply(make_erasure(0.3), diagonal_state(std::vector<double>{0.5, 0.5}));
    CHECK(mixed.matrix(0, 0).real() == doctest::Approx(0.35).epsilon(1e-14));
    CHECK(mixed.matrix(1, 1).real() == doctest::Approx(0.35).epsilon(1e-14));
    CHECK(mixed.matrix(2, 2).real() == doctest::Approx(0.30).epsilon(1e-14));
}

TEST_CASE("apply: identity channel leaves the input unchanged") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = random_state(2, 2, rng);
        CHECK(max_abs_diff(apply(make_identity(), rho).matrix, rho.matrix) <= 1e-15);
    }
}

TEST_CASE("apply_to_half: identity, Bell through lossless damping, purified input") {
    const DensityMatrix bell = outer(bell_state());
    const DensityMatrix kept = apply_to_half(make_identity(), bell, 2);
    CHECK(max_abs_diff(kept.matrix, bell.matrix) <= 1e-14);

    const DensityMatrix lossless = apply_to_half(make_ad(1.0), bell, 2);
    const auto s = hermitian_eigenvalues(lossless.matrix);
    CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-12));

    // Purification of diag(0.5, 0.5) through eta = 0.8: spectrum lambda_pm(0.2) = {0.9, 0.1}.
    const DensityMatrix joint = apply_to_half(make_ad(0.8), outer(purify(diagonal_state(std::vector<double>{0.5, 0.5}))), 2);
    const auto js = hermitian_eigenvalues(joint.matrix);
    CHECK(js.values[0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(js.values[1] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(std::abs(js.values[2]) <= 1e-12);
    CHECK(std::abs(js.values[3]) <= 1e-12);

    CHECK_THROWS_AS(apply_to_half(make_ad(0.5), bell, 3), std::invalid_argument);
}

TEST_CASE("compose: neutral element and damping concatenation") {
    const KrausChannel ch = make_ad(0.37);
    CHECK(choi_distance(compose(make_identity(), ch), ch) <= 1e-14);
    CHECK(choi_distance(compose(make_ad(0.8), make_ad(0.5)), make_ad(0.4)) <= 1e-12);
    // Degrading composition at eta = 0.75: D_{1/3} o D_{3/4} = D_{1/4}.
    CHECK(choi_distance(compose(make_ad((1 - 0.75) / 0.75), make_ad(0.75)), make_ad(0.25)) <= 1e-12);
    CHECK_THROWS_AS(compose(make_ad(0.5), make_erasure(0.5)), std::invalid_argument);
}

TEST_CASE("compose: damping concatenation law on a grid") {
    for (int i = 1; i <= 10; ++i) {
        for (int j = 1; j <= 10; ++j) {
            const double a = i / 10.0, b = j / 10.0;
            CHECK(choi_distance(compose(make_ad(a), make_ad(b)), make_ad(a * b)) <= 1e-12);
        }
    }
}

TEST_CASE("tensor_channels: identity, factorization, Kraus count") {
    const KrausChannel id4 = tensor_channels(make_identity(), make_identity());
    CHECK(id4.in_dim == 4);
    CHECK(choi_distance(id4, make_identity(4)) <= 1e-14);

    const KrausChannel pair = tensor_channels(make_ad(0.6), make_ad(0.6));
    CHECK(pair.kraus.size() == 4);
    std::mt19937_64 rng(9);
    const DensityMatrix r1 = random_state(2, 2, rng);
    const DensityMatrix r2 = random_state(2, 2, rng);
    const DensityMatrix joint = DensityMatrix::from_matrix(tensor(r1.matrix, r2.matrix));
    const DensityMatrix lhs = apply(pair, joint);
    const DensityMatrix rhs = DensityMatrix::from_matrix(
        tensor(apply(make_ad(0.6), r1).matrix, apply(make_ad(0.6), r2).matrix));
    CHECK(max_abs_diff(lhs.matrix, rhs.matrix) <= 1e-12);
}

TEST_CASE("complementary: damping pair, identity, double complement") {
    for (double eta : {0.1, 0.3, 0.64, 0.9})
        CHECK(choi_distance(complementary(make_ad(eta)), make_ad(1.0 - eta)) <= 1e-12);

    std::mt19937_64 rng(21);
    const KrausChannel cid = complementary(make_identity());
    for (int trial = 0; trial < 10; ++trial)
        CHECK(von_neumann_entropy(apply(cid, random_state(2, 2, rng))) <= 1e-10);

    const KrausChannel twice = complementary(complementary(make_ad(0.7)));
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = random_state(2, 2, rng);
        const auto s1 = hermitian_eigenvalues(apply(twice, rho).matrix).values;
        const auto s2 = hermitian_eigenvalues(apply(make_ad(0.7), rho).matrix).values;
        for (size_t i = 0; i < s2.size(); ++i) CHECK(std::abs(s1[i] - s2[i]) <= 1e-10);
    }
}

TEST_CASE("gad env-qubit channel: symmetric point, complement form, composition identity") {
    for (double alpha : {0.0, 0.2, 0.5})
        CHECK(choi_distance(gad_env_qubit_channel(0.5, alpha), make_gad(0.5, alpha).channel) <= 1e-12);

    CHECK(choi_distance(gad_env_qubit_channel(0.3, 0.2), make_gad(0.7, 0.2).channel) <= 1e-10);

    const KrausChannel composed =
        compose(make_gad(0.3 / 0.7, 0.2).channel, gad_env_qubit_channel(0.3, 0.2));
    CHECK(choi_distance(composed, make_gad(0.3, 0.2).channel) <= 1e-10);

    // At alpha = 0 this is the damping antidegradability pair.
    CHECK(choi_distance(gad_env_qubit_channel(0.25, 0.0), make_ad(0.75)) <= 1e-12);
}

TEST_CASE("gad env-qubit trace-out map: populations match, coherences damp by 1-2*alpha") {
    const double eta = 0.3, alpha = 0.2;
    const KrausChannel lit = gad_env_qubit_trace_out(eta, alpha);
    const ComplexMatrix plus(2, 2, {0.5, 0.5, 0.5, 0.5});
    const DensityMatrix out = apply(lit, DensityMatrix::from_matrix(plus));
    // Populations agree with the damping complement, coherences carry 1-2*alpha.
    CHECK(out.matrix(1, 1).real() == doctest::Approx((1 - eta) * 0.5 + eta * alpha).epsilon(1e-12));
    CHECK(out.matrix(0, 1).real() ==
          doctest::Approx((1 - 2 * alpha) * std::sqrt(1 - eta) * 0.5).epsilon(1e-12));
    // At alpha = 0 the literal marginal and the damping complement coincide.
    CHECK(choi_distance(gad_env_qubit_trace_out(0.3, 0.0), gad_env_qubit_channel(0.3, 0.0)) <= 1e-12);
}

TEST_CASE("choi: identity, constant map, trace across families") {
    const ChoiMatrix cid = choi(make_identity());
    const auto s = hermitian_eigenvalues(cid.matrix);
    CHECK(s.values[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(s.values[1]) <= 1e-12);

    const ChoiMatrix c0 = choi(make_ad(0.0));
    CHECK(c0.matrix(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(c0.matrix(1, 1)) <= 1e-14);
    CHECK(c0.matrix(2, 2).real() == doctest::Approx(1.0));
    CHECK(std::abs(c0.matrix(3, 3)) <= 1e-14);

    for (const KrausChannel& ch :
         {make_ad(0.42), make_gad(0.3, 0.7).channel, make_erasure(0.2), make_identity()})
        CHECK(trace(choi(ch).matrix).real() == doctest::Approx(ch.in_dim).epsilon(1e-12));
}

TEST_CASE("choi invariants: positive semidefinite, output trace gives the identity") {
    for (const KrausChannel& ch : {make_ad(0.42), make_gad(0.3, 0.7).channel, make_erasure(0.2),
                                   random_channel(2, 2, 3, 11)}) {
        const ChoiMatrix c = choi(ch);
        CHECK(hermitian_eigenvalues(c.matrix).values.back() >= -1e-10);
        ComplexMatrix traced(ch.in_dim, ch.in_dim);
        for (int i = 0; i < ch.in_dim; ++i)
            for (int j = 0; j < ch.in_dim; ++j) {
                complex s{};
                for (int a = 0; a < ch.out_dim; ++a)
                    s += c.matrix(i * ch.out_dim + a, j * ch.out_dim + a);
                traced(i, j) = s;
            }
        CHECK(max_abs_diff(traced, ComplexMatrix::identity(ch.in_dim)) <= 1e-10);
    }
}

TEST_CASE("gad mixture: fitted coefficient on the pure-damping component is 1 - alpha") {
    for (double eta : {0.2, 0.55, 0.8}) {
        for (double alpha : {0.1, 0.3, 0.45}) {
            const ComplexMatrix c = choi(make_gad(eta, alpha).channel).matrix;
            const ComplexMatrix c0 = choi(make_gad(eta, 0.0).channel).matrix;
            const ComplexMatrix c1 = choi(make_gad(eta, 1.0).channel).matrix;
            // Least-squares fit of c = x*c0 + (1-x)*c1 over Choi entries.
            double num = 0, den = 0;
            for (size_t i = 0; i < c.entries.size(); ++i) {
                const complex diff = c0.entries[i] - c1.entries[i];
                num += (std::conj(diff) * (c.entries[i] - c1.entries[i])).real();
                den += std::norm(diff);
            }
            const double fitted = num / den;
            CHECK(fitted == doctest::Approx(1.0 - alpha).epsilon(1e-10));
            ComplexMatrix resid = c;
            for (size_t i = 0; i < resid.entries.size(); ++i)
                resid.entries[i] -= fitted * c0.entries[i] + (1.0 - fitted) * c1.entries[i];
            CHECK(max_abs(resid) <= 1e-10);
        }
    }
}

TEST_CASE("random_channel: deterministic, complete, isometric when env_dim = 1") {
    const KrausChannel a = random_channel(2, 2, 2, 99);
    const KrausChannel b = random_channel(2, 2, 2, 99);
    for (size_t k = 0; k < a.kraus.size(); ++k)
        for (size_t i = 0; i < a.kraus[k].entries.size(); ++i)
            CHECK(a.kraus[k].entries[i] == b.kraus[k].entries[i]);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const KrausChannel ch = random_channel(2, 3, 2, seed);
        ComplexMatrix sum(2, 2);
        for (const auto& e : ch.kraus) sum = sum + adjoint(e) * e;
        CHECK(max_abs_diff(sum, ComplexMatrix::identity(2)) <= 1e-12);
    }

    std::mt19937_64 rng(33);
    const KrausChannel iso = random_channel(2, 3, 1, 7);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = random_state(2, 2, rng);
        CHECK(std::abs(von_neumann_entropy(apply(iso, rho)) - von_neumann_entropy(rho)) <= 1e-10);
    }

    CHECK_THROWS_AS(random_channel(4, 1, 2, 0), std::invalid_argument);
}

TEST_CASE("trace preservation across families on random inputs") {
    std::mt19937_64 rng(55);
    const std::vector<KrausChannel> channels{make_ad(0.37), make_gad(0.6, 0.25).channel,
                                             make_erasure(0.15), make_identity(),
                                             random_channel(2, 2, 3, 5)};
    for (int trial = 0; trial < 1000; ++trial) {
        const DensityMatrix rho = random_state(2, 1 + trial % 2, rng);
        const auto& ch = channels[trial % channels.size()];
        CHECK(std::abs(trace(apply(ch, rho).matrix).real() - 1.0) <= 1e-12);
    }
}

TEST_CASE("apply_to_half factorizes on product states") {
    std::mt19937_64 rng(77);
    const KrausChannel ch = make_gad(0.45, 0.35).channel;
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix r = random_state(2, 2, rng);
        const DensityMatrix s = random_state(2, 2, rng);
        const DensityMatrix joint = DensityMatrix::from_matrix(tensor(r.matrix, s.matrix));
        const DensityMatrix lhs = apply_to_half(ch, joint, 2);
        const DensityMatrix rhs = DensityMatrix::from_matrix(tensor(r.matrix, apply(ch, s).matrix));
        CHECK(max_abs_diff(lhs.matrix, rhs.matrix) <= 1e-12);
    }
}
