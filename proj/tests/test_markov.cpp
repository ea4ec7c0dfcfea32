#include "geosub/markov.hpp"

#include "geosub/linalg.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <vector>

using namespace geosub;

namespace {

std::vector<Vector> scalar_coeffs(std::initializer_list<double> values) {
    std::vector<Vector> out;
    for (double v : values) {
        Vector u(1);
        u(0) = v;
        out.push_back(u);
    }
    return out;
}

}  // namespace

TEST_CASE("build_markov") {
    const auto di = fixtures::double_integrator();
    const MarkovMatrix m3 = build_markov(di, 3);
    Matrix expected = Matrix::Zero(3, 3);
    expected(2, 2) = 1;  // D = 0, CB = 0, CAB = 1
    CHECK(m3.assembled == expected);

    const auto lag = fixtures::scalar_biproper();
    CHECK(build_markov(lag, 1).assembled == lag.D);
    CHECK(build_markov(lag, 2).assembled == (Matrix(2, 2) << 0, 1, 1, 1).finished());

    CHECK_THROWS_AS(build_markov(di, 0), InvalidOrder);
}

TEST_CASE("kernel_dim_sequence") {
    CHECK(kernel_dim_sequence(fixtures::double_integrator(), 3) ==
          std::vector<Index>{1, 2, 2});
    CHECK(kernel_dim_sequence(fixtures::scalar_biproper(), 3) ==
          std::vector<Index>{0, 0, 0});

    // D = I forces every kernel to be trivial.
    auto sys = fixtures::double_integrator();
    sys.D = Matrix::Identity(1, 1);
    CHECK(kernel_dim_sequence(sys, 2) == std::vector<Index>{0, 0});
}

TEST_CASE("impulsive_space") {
    const auto imp = impulsive_space(fixtures::double_integrator());
    CHECK(imp.f == 2);
    CHECK(imp.d == 1);
    CHECK(imp.block_count() == 2);
    // ker M_2 is all of R^2.
    CHECK(rank(imp.N) == 2);
    CHECK(imp.N.rows() == 2);

    const auto none = impulsive_space(fixtures::scalar_biproper());
    CHECK(none.f == 0);
    CHECK(none.d == 0);
    CHECK(none.N.cols() == 0);
    CHECK(none.block_count() == 0);

    CHECK_THROWS_AS(impulsive_space(fixtures::zero_transfer()), InfiniteImpulsiveSpace);
}

TEST_CASE("is_admissible") {
    const auto di = fixtures::double_integrator();
    CHECK(is_admissible(di, scalar_coeffs({0, 1})));
    CHECK_THROWS_AS(is_admissible(di, {Vector::Zero(2)}), DimensionMismatch);
    CHECK_THROWS_AS(kernel_dim_sequence(di, 0), InvalidOrder);
    CHECK(is_admissible(di, scalar_coeffs({1, 1})));
    CHECK(is_admissible(di, scalar_coeffs({0, 0, 0})));
    CHECK_FALSE(is_admissible(di, scalar_coeffs({0, 0, 1})));  // delta'' leaks through CAB

    CHECK_FALSE(is_admissible(fixtures::scalar_biproper(), scalar_coeffs({1})));
    CHECK(is_admissible(fixtures::scalar_biproper(), scalar_coeffs({0, 0})));
}

TEST_CASE("shift_input") {
    const auto shifted = shift_input(scalar_coeffs({3, 4, 5}));
    REQUIRE(shifted.size() == 2);
    CHECK(shifted[0](0) == 4);
    CHECK(shifted[1](0) == 5);

    // Shift preserves admissibility.
    const auto di = fixtures::double_integrator();
    CHECK(is_admissible(di, shift_input(scalar_coeffs({0, 1}))));

    CHECK_THROWS_AS(shift_input(scalar_coeffs({1})), NothingToShift);
}

TEST_CASE("impulse_state_coeffs") {
    const auto di = fixtures::double_integrator();

    auto x = impulse_state_coeffs(di, scalar_coeffs({0, 1}));
    REQUIRE(x.size() == 1);
    CHECK(x[0] == di.B.col(0));

    x = impulse_state_coeffs(di, scalar_coeffs({0, 0, 1}));
    REQUIRE(x.size() == 2);
    CHECK(x[1] == di.B.col(0));
    CHECK(x[0] == Vector((Vector(2) << 1, 0).finished()));  // A*B

    x = impulse_state_coeffs(di, scalar_coeffs({0, 0, 0}));
    for (const auto& xi : x) CHECK(xi.norm() == 0.0);

    CHECK_THROWS_AS(impulse_state_coeffs(di, scalar_coeffs({1})), NoImpulsivePart);
}

TEST_CASE("strong_state_from_input") {
    const auto di = fixtures::double_integrator();

    Vector xs = strong_state_from_input(di, scalar_coeffs({0, 1}));
    CHECK(xs == (Vector(2) << 1, 0).finished());  // A*B

    xs = strong_state_from_input(di, scalar_coeffs({1, 0}));
    CHECK(xs == (Vector(2) << 0, 1).finished());  // B

    xs = strong_state_from_input(di, scalar_coeffs({0, 0}));
    CHECK(xs.norm() == 0.0);

    CHECK_THROWS_AS(strong_state_from_input(fixtures::scalar_biproper(), scalar_coeffs({1})),
                    NotAdmissible);
}

TEST_CASE("fast_space") {
    const SubspaceBasis full = fast_space(fixtures::double_integrator());
    CHECK(full.dim() == 2);
    CHECK(subspace_equal(full, SubspaceBasis::full(2)));

    CHECK(fast_space(fixtures::scalar_biproper()).dim() == 0);

    // D = I kills every admissible impulse.
    auto sys = fixtures::double_integrator();
    sys.D = Matrix::Identity(1, 1);
    CHECK(fast_space(sys).dim() == 0);

    CHECK_THROWS_AS(fast_space(fixtures::zero_transfer()), InfiniteImpulsiveSpace);
}
