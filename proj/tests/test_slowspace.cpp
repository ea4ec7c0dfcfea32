#include "geosub/slowspace.hpp"

#include "geosub/linalg.hpp"

#include "fixtures.hpp"

#include <doctest.h>

using namespace geosub;

TEST_CASE("build_pencil") {
    const auto pen = build_pencil(fixtures::scalar_biproper());
    CHECK(pen.U1 == (Matrix(2, 2) << 1, 0, 0, 0).finished());
    CHECK(pen.U2 == (Matrix(2, 2) << -1, 1, 1, 1).finished());

    const auto pen_di = build_pencil(fixtures::double_integrator());
    CHECK(pen_di.U2 == (Matrix(3, 3) << 0, 1, 0, 0, 0, 1, 1, 0, 0).finished());
    CHECK(pen_di.U1.diagonal() == (Vector(3) << 1, 1, 0).finished());

    CHECK_THROWS_AS(build_pencil(fixtures::tall_single_input()), NotSquare);
}

TEST_CASE("weakly_unobservable") {
    const auto lag = weakly_unobservable(fixtures::scalar_biproper());
    CHECK(lag.space.dim() == 1);
    CHECK(lag.eig.r() == 1);
    CHECK(lag.eig.J(0, 0) == doctest::Approx(-2.0));

    const auto di = weakly_unobservable(fixtures::double_integrator());
    CHECK(di.space.dim() == 0);
    CHECK(di.eig.r() == 0);

    CHECK_THROWS_AS(weakly_unobservable(fixtures::zero_transfer()), SingularPencil);
    CHECK_THROWS_AS(weakly_unobservable(fixtures::tall_single_input()), NotSquare);
}

TEST_CASE("good_weakly_unobservable") {
    const auto lag = good_weakly_unobservable(fixtures::scalar_biproper());
    CHECK(lag.space.dim() == 1);  // -2 lies in the open left half-plane
    CHECK(subspace_equal(lag.space, weakly_unobservable(fixtures::scalar_biproper()).space));

    CHECK(good_weakly_unobservable(fixtures::double_integrator()).space.dim() == 0);

    // det(s*U1 - U2) = -s: root on the axis, O_w has dim 1 but the good
    // subspace cannot be classified at the default tolerance.
    CHECK(weakly_unobservable(fixtures::axis_root()).space.dim() == 1);
    CHECK_THROWS_AS(good_weakly_unobservable(fixtures::axis_root()), BoundaryAmbiguity);
}

TEST_CASE("friend_feedback") {
    const auto sys = fixtures::scalar_biproper();
    const auto slow = weakly_unobservable(sys);
    const Matrix F = friend_feedback(slow.eig);
    REQUIRE(F.rows() == 1);
    REQUIRE(F.cols() == 1);
    CHECK(F(0, 0) == doctest::Approx(-1.0));
    CHECK((sys.A + sys.B * F)(0, 0) == doctest::Approx(-2.0));
    CHECK((sys.C + sys.D * F)(0, 0) == doctest::Approx(0.0));

    // Empty eigenspace: vacuous conditions, zero feedback.
    const auto di = weakly_unobservable(fixtures::double_integrator());
    const Matrix F0 = friend_feedback(di.eig);
    CHECK(F0 == Matrix::Zero(1, 2));
}

TEST_CASE("friend_feedback residuals") {
    // (A + BF) V1 = V1 J and (C + DF) V1 = 0 for every returned feedback.
    const auto check_residuals = [](const StateSpaceSystem& sys) {
        const auto slow = weakly_unobservable(sys);
        const Matrix F = friend_feedback(slow.eig);
        const double r1 = ((sys.A + sys.B * F) * slow.eig.V1 - slow.eig.V1 * slow.eig.J).norm();
        const double r2 = ((sys.C + sys.D * F) * slow.eig.V1).norm();
        CHECK(r1 <= 1e-9 * (1.0 + sys.A.norm() + slow.eig.J.norm()));
        CHECK(r2 <= 1e-9 * (1.0 + sys.C.norm()));
    };
    check_residuals(fixtures::scalar_biproper());
    check_residuals(fixtures::axis_root());
    check_residuals(random_system(4, 2, 2, 11));
    check_residuals(random_system(5, 1, 1, 3));
}
