#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracbq/indices.hpp"

#include <stdexcept>
#include <string>

using namespace fracbq;

namespace {

bool message_contains(const std::invalid_argument& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("worked exponent family comes out exactly") {
    // alpha = 3/2, d = 2, p = 6, gamma = delta = 1/2; every derived exponent
    // of this family is a small rational and was computed by hand
    const IndexFamily fam = derived_indices(1.5, 2, 6.0, 0.5, 0.5);

    CHECK(fam.velocity.p == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(fam.velocity.q == doctest::Approx(8.0).epsilon(1e-13));

    CHECK(fam.temperature.p == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(fam.temperature.q == doctest::Approx(2.0).epsilon(1e-13));

    CHECK(fam.force_u.p == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fam.force_u.q == doctest::Approx(7.0 / 3.0).epsilon(1e-14));

    CHECK(fam.force_theta.p == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fam.force_theta.q == doctest::Approx(7.0 / 6.0).epsilon(1e-14));

    CHECK(fam.vel_traj_q == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(fam.temp_traj_q == doctest::Approx(1.75).epsilon(1e-14));

    CHECK(fam.p_lower == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(fam.p_upper == doctest::Approx(7.0).epsilon(1e-14));

    CHECK(fam.alpha == 1.5);
    CHECK(fam.d == 2);
    CHECK(fam.gamma == 0.5);
    CHECK(fam.delta == 0.5);
}

TEST_CASE("at the top of the admissible range the two velocity exponents meet") {
    const IndexFamily fam = derived_indices(1.5, 2, 7.0, 0.5, 0.5);
    CHECK(fam.velocity.q == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(fam.velocity.q == doctest::Approx(fam.vel_traj_q).epsilon(1e-12));
}

TEST_CASE("derived pairs stay ordered across the admissible range") {
    for (double p : {5.2, 5.8, 6.4, 7.0}) {
        const IndexFamily fam = derived_indices(1.5, 2, p, 0.5, 0.5);
        // Morrey pairs need first exponent <= second
        CHECK(fam.velocity.p <= fam.velocity.q + 1e-12);
        CHECK(fam.temperature.p <= fam.temperature.q + 1e-12);
        CHECK(fam.force_u.p <= fam.force_u.q + 1e-12);
        CHECK(fam.force_theta.p <= fam.force_theta.q + 1e-12);
        CHECK(fam.temperature.p > 1.0 - 1e-12);
        CHECK(fam.force_theta.p > 0.8);
    }
}

TEST_CASE("a second dimension and alpha also produce a consistent family") {
    const IndexFamily fam = derived_indices(1.9, 3, 5.0, 0.8, 0.3);
    CHECK(fam.p_lower == doctest::Approx((3.0 * 1.9 - 2.0) / 0.9).epsilon(1e-13));
    CHECK(fam.p_upper == doctest::Approx(4.9 / 0.9).epsilon(1e-13));
    CHECK(fam.vel_traj_q == doctest::Approx(4.9 / 0.9).epsilon(1e-13));
    CHECK(fam.temp_traj_q == doctest::Approx(4.9 / 2.8).epsilon(1e-13));
    CHECK(fam.velocity.q > fam.velocity.p);
    CHECK(fam.force_u.q == doctest::Approx(4.9 / (2.8 - 0.8)).epsilon(1e-13));
    CHECK(fam.force_theta.q == doctest::Approx(4.9 / (4.7 - 0.3)).epsilon(1e-13));
}

TEST_CASE("alpha outside its open interval is rejected with a named bound") {
    for (double alpha : {1.0, 2.0, 0.5, 2.4}) {
        try {
            derived_indices(alpha, 2, 6.0, 0.5, 0.5);
            FAIL("expected a throw for alpha = " << alpha);
        } catch (const std::invalid_argument& e) {
            CHECK(message_contains(e, "alpha"));
        }
    }
}

TEST_CASE("p outside its half open interval is rejected naming both endpoints") {
    for (double p : {5.0, 4.0, 7.0001, 100.0}) {
        try {
            derived_indices(1.5, 2, p, 0.5, 0.5);
            FAIL("expected a throw for p = " << p);
        } catch (const std::invalid_argument& e) {
            CHECK(message_contains(e, "3 alpha - 2"));
            CHECK(message_contains(e, "(d + alpha)/(alpha - 1)"));
        }
    }
}

TEST_CASE("smoothing exponents must lie strictly inside (0, alpha)") {
    CHECK_THROWS_AS(derived_indices(1.5, 2, 6.0, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(derived_indices(1.5, 2, 6.0, 1.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(derived_indices(1.5, 2, 6.0, 0.5, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(derived_indices(1.5, 2, 6.0, 0.5, 2.0), std::invalid_argument);
    CHECK_NOTHROW(derived_indices(1.5, 2, 6.0, 1.49, 1.49));
}

TEST_CASE("dimension must be 2 or 3") {
    CHECK_THROWS_AS(derived_indices(1.5, 1, 6.0, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(derived_indices(1.5, 4, 6.0, 0.5, 0.5), std::invalid_argument);
}
