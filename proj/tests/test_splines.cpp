#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "igabench/splines.hpp"

using namespace igabench;

namespace {

std::vector<double> knots_of(const KnotVector& kv) { return {kv.knots().begin(), kv.knots().end()}; }

// Uniform quadratic B-spline pieces, independent of the recursion.
double uniform_quadratic(double t) {
    if (t < 0 || t > 3) {
        return 0.0;
    }
    if (t < 1) {
        return t * t / 2;
    }
    if (t < 2) {
        return (-2 * t * t + 6 * t - 3) / 2;
    }
    return (3 - t) * (3 - t) / 2;
}

}  // namespace

TEST_CASE("knot vectors") {
    CHECK(knots_of(make_knot_vector(1, 0)) == std::vector<double>{0, 1});
    CHECK(knots_of(make_knot_vector(2, 1)) == std::vector<double>{0, 0, 0.5, 1, 1});
    CHECK(knots_of(make_knot_vector(2, 2)) == std::vector<double>{0, 0, 0, 0.5, 1, 1, 1});
    CHECK_THROWS_AS(make_knot_vector(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_knot_vector(2, -1), std::invalid_argument);

    for (int K = 1; K <= 6; ++K) {
        for (int p = 0; p <= 4; ++p) {
            const KnotVector kv(K, p);
            const auto k = kv.knots();
            REQUIRE(k.size() == static_cast<std::size_t>(K + 2 * p + 1));
            CHECK(kv.basis_count() == K + p);
            CHECK(std::is_sorted(k.begin(), k.end()));
            for (int i = 0; i <= p; ++i) {
                CHECK(k[static_cast<std::size_t>(i)] == 0.0);
                CHECK(k[k.size() - 1 - static_cast<std::size_t>(i)] == 1.0);
            }
        }
    }
}

TEST_CASE("order-zero indicator") {
    const KnotVector kv(2, 1);
    CHECK(eval_basis_order0(kv, 1, 0.25) == 1.0);
    CHECK(eval_basis_order0(kv, 1, 0.75) == 0.0);
    CHECK(eval_basis_order0(KnotVector(1, 0), 0, 1.0) == 1.0);
    // Only the last nonempty span is closed at 1.
    CHECK(eval_basis_order0(kv, 2, 1.0) == 1.0);
    CHECK(eval_basis_order0(kv, 3, 1.0) == 0.0);
    CHECK_THROWS_AS(eval_basis_order0(kv, 4, 0.5), std::out_of_range);
    CHECK_THROWS_AS(eval_basis_order0(kv, -1, 0.5), std::out_of_range);
}

TEST_CASE("recursive basis values") {
    const KnotVector kv(2, 1);
    CHECK(eval_basis(kv, 1, 1, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eval_basis(kv, 1, 1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(eval_basis(kv, 0, 2, 0.5), std::out_of_range);
    CHECK_THROWS_AS(eval_basis(kv, 3, 1, 0.5), std::out_of_range);

    // Interior quadratics on a uniform mesh are shifted cardinal splines.
    const KnotVector q(6, 2);
    for (int s = 0; s <= 60; ++s) {
        const double x = s / 60.0;
        CHECK(eval_basis(q, 3, 2, x) == doctest::Approx(uniform_quadratic(x * 6 - 1)).epsilon(1e-13));
    }
}

TEST_CASE("nonzero basis on an element") {
    const KnotVector kv(2, 1);
    const auto b = eval_nonzero_basis(kv, 0, 0.25);
    REQUIRE(b.values.size() == 2);
    CHECK(b.values[0] == doctest::Approx(0.5));
    CHECK(b.values[1] == doctest::Approx(0.5));
    const auto e = eval_nonzero_basis(kv, 0, 0.0);
    CHECK(e.values[0] == 1.0);
    CHECK(e.values[1] == 0.0);
    CHECK_THROWS_AS(eval_nonzero_basis(kv, 0, 0.75), std::domain_error);

    const KnotVector k4(4, 2);
    for (int e4 = 0; e4 < 4; ++e4) {
        for (int s = 0; s <= 10; ++s) {
            const double x = k4.element_begin(e4) + s * k4.element_size() / 10;
            const auto v = eval_nonzero_basis(k4, e4, x);
            REQUIRE(v.values.size() == 3);
            CHECK(std::accumulate(v.values.begin(), v.values.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
            for (int f = 0; f <= 2; ++f) {
                CHECK(v.values[static_cast<std::size_t>(f)] ==
                      doctest::Approx(eval_basis(k4, e4 + f, 2, x)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("derivatives") {
    const KnotVector kv(2, 1);
    for (const double x : {0.01, 0.2, 0.49}) {
        const auto d = eval_nonzero_basis_derivatives(kv, 0, x);
        CHECK(d[0] == doctest::Approx(-2.0));
        CHECK(d[1] == doctest::Approx(2.0));
    }
    CHECK_THROWS_AS(eval_nonzero_basis_derivatives(KnotVector(2, 0), 0, 0.25), std::invalid_argument);

    const KnotVector k4(4, 2);
    const double mid = 0.375;
    const auto d = eval_nonzero_basis_derivatives(k4, 1, mid);
    const double h = 1e-6;
    const auto plus = eval_nonzero_basis(k4, 1, mid + h);
    const auto minus = eval_nonzero_basis(k4, 1, mid - h);
    double sum = 0.0;
    for (std::size_t f = 0; f < 3; ++f) {
        CHECK(d[f] == doctest::Approx((plus.values[f] - minus.values[f]) / (2 * h)).epsilon(1e-6));
        sum += d[f];
    }
    CHECK(std::abs(sum) < 1e-10);
}

TEST_CASE("basis invariants on a sampled grid") {
    for (int p = 0; p <= 5; ++p) {
        for (int K = 1; K <= 8; ++K) {
            const KnotVector kv(K, p);
            for (int s = 0; s <= 100; ++s) {
                const double x = s / 100.0;
                double total = 0.0;
                for (int i = 0; i < kv.basis_count(); ++i) {
                    const double b = eval_basis(kv, i, p, x);
                    CHECK(b >= 0.0);
                    if (x < kv[static_cast<std::size_t>(i)] || x > kv[static_cast<std::size_t>(i + p + 1)]) {
                        CHECK(b == 0.0);
                    }
                    total += b;
                }
                CHECK(std::abs(total - 1.0) <= 1e-12);
            }
            CHECK(eval_basis(kv, 0, p, 0.0) == 1.0);
            CHECK(eval_basis(kv, kv.basis_count() - 1, p, 1.0) == 1.0);
            for (int i = 1; i < kv.basis_count(); ++i) {
                CHECK(eval_basis(kv, i, p, 0.0) == 0.0);
                CHECK(eval_basis(kv, i - 1, p, 1.0) == 0.0);
            }
        }
    }
}
