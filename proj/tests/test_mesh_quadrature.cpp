#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "igabench/mesh_quadrature.hpp"

using namespace igabench;

TEST_CASE("element enumeration") {
    CHECK(element_list(1) == std::vector<ElementId>{{0, 0, 0}});
    const auto two = element_list(2);
    REQUIRE(two.size() == 8);
    CHECK(two.front() == ElementId{0, 0, 0});
    CHECK(two.back() == ElementId{1, 1, 1});
    CHECK(two[1] == ElementId{0, 0, 1});
    CHECK(std::is_sorted(two.begin(), two.end()));
    CHECK(element_list(20).size() == 8000);
    CHECK_THROWS_AS(element_list(0), std::invalid_argument);
    const auto all = element_list(3);
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(element_ordinal(all[i], 3) == i);
    }
}

TEST_CASE("support sets and local indices") {
    const auto s1 = support_set({0, 0, 0}, 1);
    CHECK(s1.indices.size() == 8);
    CHECK(support_set({0, 0, 0}, 0).indices == std::vector<MultiIndex>{{0, 0, 0}});
    const auto s2 = support_set({1, 1, 1}, 2);
    REQUIRE(s2.indices.size() == 27);
    for (const auto& b : s2.indices) {
        for (const int c : b) {
            CHECK(c >= 1);
            CHECK(c <= 3);
        }
    }

    CHECK(local_index({0, 0, 0}, {0, 0, 0}, 1) == 0);
    CHECK(local_index({0, 0, 0}, {1, 1, 1}, 1) == 7);
    CHECK(local_index({2, 3, 4}, {3, 4, 5}, 2) == 13);
    CHECK_THROWS_AS(local_index({0, 0, 0}, {2, 0, 0}, 1), std::out_of_range);

    for (int p = 0; p <= 3; ++p) {
        const ElementId e{1, 2, 0};
        std::set<int> seen;
        const auto s = support_set(e, p);
        for (std::size_t n = 0; n < s.indices.size(); ++n) {
            const int l = local_index(e, s.indices[n], p);
            CHECK(l == static_cast<int>(n));
            seen.insert(l);
            const auto o = local_offsets(l, p);
            CHECK(o == MultiIndex{s.indices[n][0] - e.i, s.indices[n][1] - e.j, s.indices[n][2] - e.k});
        }
        CHECK(seen.size() == static_cast<std::size_t>((p + 1) * (p + 1) * (p + 1)));
    }
}

TEST_CASE("Gauss-Legendre rules") {
    const auto one = gauss_legendre(1);
    CHECK(one.nodes == std::vector<double>{0.0});
    CHECK(one.weights == std::vector<double>{2.0});
    const auto two = gauss_legendre(2);
    CHECK(two.nodes[0] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(two.nodes[1] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(two.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);

    const auto r0 = gauss_rule(0, 4, {1, 2, 3});
    REQUIRE(r0.size() == 1);
    for (std::size_t d = 0; d < 3; ++d) {
        CHECK(r0.weights[d][0] == doctest::Approx(0.25));
    }
    CHECK(r0.abscissae[0][0] == doctest::Approx(0.375));

    // Exactness for monomials up to 2p+1 per direction, on every element.
    for (int p = 0; p <= 6; ++p) {
        const int K = 3;
        double jac = -1.0;
        for (const auto e : element_list(K)) {
            const auto r = gauss_rule(p, K, e);
            if (jac < 0) {
                jac = r.jacobian;
            }
            CHECK(r.jacobian == jac);
            CHECK(r.jacobian == doctest::Approx(std::pow(1.0 / (2 * K), 3)).epsilon(1e-15));
            double volume = 0.0;
            for (const double w : r.reference_weights) {
                for (const double v : r.reference_weights) {
                    for (const double u : r.reference_weights) {
                        volume += w * v * u * r.jacobian;
                    }
                }
            }
            CHECK(volume == doctest::Approx(1.0 / (K * K * K)).epsilon(1e-13));
            const std::array<int, 3> idx{e.i, e.j, e.k};
            for (std::size_t d = 0; d < 3; ++d) {
                const double a = static_cast<double>(idx[d]) / K;
                const double b = static_cast<double>(idx[d] + 1) / K;
                CHECK(std::accumulate(r.weights[d].begin(), r.weights[d].end(), 0.0) ==
                      doctest::Approx(1.0 / K).epsilon(1e-14));
                for (int deg = 0; deg <= 2 * p + 1; ++deg) {
                    double q = 0.0;
                    for (std::size_t n = 0; n < r.abscissae[d].size(); ++n) {
                        CHECK(r.weights[d][n] > 0.0);
                        q += r.weights[d][n] * std::pow(r.abscissae[d][n], deg);
                    }
                    const double exact = (std::pow(b, deg + 1) - std::pow(a, deg + 1)) / (deg + 1);
                    CHECK(std::abs(q - exact) <= 1e-12);
                }
            }
        }
    }
}
