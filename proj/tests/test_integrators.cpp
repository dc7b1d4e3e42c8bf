#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "igabench/integrators.hpp"
#include "igabench/scaling_analysis.hpp"
#include "oracles.hpp"

using namespace igabench;

namespace {

ElementMatrix classical(int K, int p, ElementId e) {
    const KnotVector kv(K, p);
    return integrate_element_classical(e, kv, gauss_rule(p, K, e));
}

ElementMatrix sumfact(int K, int p, ElementId e) {
    const KnotVector kv(K, p);
    SumFactBuffers buf(p, p + 1);
    return integrate_element_sumfact(e, kv, gauss_rule(p, K, e), buf);
}

double rel_frobenius(const ElementMatrix& a, const ElementMatrix& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        num += (a.entries[i] - b.entries[i]) * (a.entries[i] - b.entries[i]);
        den += a.entries[i] * a.entries[i];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("unit cube constant basis") {
    const auto c = classical(1, 0, {0, 0, 0});
    const auto s = sumfact(1, 0, {0, 0, 0});
    REQUIRE(c.size == 1);
    CHECK(c(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("trilinear element matrix against the analytic 1D mass matrix") {
    const auto c = classical(1, 1, {0, 0, 0});
    REQUIRE(c.size == 8);
    for (int r = 0; r < 8; ++r) {
        CHECK(std::abs(c(r, r) - 1.0 / 27) <= 1e-12);
    }
    CHECK(std::abs(c(0, 7) - 1.0 / 216) <= 1e-12);
    const auto s = sumfact(1, 1, {0, 0, 0});
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
        CHECK(std::abs(c.entries[i] - s.entries[i]) <= 1e-12);
    }
    // h = 1/2: the function interior to the element has 1D mass h/3 per direction.
    for (const auto e : element_list(2)) {
        const auto m = classical(2, 1, e);
        const int corner = local_index(e, {1, 1, 1}, 1);
        CHECK(std::abs(m(corner, corner) - 1.0 / 216) <= 1e-14);
    }
}

TEST_CASE("tensor-product oracle and classical/sumfact equivalence") {
    for (int p = 0; p <= 4; ++p) {
        for (const int K : {1, 2, 4}) {
            const KnotVector kv(K, p);
            SumFactBuffers buf(p, p + 1);
            const int q = p + 1;
            for (const auto e : element_list(K)) {
                const auto rule = gauss_rule(p, K, e);
                const auto c = integrate_element_classical(e, kv, rule);
                const auto s = integrate_element_sumfact(e, kv, rule, buf);
                CHECK(rel_frobenius(c, s) <= 1e-10);
                if (K == 2 || p <= 2) {
                    const auto mx = oracle::mass_1d(kv, e.i);
                    const auto my = oracle::mass_1d(kv, e.j);
                    const auto mz = oracle::mass_1d(kv, e.k);
                    double worst = 0.0;
                    for (int r = 0; r < c.size; ++r) {
                        const auto a = local_offsets(r, p);
                        for (int col = 0; col < c.size; ++col) {
                            const auto b = local_offsets(col, p);
                            const double exact = mx[static_cast<std::size_t>(a[0] * q + b[0])] *
                                                 my[static_cast<std::size_t>(a[1] * q + b[1])] *
                                                 mz[static_cast<std::size_t>(a[2] * q + b[2])];
                            worst = std::max(worst, std::abs(exact - c(r, col)));
                        }
                    }
                    CHECK(worst <= 1e-14);
                }
            }
        }
    }
}

TEST_CASE("symmetry, positive diagonal, translation invariance") {
    const int p = 2;
    const int K = 5;
    const auto ref = classical(K, p, {1, 2, 3});
    for (int r = 0; r < ref.size; ++r) {
        CHECK(ref(r, r) > 0.0);
        for (int c = 0; c < ref.size; ++c) {
            CHECK(std::memcmp(&ref.entries[static_cast<std::size_t>(r * ref.size + c)],
                              &ref.entries[static_cast<std::size_t>(c * ref.size + r)], sizeof(double)) == 0);
        }
    }
    // Interior elements see the same translated cardinal splines.
    const auto other = classical(K, p, {2, 2, 2});
    for (std::size_t i = 0; i < ref.entries.size(); ++i) {
        CHECK(std::abs(ref.entries[i] - other.entries[i]) <= 1e-15);
    }
}

TEST_CASE("buffers and input validation") {
    const KnotVector kv(2, 2);
    SumFactBuffers wrong(1, 2);
    CHECK_THROWS_AS(integrate_element_sumfact({0, 0, 0}, kv, gauss_rule(2, 2, {0, 0, 0}), wrong),
                    std::invalid_argument);
    SumFactBuffers buf(2, 3);
    CHECK(buf.d().size() == 3u * 3 * 3 * 3);
    CHECK(buf.c().size() == 81u * 3);
    CHECK_THROWS(integrate_element_classical({2, 0, 0}, kv, gauss_rule(2, 2, {0, 0, 0})));
    CHECK_THROWS(integrate_element_classical({1, 0, 0}, kv, gauss_rule(2, 2, {0, 0, 0})));
}

TEST_CASE("instrumented counts equal the closed form") {
    for (int p = 0; p <= 5; ++p) {
        const auto c = classical(2, p, {1, 0, 1});
        const auto s = sumfact(2, p, {1, 0, 1});
        CHECK(c.flops == flop_count(Method::classical, p));
        CHECK(s.flops == flop_count(Method::sumfact, p));
        if (p >= 1) {
            CHECK(s.flops < c.flops);
        }
    }
    CHECK(flop_count(Method::classical, 0, 1) >= 5);
    CHECK(symmetric_entry_count(1) == 36);
    CHECK(symmetric_entry_count(2) == 378);

    const double r = static_cast<double>(flop_count(Method::classical, 40)) / flop_count(Method::classical, 39);
    CHECK(r == doctest::Approx(std::pow(41.0 / 40, 9)).epsilon(0.02));

    std::vector<std::pair<int, double>> sf;
    std::vector<std::pair<int, double>> cl;
    for (int p = 2; p <= 6; ++p) {
        sf.emplace_back(p, static_cast<double>(flop_count(Method::sumfact, p)));
    }
    for (int p = 2; p <= 8; ++p) {
        cl.emplace_back(p, static_cast<double>(flop_count(Method::classical, p)));
    }
    const double sf_slope = fit_loglog_slope(sf);
    CHECK(sf_slope >= 6.5);
    CHECK(sf_slope <= 7.5);
    const double cl_slope = fit_loglog_slope(cl);
    CHECK(cl_slope >= 8.5);
    CHECK(cl_slope <= 9.5);
}

TEST_CASE("method names") {
    CHECK(parse_method("classical") == Method::classical);
    CHECK(parse_method("sumfact") == Method::sumfact);
    CHECK(to_string(Method::sumfact) == "sumfact");
    CHECK_THROWS_AS(parse_method("fast"), std::invalid_argument);
}
