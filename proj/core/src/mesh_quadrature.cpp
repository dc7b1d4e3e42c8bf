#include "igabench/mesh_quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace igabench {

std::vector<ElementId> element_list(int elements) {
    if (elements < 1) {
        throw std::invalid_argument("mesh needs at least one element per direction");
    }
    std::vector<ElementId> out;
    out.reserve(static_cast<std::size_t>(elements) * elements * elements);
    for (int i = 0; i < elements; ++i) {
        for (int j = 0; j < elements; ++j) {
            for (int k = 0; k < elements; ++k) {
                out.push_back({i, j, k});
            }
        }
    }
    return out;
}

std::size_t element_ordinal(ElementId e, int elements) {
    const auto K = static_cast<std::size_t>(elements);
    return (static_cast<std::size_t>(e.i) * K + static_cast<std::size_t>(e.j)) * K + static_cast<std::size_t>(e.k);
}

SupportSet support_set(ElementId element, int degree) {
    if (degree < 0) {
        throw std::invalid_argument("degree must be non-negative");
    }
    SupportSet s{element, degree, {}};
    s.indices.reserve(static_cast<std::size_t>((degree + 1) * (degree + 1) * (degree + 1)));
    for (int a = element.i; a <= element.i + degree; ++a) {
        for (int b = element.j; b <= element.j + degree; ++b) {
            for (int c = element.k; c <= element.k + degree; ++c) {
                s.indices.push_back({a, b, c});
            }
        }
    }
    return s;
}

int local_index(ElementId element, const MultiIndex& beta, int degree) {
    const int da = beta[0] - element.i;
    const int db = beta[1] - element.j;
    const int dc = beta[2] - element.k;
    for (const int d : {da, db, dc}) {
        if (d < 0 || d > degree) {
            throw std::out_of_range("multi-index outside the element support set");
        }
    }
    const int q = degree + 1;
    return (da * q + db) * q + dc;
}

MultiIndex local_offsets(int local, int degree) {
    const int q = degree + 1;
    return {local / (q * q), (local / q) % q, local % q};
}

GaussLegendre1D gauss_legendre(int points) {
    if (points < 1) {
        throw std::invalid_argument("Gauss-Legendre rule needs at least one point");
    }
    const auto n = static_cast<std::size_t>(points);
    GaussLegendre1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // P_n and P_{n-1} at x by the three-term recurrence.
    const auto legendre = [n](double x) {
        double prev = 1.0;
        double cur = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / static_cast<double>(k);
            prev = cur;
            cur = next;
        }
        return std::pair{cur, prev};
    };
    const auto derivative = [n](double x, double pn, double pn1) {
        return static_cast<double>(n) * (x * pn - pn1) / (x * x - 1.0);
    };
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [pn, pn1] = legendre(x);
            const double dx = pn / derivative(x, pn, pn1);
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const auto [pn, pn1] = legendre(x);
        const double dp = derivative(x, pn, pn1);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

QuadratureRule gauss_rule(int degree, int elements, ElementId element, int points_per_direction) {
    if (degree < 0) {
        throw std::invalid_argument("degree must be non-negative");
    }
    if (elements < 1) {
        throw std::invalid_argument("mesh needs at least one element per direction");
    }
    const int points = points_per_direction > 0 ? points_per_direction : degree + 1;
    const auto ref = gauss_legendre(points);
    const double h = 1.0 / elements;
    QuadratureRule rule;
    rule.points_per_direction = points;
    rule.reference_weights = ref.weights;
    rule.jacobian = (h / 2.0) * (h / 2.0) * (h / 2.0);
    const std::array<int, 3> origin{element.i, element.j, element.k};
    for (std::size_t d = 0; d < 3; ++d) {
        const double lo = origin[d] * h;
        auto& xs = rule.abscissae[d];
        auto& ws = rule.weights[d];
        xs.resize(ref.nodes.size());
        ws.resize(ref.nodes.size());
        for (std::size_t n = 0; n < ref.nodes.size(); ++n) {
            xs[n] = lo + 0.5 * h * (ref.nodes[n] + 1.0);
            ws[n] = 0.5 * h * ref.weights[n];
        }
    }
    return rule;
}

}  // namespace igabench
