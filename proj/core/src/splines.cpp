#include "igabench/splines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace igabench {

namespace {

constexpr double kElementSlack = 1e-12;

// Cox-de Boor coefficient with the 0/0 := 0 convention.
double ratio(double num, double den) {
    if (den == 0.0) {
        return 0.0;
    }
    return num / den;
}

void check_in_element(const KnotVector& kv, int element, double xi) {
    if (element < 0 || element >= kv.elements()) {
        throw std::out_of_range("element index " + std::to_string(element) + " out of range");
    }
    if (xi < kv.element_begin(element) - kElementSlack || xi > kv.element_end(element) + kElementSlack) {
        throw std::domain_error("point " + std::to_string(xi) + " outside element " + std::to_string(element));
    }
}

// Triangular table of nonzero basis values (rows: degree 0..p) together with
// the knot differences, as in the classic de Boor evaluation.
struct DeBoorTable {
    std::vector<std::vector<double>> ndu;
};

DeBoorTable de_boor_table(const KnotVector& kv, int element, double xi) {
    const int p = kv.degree();
    const int span = element + p;
    std::vector<double> left(static_cast<std::size_t>(p) + 1, 0.0);
    std::vector<double> right(static_cast<std::size_t>(p) + 1, 0.0);
    DeBoorTable t;
    t.ndu.assign(static_cast<std::size_t>(p) + 1, std::vector<double>(static_cast<std::size_t>(p) + 1, 0.0));
    t.ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = xi - kv[static_cast<std::size_t>(span + 1 - j)];
        right[j] = kv[static_cast<std::size_t>(span + j)] - xi;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            // lower triangle stores knot differences
            t.ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ratio(t.ndu[r][j - 1], t.ndu[j][r]);
            t.ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        t.ndu[j][j] = saved;
    }
    return t;
}

}  // namespace

KnotVector::KnotVector(int elements, int degree) : elements_(elements), degree_(degree) {
    if (elements < 1) {
        throw std::invalid_argument("knot vector needs at least one element");
    }
    if (degree < 0) {
        throw std::invalid_argument("degree must be non-negative");
    }
    knots_.reserve(static_cast<std::size_t>(elements + 2 * degree + 1));
    for (int i = 0; i < degree; ++i) {
        knots_.push_back(0.0);
    }
    for (int k = 0; k <= elements; ++k) {
        knots_.push_back(static_cast<double>(k) / elements);
    }
    for (int i = 0; i < degree; ++i) {
        knots_.push_back(1.0);
    }
}

int KnotVector::find_element(double xi) const {
    if (xi < 0.0 || xi > 1.0) {
        throw std::domain_error("point outside [0,1]");
    }
    const int e = static_cast<int>(std::floor(xi * elements_));
    return e >= elements_ ? elements_ - 1 : e;
}

KnotVector make_knot_vector(int elements, int degree) { return KnotVector(elements, degree); }

double eval_basis_order0(const KnotVector& kv, int i, double xi) {
    const int last_span = kv.elements() + 2 * kv.degree() - 1;
    if (i < 0 || i > last_span) {
        throw std::out_of_range("basis index " + std::to_string(i) + " out of range");
    }
    const double lo = kv[static_cast<std::size_t>(i)];
    const double hi = kv[static_cast<std::size_t>(i) + 1];
    if (lo <= xi && xi < hi) {
        return 1.0;
    }
    const int last_nonempty = kv.elements() + kv.degree() - 1;
    if (xi == hi && i == last_nonempty) {
        return 1.0;
    }
    return 0.0;
}

double eval_basis(const KnotVector& kv, int i, int order, double xi) {
    if (order < 0 || order > kv.degree()) {
        throw std::out_of_range("order " + std::to_string(order) + " out of range");
    }
    if (i < 0 || i > kv.elements() + 2 * kv.degree() - 1 - order) {
        throw std::out_of_range("basis index " + std::to_string(i) + " out of range for order " +
                                std::to_string(order));
    }
    if (order == 0) {
        return eval_basis_order0(kv, i, xi);
    }
    const auto u = [&kv](int idx) { return kv[static_cast<std::size_t>(idx)]; };
    const double a = ratio(xi - u(i), u(i + order) - u(i));
    const double b = ratio(u(i + order + 1) - xi, u(i + order + 1) - u(i + 1));
    double value = 0.0;
    if (a != 0.0) {
        value += a * eval_basis(kv, i, order - 1, xi);
    }
    if (b != 0.0) {
        value += b * eval_basis(kv, i + 1, order - 1, xi);
    }
    return value;
}

BasisValues eval_nonzero_basis(const KnotVector& kv, int element, double xi) {
    check_in_element(kv, element, xi);
    const int p = kv.degree();
    const auto t = de_boor_table(kv, element, xi);
    BasisValues out;
    out.element = element;
    out.point = xi;
    out.values.resize(static_cast<std::size_t>(p) + 1);
    for (int j = 0; j <= p; ++j) {
        out.values[j] = t.ndu[j][p];
    }
    return out;
}

BasisValues eval_nonzero_basis_with_derivatives(const KnotVector& kv, int element, double xi) {
    const int p = kv.degree();
    if (p == 0) {
        throw std::invalid_argument("derivatives of piecewise-constant basis are not defined");
    }
    check_in_element(kv, element, xi);
    const auto t = de_boor_table(kv, element, xi);
    BasisValues out;
    out.element = element;
    out.point = xi;
    out.values.resize(static_cast<std::size_t>(p) + 1);
    out.derivatives.resize(static_cast<std::size_t>(p) + 1);
    for (int j = 0; j <= p; ++j) {
        out.values[j] = t.ndu[j][p];
    }
    // B'_{i;p} = p * (B_{i;p-1} / (u_{i+p} - u_i) - B_{i+1;p-1} / (u_{i+p+1} - u_{i+1}))
    // with the degree p-1 values from column p-1 and knot differences from the lower triangle.
    for (int r = 0; r <= p; ++r) {
        double d = 0.0;
        if (r >= 1) {
            d += ratio(t.ndu[r - 1][p - 1], t.ndu[p][r - 1]);
        }
        if (r <= p - 1) {
            d -= ratio(t.ndu[r][p - 1], t.ndu[p][r]);
        }
        out.derivatives[r] = p * d;
    }
    return out;
}

std::vector<double> eval_nonzero_basis_derivatives(const KnotVector& kv, int element, double xi) {
    return eval_nonzero_basis_with_derivatives(kv, element, xi).derivatives;
}

}  // namespace igabench
