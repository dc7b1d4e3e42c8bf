#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace igabench {

/// Open uniform knot sequence on [0,1]: p+1 zeros, interior knots k/K, p+1 ones.
class KnotVector {
public:
    KnotVector(int elements, int degree);

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] int elements() const noexcept { return elements_; }
    [[nodiscard]] std::span<const double> knots() const noexcept { return knots_; }
    [[nodiscard]] double operator[](std::size_t i) const { return knots_[i]; }

    /// K + p basis functions of full degree.
    [[nodiscard]] int basis_count() const noexcept { return elements_ + degree_; }
    [[nodiscard]] double element_size() const noexcept { return 1.0 / elements_; }
    [[nodiscard]] double element_begin(int e) const { return knots_[static_cast<std::size_t>(e + degree_)]; }
    [[nodiscard]] double element_end(int e) const { return knots_[static_cast<std::size_t>(e + degree_ + 1)]; }

    /// 1D element containing xi; xi == 1 maps to the last element.
    [[nodiscard]] int find_element(double xi) const;

private:
    int elements_;
    int degree_;
    std::vector<double> knots_;
};

KnotVector make_knot_vector(int elements, int degree);

/// Indicator of the knot span [knots[i], knots[i+1]). The last nonempty span is
/// closed on the right so the basis does not vanish at xi = 1.
double eval_basis_order0(const KnotVector& kv, int i, double xi);

/// B_{i;q}(xi) by the two-term Cox-de Boor recursion, with 0/0 := 0.
double eval_basis(const KnotVector& kv, int i, int order, double xi);

struct BasisValues {
    int element = 0;
    double point = 0.0;
    /// B_{e;p}(xi) ... B_{e+p;p}(xi)
    std::vector<double> values;
    std::vector<double> derivatives;
};

/// The p+1 functions supported on element e, evaluated with the triangular
/// de Boor scheme. Throws if xi lies outside the element.
BasisValues eval_nonzero_basis(const KnotVector& kv, int element, double xi);

/// First derivatives of the p+1 supported functions (degree-reduction formula).
/// Requires p >= 1.
std::vector<double> eval_nonzero_basis_derivatives(const KnotVector& kv, int element, double xi);

/// Values and first derivatives in one pass.
BasisValues eval_nonzero_basis_with_derivatives(const KnotVector& kv, int element, double xi);

}  // namespace igabench
