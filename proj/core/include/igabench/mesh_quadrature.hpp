#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <vector>

namespace igabench {

/// Tensor-product element (i,j,k), each component in [0, K).
struct ElementId {
    int i = 0;
    int j = 0;
    int k = 0;

    auto operator<=>(const ElementId&) const = default;
};

/// Basis multi-index (a,b,c), each component in [0, K+p).
using MultiIndex = std::array<int, 3>;

/// All K^3 elements in lexicographic order (k fastest).
std::vector<ElementId> element_list(int elements);

/// Position of an element in element_list order.
std::size_t element_ordinal(ElementId e, int elements);

struct SupportSet {
    ElementId element;
    int degree = 0;
    std::vector<MultiIndex> indices;  // lexicographic, matches local_index order
};

SupportSet support_set(ElementId element, int degree);

/// Lexicographic index of (a-i, b-j, c-k) in base p+1.
int local_index(ElementId element, const MultiIndex& beta, int degree);

/// Inverse of local_index for the offsets only.
MultiIndex local_offsets(int local, int degree);

struct GaussLegendre1D {
    std::vector<double> nodes;    // ascending, in [-1,1]
    std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1,1] via Newton iteration on P_n.
GaussLegendre1D gauss_legendre(int points);

struct QuadratureRule {
    int points_per_direction = 0;
    /// Physical abscissae per direction, mapped into the element.
    std::array<std::vector<double>, 3> abscissae;
    /// Physical weights per direction; each direction sums to the edge length.
    std::array<std::vector<double>, 3> weights;
    /// Reference-cube weights (sum to 2 per direction); the integrators use
    /// these together with the constant jacobian.
    std::vector<double> reference_weights;
    /// Determinant of the affine map from [-1,1]^3, (1/(2K))^3.
    double jacobian = 0.0;

    [[nodiscard]] std::size_t size() const noexcept {
        const auto n = static_cast<std::size_t>(points_per_direction);
        return n * n * n;
    }
};

/// Gauss-Legendre rule mapped into element; defaults to p+1 points per direction.
QuadratureRule gauss_rule(int degree, int elements, ElementId element, int points_per_direction = 0);

}  // namespace igabench
