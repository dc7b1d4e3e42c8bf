#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "igabench/mesh_quadrature.hpp"
#include "igabench/splines.hpp"

namespace igabench {

enum class Method { classical, sumfact };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

/// Dense local Gram matrix of one element, row-major n x n with n = (p+1)^3.
struct ElementMatrix {
    ElementId element;
    int size = 0;
    std::vector<double> entries;
    std::uint64_t flops = 0;

    ElementMatrix() = default;
    ElementMatrix(ElementId e, int n) : element(e), size(n), entries(static_cast<std::size_t>(n) * n, 0.0) {}

    double& operator()(int row, int col) { return entries[static_cast<std::size_t>(row) * size + col]; }
    double operator()(int row, int col) const { return entries[static_cast<std::size_t>(row) * size + col]; }
};

/// 1D basis values of the supported functions at the element's abscissae,
/// laid out as values[d][f * points + n] for local function f and point n.
struct ElementBasisTable {
    int degree = 0;
    int points = 0;
    std::array<std::vector<double>, 3> values;

    [[nodiscard]] double at(int direction, int f, int n) const {
        return values[static_cast<std::size_t>(direction)][static_cast<std::size_t>(f * points + n)];
    }
};

/// Evaluates the p+1 supported functions per direction with the per-order
/// Cox-de Boor recursion used by the task-graph executor, so both paths see
/// bitwise-identical basis values.
ElementBasisTable tabulate_basis(const KnotVector& kv, const QuadratureRule& rule, ElementId element);

/// Scratch arrays for sum factorization. D(i3,j3,k1,k2) and C(i2,i3,j2,j3,k1).
class SumFactBuffers {
public:
    SumFactBuffers(int degree, int points);

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] int points() const noexcept { return points_; }
    [[nodiscard]] std::span<const double> d() const noexcept { return d_; }
    [[nodiscard]] std::span<const double> c() const noexcept { return c_; }

    void zero();

    double& d_at(int i3, int j3, int k1, int k2) {
        return d_[static_cast<std::size_t>(((i3 * q_ + j3) * points_ + k1) * points_ + k2)];
    }
    double& c_at(int i2, int i3, int j2, int j3, int k1) {
        return c_[static_cast<std::size_t>((((i2 * q_ + i3) * q_ + j2) * q_ + j3) * points_ + k1)];
    }

private:
    int degree_;
    int points_;
    int q_;
    std::vector<double> d_;
    std::vector<double> c_;
};

ElementMatrix integrate_element_classical(ElementId element, const KnotVector& kv, const QuadratureRule& rule);

ElementMatrix integrate_element_sumfact(ElementId element, const KnotVector& kv, const QuadratureRule& rule,
                                        SumFactBuffers& buffers);

/// Same kernels on a precomputed basis table (used by the runtime to share
/// tabulation between strategies).
ElementMatrix integrate_element_classical(ElementId element, const ElementBasisTable& table,
                                          const QuadratureRule& rule);
ElementMatrix integrate_element_sumfact(ElementId element, const ElementBasisTable& table,
                                        const QuadratureRule& rule, SumFactBuffers& buffers);

/// Multiply and add operations performed by one element integration,
/// excluding basis tabulation. points defaults to p+1 per direction.
std::uint64_t flop_count(Method method, int degree, int points = 0);

/// Number of stored entries under symmetry, n(n+1)/2.
std::uint64_t symmetric_entry_count(int degree);

namespace detail {

// Shared arithmetic of the sequential kernels and the task executor. Keeping
// the association order in one place makes the two paths bitwise identical.

inline double cox_term(double xi, double lo, double hi_minus_lo) {
    return hi_minus_lo == 0.0 ? 0.0 : (xi - lo) / hi_minus_lo;
}

/// One Cox-de Boor step: B_{f;r} from B_{f;r-1} and B_{f+1;r-1}.
inline double cox_step(std::span<const double> knots, int f, int order, double xi, double left, double right) {
    const auto u = [&knots](int i) { return knots[static_cast<std::size_t>(i)]; };
    const double a = cox_term(xi, u(f), u(f + order) - u(f));
    const double den = u(f + order + 1) - u(f + 1);
    const double b = den == 0.0 ? 0.0 : (u(f + order + 1) - xi) / den;
    return a * left + b * right;
}

inline double classical_term(double bxi, double bxj, double byi, double byj, double bzi, double bzj, double jac,
                             double weight) {
    return bxi * bxj * byi * byj * bzi * bzj * jac * weight;
}

inline double first_contraction_term(double bi, double bj, double w, double jac) { return bi * bj * w * jac; }

inline double next_contraction_term(double bi, double bj, double buffer, double w) { return bi * bj * buffer * w; }

/// 3D quadrature weights w1*w2*w3 in lexicographic point order.
std::vector<double> tensor_weights(const QuadratureRule& rule);

/// One classical Gram entry (row >= col) from a tabulated basis; adds the
/// operations performed to *flops when given.
double classical_entry(const ElementBasisTable& table, std::span<const double> weights3d, double jacobian, int row,
                       int col, std::uint64_t* flops = nullptr);

}  // namespace detail

}  // namespace igabench
