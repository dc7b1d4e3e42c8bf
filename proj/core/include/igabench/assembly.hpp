#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "igabench/integrators.hpp"
#include "igabench/mesh_quadrature.hpp"

namespace igabench {

/// Lexicographic flattening a*(K+p)^2 + b*(K+p) + c.
std::size_t dof_index(const MultiIndex& beta, int elements, int degree);

/// Sparse symmetric Gram matrix in CSR layout with sorted columns. Both
/// triangles are stored. The sparsity pattern is the full support-overlap
/// box of each row, fixed at construction.
class GlobalGram {
public:
    /// Symbolic construction: pattern only, values zero.
    GlobalGram(int elements, int degree);

    [[nodiscard]] int elements() const noexcept { return elements_; }
    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] std::size_t rows() const noexcept { return row_ptr_.size() - 1; }
    [[nodiscard]] std::size_t nnz() const noexcept { return values_.size(); }

    [[nodiscard]] std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
    [[nodiscard]] std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Entry lookup; zero outside the pattern.
    [[nodiscard]] double at(std::size_t row, std::size_t col) const;

    /// Adds one element's contributions to the rows in [row_begin, row_end).
    /// Calling this for elements in a fixed order gives a fixed reduction order
    /// per entry, which is what makes assembly deterministic.
    void scatter(const ElementMatrix& m, std::size_t row_begin, std::size_t row_end);
    void scatter(const ElementMatrix& m) { scatter(m, 0, rows()); }

    void clear_values();

    [[nodiscard]] bool bitwise_equal(const GlobalGram& other) const;

private:
    [[nodiscard]] std::size_t position(const MultiIndex& row, const MultiIndex& col) const;

    int elements_;
    int degree_;
    int n1d_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

/// Assembles the global matrix from one matrix per element, reducing in
/// lexicographic element order regardless of input order. Throws on missing
/// or duplicate elements.
GlobalGram assemble(std::span<const ElementMatrix> elements, int mesh_elements, int degree);

std::vector<double> spmv(const GlobalGram& g, std::span<const double> x);
void spmv(const GlobalGram& g, std::span<const double> x, std::span<double> y);

/// Matrix Market coordinate, real symmetric, lower triangle, 1-based.
void write_matrix_market(std::ostream& out, const GlobalGram& g);

}  // namespace igabench
