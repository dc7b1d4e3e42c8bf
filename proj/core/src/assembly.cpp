#include "igabench/assembly.hpp"

#include <algorithm>
#include <cstring>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace igabench {

std::size_t dof_index(const MultiIndex& beta, int elements, int degree) {
    const int n = elements + degree;
    for (const int c : beta) {
        if (c < 0 || c >= n) {
            throw std::out_of_range("basis multi-index component " + std::to_string(c) + " outside [0," +
                                    std::to_string(n) + ")");
        }
    }
    const auto N = static_cast<std::size_t>(n);
    return (static_cast<std::size_t>(beta[0]) * N + static_cast<std::size_t>(beta[1])) * N +
           static_cast<std::size_t>(beta[2]);
}

namespace {

struct Box {
    int lo;
    int count;
};

Box overlap_box(int a, int degree, int n1d) {
    const int lo = std::max(0, a - degree);
    const int hi = std::min(n1d - 1, a + degree);
    return {lo, hi - lo + 1};
}

}  // namespace

GlobalGram::GlobalGram(int elements, int degree) : elements_(elements), degree_(degree), n1d_(elements + degree) {
    if (elements < 1 || degree < 0) {
        throw std::invalid_argument("invalid mesh for Gram matrix");
    }
    const auto n = static_cast<std::size_t>(n1d_);
    row_ptr_.reserve(n * n * n + 1);
    row_ptr_.push_back(0);
    for (int a = 0; a < n1d_; ++a) {
        const auto ba = overlap_box(a, degree, n1d_);
        for (int b = 0; b < n1d_; ++b) {
            const auto bb = overlap_box(b, degree, n1d_);
            for (int c = 0; c < n1d_; ++c) {
                const auto bc = overlap_box(c, degree, n1d_);
                for (int x = ba.lo; x < ba.lo + ba.count; ++x) {
                    for (int y = bb.lo; y < bb.lo + bb.count; ++y) {
                        for (int z = bc.lo; z < bc.lo + bc.count; ++z) {
                            col_idx_.push_back(dof_index({x, y, z}, elements, degree));
                        }
                    }
                }
                row_ptr_.push_back(col_idx_.size());
            }
        }
    }
    values_.assign(col_idx_.size(), 0.0);
}

std::size_t GlobalGram::position(const MultiIndex& row, const MultiIndex& col) const {
    const auto ba = overlap_box(row[0], degree_, n1d_);
    const auto bb = overlap_box(row[1], degree_, n1d_);
    const auto bc = overlap_box(row[2], degree_, n1d_);
    const auto offset = static_cast<std::size_t>(((col[0] - ba.lo) * bb.count + (col[1] - bb.lo)) * bc.count +
                                                 (col[2] - bc.lo));
    return row_ptr_[dof_index(row, elements_, degree_)] + offset;
}

double GlobalGram::at(std::size_t row, std::size_t col) const {
    if (row >= rows() || col >= rows()) {
        throw std::out_of_range("Gram entry index out of range");
    }
    const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    const auto it = std::lower_bound(first, last, col);
    if (it == last || *it != col) {
        return 0.0;
    }
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void GlobalGram::scatter(const ElementMatrix& m, std::size_t row_begin, std::size_t row_end) {
    const int q = degree_ + 1;
    if (m.size != q * q * q) {
        throw std::invalid_argument("element matrix size does not match the Gram degree");
    }
    const auto e = m.element;
    for (int r = 0; r < m.size; ++r) {
        const auto ro = local_offsets(r, degree_);
        const MultiIndex row{e.i + ro[0], e.j + ro[1], e.k + ro[2]};
        const auto global_row = dof_index(row, elements_, degree_);
        if (global_row < row_begin || global_row >= row_end) {
            continue;
        }
        for (int c = 0; c < m.size; ++c) {
            const auto co = local_offsets(c, degree_);
            const MultiIndex col{e.i + co[0], e.j + co[1], e.k + co[2]};
            values_[position(row, col)] += m(r, c);
        }
    }
}

void GlobalGram::clear_values() { std::fill(values_.begin(), values_.end(), 0.0); }

bool GlobalGram::bitwise_equal(const GlobalGram& other) const {
    return elements_ == other.elements_ && degree_ == other.degree_ && row_ptr_ == other.row_ptr_ &&
           col_idx_ == other.col_idx_ &&
           std::memcmp(values_.data(), other.values_.data(), values_.size() * sizeof(double)) == 0;
}

GlobalGram assemble(std::span<const ElementMatrix> elements, int mesh_elements, int degree) {
    const auto count = static_cast<std::size_t>(mesh_elements) * mesh_elements * mesh_elements;
    if (elements.size() != count) {
        throw std::invalid_argument("expected " + std::to_string(count) + " element matrices, got " +
                                    std::to_string(elements.size()));
    }
    std::vector<const ElementMatrix*> ordered(count, nullptr);
    for (const auto& m : elements) {
        const auto e = m.element;
        if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= mesh_elements || e.j >= mesh_elements || e.k >= mesh_elements) {
            throw std::out_of_range("element matrix for an element outside the mesh");
        }
        auto& slot = ordered[element_ordinal(e, mesh_elements)];
        if (slot != nullptr) {
            throw std::invalid_argument("duplicate element matrix");
        }
        slot = &m;
    }
    GlobalGram g(mesh_elements, degree);
    for (const auto* m : ordered) {
        g.scatter(*m);
    }
    return g;
}

void spmv(const GlobalGram& g, std::span<const double> x, std::span<double> y) {
    if (x.size() != g.rows() || y.size() != g.rows()) {
        throw std::invalid_argument("spmv dimension mismatch");
    }
    const auto rp = g.row_ptr();
    const auto ci = g.col_idx();
    const auto v = g.values();
    for (std::size_t r = 0; r < g.rows(); ++r) {
        double acc = 0.0;
        for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
            acc += v[k] * x[ci[k]];
        }
        y[r] = acc;
    }
}

std::vector<double> spmv(const GlobalGram& g, std::span<const double> x) {
    std::vector<double> y(g.rows(), 0.0);
    spmv(g, x, y);
    return y;
}

void write_matrix_market(std::ostream& out, const GlobalGram& g) {
    const auto rp = g.row_ptr();
    const auto ci = g.col_idx();
    const auto v = g.values();
    std::size_t lower = 0;
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
            lower += ci[k] <= r ? 1 : 0;
        }
    }
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << "% Gram matrix K=" << g.elements() << " p=" << g.degree() << '\n';
    out << g.rows() << ' ' << g.rows() << ' ' << lower << '\n';
    out << std::setprecision(17);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
            if (ci[k] <= r) {
                out << r + 1 << ' ' << ci[k] + 1 << ' ' << v[k] << '\n';
            }
        }
    }
}

}  // namespace igabench
