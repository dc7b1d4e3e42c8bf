#include "igabench/integrators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace igabench {

std::string_view to_string(Method m) { return m == Method::classical ? "classical" : "sumfact"; }

Method parse_method(std::string_view name) {
    if (name == "classical") {
        return Method::classical;
    }
    if (name == "sumfact") {
        return Method::sumfact;
    }
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

namespace {

void check_consistent(ElementId element, const KnotVector& kv, const QuadratureRule& rule) {
    const int K = kv.elements();
    if (element.i < 0 || element.j < 0 || element.k < 0 || element.i >= K || element.j >= K || element.k >= K) {
        throw std::out_of_range("element outside the mesh");
    }
    if (rule.points_per_direction < 1) {
        throw std::invalid_argument("empty quadrature rule");
    }
    const std::array<int, 3> origin{element.i, element.j, element.k};
    for (std::size_t d = 0; d < 3; ++d) {
        const double x = rule.abscissae[d].front();
        if (x < kv.element_begin(origin[d]) || x > kv.element_end(origin[d])) {
            throw std::invalid_argument("quadrature rule does not belong to this element");
        }
    }
}

void mirror_upper(ElementMatrix& m) {
    for (int r = 0; r < m.size; ++r) {
        for (int c = 0; c < r; ++c) {
            m(c, r) = m(r, c);
        }
    }
}

}  // namespace

ElementBasisTable tabulate_basis(const KnotVector& kv, const QuadratureRule& rule, ElementId element) {
    check_consistent(element, kv, rule);
    const int p = kv.degree();
    const int P = rule.points_per_direction;
    const auto knots = kv.knots();
    ElementBasisTable table;
    table.degree = p;
    table.points = P;
    const std::array<int, 3> origin{element.i, element.j, element.k};
    std::vector<double> prev(static_cast<std::size_t>(p) + 1);
    std::vector<double> cur(static_cast<std::size_t>(p) + 1);
    for (std::size_t d = 0; d < 3; ++d) {
        auto& out = table.values[d];
        out.assign(static_cast<std::size_t>((p + 1) * P), 0.0);
        for (int n = 0; n < P; ++n) {
            const double x = rule.abscissae[d][static_cast<std::size_t>(n)];
            for (int f = 0; f <= p; ++f) {
                prev[f] = eval_basis_order0(kv, origin[d] + f, x);
            }
            for (int r = 1; r <= p; ++r) {
                for (int f = 0; f <= p; ++f) {
                    const double right = f < p ? prev[f + 1] : 0.0;
                    cur[f] = detail::cox_step(knots, origin[d] + f, r, x, prev[f], right);
                }
                prev.swap(cur);
            }
            for (int f = 0; f <= p; ++f) {
                out[static_cast<std::size_t>(f * P + n)] = prev[f];
            }
        }
    }
    return table;
}

SumFactBuffers::SumFactBuffers(int degree, int points)
    : degree_(degree), points_(points), q_(degree + 1) {
    if (degree < 0 || points < 1) {
        throw std::invalid_argument("invalid sum factorization buffer shape");
    }
    const auto q = static_cast<std::size_t>(q_);
    const auto P = static_cast<std::size_t>(points);
    d_.assign(q * q * P * P, 0.0);
    c_.assign(q * q * q * q * P, 0.0);
}

void SumFactBuffers::zero() {
    std::fill(d_.begin(), d_.end(), 0.0);
    std::fill(c_.begin(), c_.end(), 0.0);
}

namespace detail {

std::vector<double> tensor_weights(const QuadratureRule& rule) {
    const auto& w = rule.reference_weights;
    std::vector<double> out;
    out.reserve(rule.size());
    for (const double w1 : w) {
        for (const double w2 : w) {
            for (const double w3 : w) {
                out.push_back(w1 * w2 * w3);
            }
        }
    }
    return out;
}

double classical_entry(const ElementBasisTable& table, std::span<const double> weights3d, double jacobian, int row,
                       int col, std::uint64_t* flops) {
    const int p = table.degree;
    const int P = table.points;
    const auto oi = local_offsets(row, p);
    const auto oj = local_offsets(col, p);
    double acc = 0.0;
    std::size_t n = 0;
    for (int n1 = 0; n1 < P; ++n1) {
        const double bxi = table.at(0, oi[0], n1);
        const double bxj = table.at(0, oj[0], n1);
        for (int n2 = 0; n2 < P; ++n2) {
            const double byi = table.at(1, oi[1], n2);
            const double byj = table.at(1, oj[1], n2);
            for (int n3 = 0; n3 < P; ++n3, ++n) {
                acc += classical_term(bxi, bxj, byi, byj, table.at(2, oi[2], n3), table.at(2, oj[2], n3), jacobian,
                                      weights3d[n]);
            }
            if (flops != nullptr) {
                *flops += 8 * static_cast<std::uint64_t>(P);
            }
        }
    }
    return acc;
}

}  // namespace detail

ElementMatrix integrate_element_classical(ElementId element, const ElementBasisTable& table,
                                          const QuadratureRule& rule) {
    const int p = table.degree;
    const int q = p + 1;
    const int n = q * q * q;
    ElementMatrix m(element, n);
    const auto weights = detail::tensor_weights(rule);
    std::uint64_t flops = 2 * weights.size();
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c <= r; ++c) {
            m(r, c) = detail::classical_entry(table, weights, rule.jacobian, r, c, &flops);
        }
    }
    mirror_upper(m);
    m.flops = flops;
    return m;
}

ElementMatrix integrate_element_classical(ElementId element, const KnotVector& kv, const QuadratureRule& rule) {
    return integrate_element_classical(element, tabulate_basis(kv, rule, element), rule);
}

ElementMatrix integrate_element_sumfact(ElementId element, const ElementBasisTable& table,
                                        const QuadratureRule& rule, SumFactBuffers& buffers) {
    const int p = table.degree;
    const int P = table.points;
    if (buffers.degree() != p || buffers.points() != P) {
        throw std::invalid_argument("sum factorization buffers sized for p=" + std::to_string(buffers.degree()) +
                                    ", P=" + std::to_string(buffers.points()) + " but element uses p=" +
                                    std::to_string(p) + ", P=" + std::to_string(P));
    }
    const int q = p + 1;
    const int n = q * q * q;
    const auto& w = rule.reference_weights;
    const double jac = rule.jacobian;
    buffers.zero();
    std::uint64_t flops = 0;

    // Innermost (third) direction into D.
    for (int i3 = 0; i3 < q; ++i3) {
        for (int j3 = 0; j3 < q; ++j3) {
            for (int k1 = 0; k1 < P; ++k1) {
                for (int k2 = 0; k2 < P; ++k2) {
                    double& dv = buffers.d_at(i3, j3, k1, k2);
                    for (int k3 = 0; k3 < P; ++k3) {
                        dv += detail::first_contraction_term(table.at(2, i3, k3), table.at(2, j3, k3), w[k3], jac);
                    }
                    flops += 4 * static_cast<std::uint64_t>(P);
                }
            }
        }
    }
    // Second direction: D into C.
    for (int i2 = 0; i2 < q; ++i2) {
        for (int j2 = 0; j2 < q; ++j2) {
            for (int i3 = 0; i3 < q; ++i3) {
                for (int j3 = 0; j3 < q; ++j3) {
                    for (int k1 = 0; k1 < P; ++k1) {
                        double& cv = buffers.c_at(i2, i3, j2, j3, k1);
                        for (int k2 = 0; k2 < P; ++k2) {
                            cv += detail::next_contraction_term(table.at(1, i2, k2), table.at(1, j2, k2),
                                                                buffers.d_at(i3, j3, k1, k2), w[k2]);
                        }
                        flops += 4 * static_cast<std::uint64_t>(P);
                    }
                }
            }
        }
    }
    // First direction: C into the element matrix, lower triangle only.
    ElementMatrix m(element, n);
    for (int r = 0; r < n; ++r) {
        const auto oi = local_offsets(r, p);
        for (int c = 0; c <= r; ++c) {
            const auto oj = local_offsets(c, p);
            double acc = 0.0;
            for (int k1 = 0; k1 < P; ++k1) {
                acc += detail::next_contraction_term(table.at(0, oi[0], k1), table.at(0, oj[0], k1),
                                                     buffers.c_at(oi[1], oi[2], oj[1], oj[2], k1), w[k1]);
            }
            flops += 4 * static_cast<std::uint64_t>(P);
            m(r, c) = acc;
        }
    }
    mirror_upper(m);
    m.flops = flops;
    return m;
}

ElementMatrix integrate_element_sumfact(ElementId element, const KnotVector& kv, const QuadratureRule& rule,
                                        SumFactBuffers& buffers) {
    return integrate_element_sumfact(element, tabulate_basis(kv, rule, element), rule, buffers);
}

std::uint64_t symmetric_entry_count(int degree) {
    const auto q = static_cast<std::uint64_t>(degree + 1);
    const auto n = q * q * q;
    return n * (n + 1) / 2;
}

std::uint64_t flop_count(Method method, int degree, int points) {
    if (degree < 0) {
        throw std::invalid_argument("degree must be non-negative");
    }
    const auto q = static_cast<std::uint64_t>(degree + 1);
    const auto P = static_cast<std::uint64_t>(points > 0 ? points : degree + 1);
    const auto pairs = symmetric_entry_count(degree);
    if (method == Method::classical) {
        // 7 multiplies + 1 add per (pair, point); 2 multiplies per 3D weight.
        return pairs * P * P * P * 8 + 2 * P * P * P;
    }
    // 3 multiplies + 1 add per update in each of the three phases.
    const std::uint64_t phase1 = q * q * P * P * P;
    const std::uint64_t phase2 = q * q * q * q * P * P;
    const std::uint64_t phase3 = pairs * P;
    return 4 * (phase1 + phase2 + phase3);
}

}  // namespace igabench
