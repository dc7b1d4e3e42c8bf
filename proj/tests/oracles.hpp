#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "igabench/assembly.hpp"
#include "igabench/splines.hpp"
#include "igabench/taskgraph.hpp"

namespace oracle {

// --- dense symmetric eigenvalues (cyclic Jacobi) -----------------------------

inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) {
        ev[i] = a[i * n + i];
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

inline std::vector<double> dense(const igabench::GlobalGram& g) {
    const std::size_t n = g.rows();
    std::vector<double> a(n * n, 0.0);
    const auto rp = g.row_ptr();
    const auto ci = g.col_idx();
    const auto v = g.values();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
            a[r * n + ci[k]] = v[k];
        }
    }
    return a;
}

// --- 1D mass matrix from closed-form Gauss rules -------------------------------

// Gauss-Legendre nodes for 3 to 5 points from the closed forms, independent of
// the library's Newton iteration.
inline std::pair<std::vector<double>, std::vector<double>> gauss_table(int n) {
    switch (n) {
        case 3:
            return {{-std::sqrt(0.6), 0.0, std::sqrt(0.6)}, {5.0 / 9, 8.0 / 9, 5.0 / 9}};
        case 4: {
            const double a = std::sqrt(3.0 / 7 - 2.0 / 7 * std::sqrt(6.0 / 5));
            const double b = std::sqrt(3.0 / 7 + 2.0 / 7 * std::sqrt(6.0 / 5));
            const double wa = (18 + std::sqrt(30.0)) / 36;
            const double wb = (18 - std::sqrt(30.0)) / 36;
            return {{-b, -a, a, b}, {wb, wa, wa, wb}};
        }
        case 5: {
            const double a = std::sqrt(5 - 2 * std::sqrt(10.0 / 7)) / 3;
            const double b = std::sqrt(5 + 2 * std::sqrt(10.0 / 7)) / 3;
            const double wa = (322 + 13 * std::sqrt(70.0)) / 900;
            const double wb = (322 - 13 * std::sqrt(70.0)) / 900;
            return {{-b, -a, 0.0, a, b}, {wb, wa, 128.0 / 225, wa, wb}};
        }
        default:
            return {{}, {}};
    }
}

/// Exact 1D element mass matrix M[f][g] = int_e B_{e+f} B_{e+g} using the
/// recursive basis evaluation (p <= 4).
inline std::vector<double> mass_1d(const igabench::KnotVector& kv, int e) {
    const int p = kv.degree();
    const int q = p + 1;
    const auto [x, w] = gauss_table(std::max(3, p + 1));
    const double a = kv.element_begin(e);
    const double b = kv.element_end(e);
    std::vector<double> m(static_cast<std::size_t>(q * q), 0.0);
    // Two halves, each exact for degree 2p <= 2n-1.
    for (int half = 0; half < 2; ++half) {
        const double lo = a + half * (b - a) / 2;
        const double hi = lo + (b - a) / 2;
        for (std::size_t n = 0; n < x.size(); ++n) {
            const double xi = lo + (x[n] + 1) * (hi - lo) / 2;
            const double wt = w[n] * (hi - lo) / 2;
            for (int f = 0; f < q; ++f) {
                for (int g = 0; g < q; ++g) {
                    m[static_cast<std::size_t>(f * q + g)] +=
                        wt * igabench::eval_basis(kv, e + f, p, xi) * igabench::eval_basis(kv, e + g, p, xi);
                }
            }
        }
    }
    return m;
}

// --- DOT grammar checker -----------------------------------------------------

/// Recursive-descent parser for the DOT language (graph, node, edge, attr and
/// subgraph statements; identifiers, numerals and quoted strings).
class DotParser {
public:
    explicit DotParser(std::string_view text) : s_(text) {}

    bool parse() {
        try {
            graph();
            skip();
            return pos_ == s_.size();
        } catch (const Fail&) {
            return false;
        }
    }

    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t subgraphs = 0;
    bool directed = false;

private:
    struct Fail {};

    void skip() {
        for (;;) {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            if (s_.substr(pos_, 2) == "//") {
                while (pos_ < s_.size() && s_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (s_.substr(pos_, 2) == "/*") {
                const auto end = s_.find("*/", pos_ + 2);
                if (end == std::string_view::npos) {
                    throw Fail{};
                }
                pos_ = end + 2;
            } else {
                return;
            }
        }
    }
    bool peek(std::string_view tok) {
        skip();
        return s_.substr(pos_, tok.size()) == tok;
    }
    bool accept(std::string_view tok) {
        if (peek(tok)) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) {
            throw Fail{};
        }
    }
    bool keyword(std::string_view kw) {
        skip();
        if (s_.size() - pos_ < kw.size()) {
            return false;
        }
        for (std::size_t i = 0; i < kw.size(); ++i) {
            if (std::tolower(static_cast<unsigned char>(s_[pos_ + i])) != kw[i]) {
                return false;
            }
        }
        const std::size_t after = pos_ + kw.size();
        if (after < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[after])) || s_[after] == '_')) {
            return false;
        }
        pos_ = after;
        return true;
    }
    bool id() {
        skip();
        if (pos_ >= s_.size()) {
            return false;
        }
        const char c = s_[pos_];
        if (c == '"') {
            ++pos_;
            while (pos_ < s_.size() && s_[pos_] != '"') {
                pos_ += s_[pos_] == '\\' ? 2 : 1;
            }
            if (pos_ >= s_.size()) {
                throw Fail{};
            }
            ++pos_;
            return true;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
            return true;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
            std::size_t start = pos_;
            if (s_[pos_] == '-') {
                ++pos_;
            }
            bool digits = false;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
                digits = true;
                ++pos_;
            }
            if (!digits) {
                pos_ = start;
                return false;
            }
            return true;
        }
        return false;
    }
    void attr_list() {
        while (accept("[")) {
            while (!accept("]")) {
                if (!id()) {
                    throw Fail{};
                }
                if (accept("=") && !id()) {
                    throw Fail{};
                }
                if (!accept(",")) {
                    accept(";");
                }
            }
        }
    }
    void graph() {
        keyword("strict");
        if (keyword("digraph")) {
            directed = true;
        } else if (!keyword("graph")) {
            throw Fail{};
        }
        id();
        expect("{");
        stmt_list();
        expect("}");
    }
    void stmt_list() {
        while (!peek("}")) {
            stmt();
            accept(";");
        }
    }
    void subgraph_body() {
        ++subgraphs;
        expect("{");
        stmt_list();
        expect("}");
    }
    // Node id or subgraph as an edge operand.
    void operand(bool& was_node) {
        if (keyword("subgraph")) {
            id();
            subgraph_body();
            was_node = false;
            return;
        }
        if (peek("{")) {
            subgraph_body();
            was_node = false;
            return;
        }
        if (!id()) {
            throw Fail{};
        }
        if (accept(":")) {  // port
            if (!id()) {
                throw Fail{};
            }
        }
        was_node = true;
    }
    void stmt() {
        if (keyword("node") || keyword("edge") || keyword("graph")) {
            attr_list();
            return;
        }
        const std::size_t save = pos_;
        if (id() && accept("=")) {
            if (!id()) {
                throw Fail{};
            }
            return;
        }
        pos_ = save;
        bool was_node = false;
        operand(was_node);
        std::size_t edge_count = 0;
        while (true) {
            if (accept(directed ? "->" : "--")) {
                bool rhs = false;
                operand(rhs);
                ++edge_count;
            } else if (peek(directed ? "--" : "->")) {
                throw Fail{};
            } else {
                break;
            }
        }
        attr_list();
        if (edge_count == 0 && was_node) {
            ++nodes;
        }
        edges += edge_count;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

// --- schedules ---------------------------------------------------------------

/// Uniformly chooses among ready tasks at each step (Kahn with random picks).
inline std::vector<std::size_t> random_topological_order(const igabench::DependencyGraph& g, std::mt19937_64& rng) {
    const std::size_t n = g.tasks.size();
    std::vector<std::size_t> indeg(n, 0);
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& [u, v] : g.edges) {
        ++indeg[v];
        succ[u].push_back(v);
    }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
        if (indeg[i] == 0) {
            ready.push_back(i);
        }
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
        const std::size_t k = pick(rng);
        const std::size_t t = ready[k];
        ready[k] = ready.back();
        ready.pop_back();
        order.push_back(t);
        for (const auto v : succ[t]) {
            if (--indeg[v] == 0) {
                ready.push_back(v);
            }
        }
    }
    return order;
}

/// Takes a topological order and swaps the endpoints of a random edge so the
/// successor runs first.
inline std::vector<std::size_t> break_order(const igabench::DependencyGraph& g, std::vector<std::size_t> order,
                                            std::mt19937_64& rng) {
    std::vector<std::size_t> pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        pos[order[i]] = i;
    }
    std::uniform_int_distribution<std::size_t> pick(0, g.edges.size() - 1);
    const auto [u, v] = g.edges[pick(rng)];
    std::swap(order[pos[u]], order[pos[v]]);
    return order;
}

/// Longest-path depth by memoized DFS over predecessors (independent of Kahn).
inline std::vector<int> dfs_depth(const igabench::DependencyGraph& g) {
    const auto preds = g.predecessors();
    std::vector<int> depth(g.tasks.size(), -1);
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t root = 0; root < g.tasks.size(); ++root) {
        if (depth[root] >= 0) {
            continue;
        }
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [t, next] = stack.back();
            if (next < preds[t].size()) {
                const auto u = preds[t][next++];
                if (depth[u] < 0) {
                    stack.emplace_back(u, 0);
                }
                continue;
            }
            int d = 0;
            for (const auto u : preds[t]) {
                d = std::max(d, depth[u] + 1);
            }
            depth[t] = d;
            stack.pop_back();
        }
    }
    return depth;
}

}  // namespace oracle
