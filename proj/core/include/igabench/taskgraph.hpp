#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "igabench/mesh_quadrature.hpp"

namespace igabench {

// Task graph of sum-factorized integration over one element.
//
// Directions are numbered in contraction order: direction 1 is contracted
// first (together with the jacobian), direction 3 last. The executor maps
// direction d onto coordinate axis 3-d, matching the sequential kernel, which
// contracts the third coordinate first.

enum class TaskKind : std::uint8_t { cox, jacobian, product, reduce };

std::string_view to_string(TaskKind kind);

struct Task {
    TaskKind kind = TaskKind::cox;
    ElementId element;
    int direction = 0;  // 1..3; 0 for jacobian
    int order = 0;      // Cox-de Boor order r (cox only)
    int function = 0;   // global 1D function index f (cox only)
    int row = 0;        // local I(beta), row >= col (product/reduce)
    int col = 0;        // local I(gamma)
    int point = 0;      // quadrature point n in [0, P); unused for reduce

    bool operator==(const Task&) const = default;
};

/// Closed-form task numbering used by build_alphabet and the executor.
/// Layout: cox (order, direction, function, point), jacobian (point), then
/// per direction the products (pair, point) followed by the reduces (pair).
class TaskIndexer {
public:
    TaskIndexer(ElementId element, int degree, int points);

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] int points() const noexcept { return points_; }
    [[nodiscard]] ElementId element() const noexcept { return element_; }
    [[nodiscard]] std::size_t pair_count() const noexcept { return pairs_; }
    [[nodiscard]] std::size_t size() const noexcept { return total_; }
    [[nodiscard]] int class_count() const noexcept { return degree_ + 7; }

    /// Canonical pair number of (row, col) with row >= col.
    [[nodiscard]] static std::size_t pair_index(int row, int col) {
        return static_cast<std::size_t>(row) * (static_cast<std::size_t>(row) + 1) / 2 +
               static_cast<std::size_t>(col);
    }
    [[nodiscard]] static std::pair<int, int> pair_from_index(std::size_t index);

    /// Element coordinate that direction d's functions are offset from.
    [[nodiscard]] int direction_origin(int direction) const;

    [[nodiscard]] std::size_t cox(int order, int direction, int function, int point) const;
    [[nodiscard]] std::size_t jacobian(int point) const;
    [[nodiscard]] std::size_t product(int direction, std::size_t pair, int point) const;
    [[nodiscard]] std::size_t reduce(int direction, std::size_t pair) const;

    [[nodiscard]] Task task(std::size_t id) const;
    /// Foata class of a task by kind: cox r -> r, jacobian -> p,
    /// product d -> p+2d-1, reduce d -> p+2d.
    [[nodiscard]] int layout_class(const Task& t) const;

private:
    ElementId element_;
    int degree_;
    int points_;
    int q_;
    std::size_t pairs_;
    std::size_t cox_count_;
    std::size_t per_direction_;
    std::size_t total_;
};

/// The alphabet for one element: cox tasks for every order, direction,
/// function in {origin..origin+p} and point; P jacobians; products and
/// reduces for every canonical pair in each direction.
std::vector<Task> build_alphabet(ElementId element, int degree, int points);

struct DependencyGraph {
    int degree = 0;
    int points = 0;
    ElementId element;
    std::vector<Task> tasks;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (u, v): v reads u
    std::vector<int> foata_class;                           // empty until assigned

    [[nodiscard]] std::size_t class_count() const;
    [[nodiscard]] std::vector<std::vector<std::size_t>> predecessors() const;
    [[nodiscard]] std::vector<std::vector<std::size_t>> successors() const;
};

/// Direct-dependency edges J1..J4. Throws if a required predecessor is not in
/// the task set. Degree and point count are inferred from the tasks.
DependencyGraph build_dependencies(std::vector<Task> tasks);

/// Convenience: alphabet + dependencies + Foata classes.
DependencyGraph build_task_graph(ElementId element, int degree, int points);

/// Assigns classes 0..p+6 per the class layout and checks them against the
/// graph: every edge must cross classes forward, each non-source task must sit
/// at its longest-path depth, and each source task at depth 0 or immediately
/// before its earliest successor. Throws std::runtime_error on a cycle or a
/// mismatch.
std::vector<int> foata_classes(const DependencyGraph& g);

/// Longest-path depth from the sources, by Kahn's algorithm. Throws on cycles.
std::vector<int> longest_path_depth(const DependencyGraph& g);

std::string export_dot(const DependencyGraph& g);
std::string export_json(const DependencyGraph& g);

struct ScheduleVerdict {
    bool valid = false;
    bool class_monotone = false;
    /// Position of the first task scheduled before one of its predecessors.
    std::optional<std::size_t> first_violation;
};

/// Checks that every task appears after all of its predecessors. Throws if
/// order is not a permutation of the graph's task ids.
ScheduleVerdict validate_schedule(const DependencyGraph& g, std::span<const std::size_t> order);

/// Per-class task counts of an assigned graph.
std::vector<std::size_t> class_sizes(const DependencyGraph& g);

}  // namespace igabench
