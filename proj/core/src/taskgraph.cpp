#include "igabench/taskgraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace igabench {

std::string_view to_string(TaskKind kind) {
    switch (kind) {
        case TaskKind::cox:
            return "cox";
        case TaskKind::jacobian:
            return "jacobian";
        case TaskKind::product:
            return "product";
        case TaskKind::reduce:
            return "reduce";
    }
    return "unknown";
}

TaskIndexer::TaskIndexer(ElementId element, int degree, int points)
    : element_(element), degree_(degree), points_(points), q_(degree + 1) {
    if (degree < 0) {
        throw std::invalid_argument("degree must be non-negative");
    }
    if (points < 1) {
        throw std::invalid_argument("task graph needs at least one quadrature point");
    }
    const auto q = static_cast<std::size_t>(q_);
    const auto n = q * q * q;
    const auto P = static_cast<std::size_t>(points);
    pairs_ = n * (n + 1) / 2;
    cox_count_ = q * 3 * q * P;
    per_direction_ = pairs_ * P + pairs_;
    total_ = cox_count_ + P + 3 * per_direction_;
}

std::pair<int, int> TaskIndexer::pair_from_index(std::size_t index) {
    auto row = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(index) + 1.0) - 1.0) / 2.0);
    while (row * (row + 1) / 2 > index) {
        --row;
    }
    while ((row + 1) * (row + 2) / 2 <= index) {
        ++row;
    }
    return {static_cast<int>(row), static_cast<int>(index - row * (row + 1) / 2)};
}

int TaskIndexer::direction_origin(int direction) const {
    switch (direction) {
        case 1:
            return element_.k;
        case 2:
            return element_.j;
        case 3:
            return element_.i;
        default:
            throw std::out_of_range("direction must be 1, 2 or 3");
    }
}

std::size_t TaskIndexer::cox(int order, int direction, int function, int point) const {
    const int f = function - direction_origin(direction);
    if (order < 0 || order > degree_ || f < 0 || f > degree_ || point < 0 || point >= points_) {
        throw std::out_of_range("cox task index out of range");
    }
    return ((static_cast<std::size_t>(order) * 3 + static_cast<std::size_t>(direction - 1)) * q_ +
            static_cast<std::size_t>(f)) *
               static_cast<std::size_t>(points_) +
           static_cast<std::size_t>(point);
}

std::size_t TaskIndexer::jacobian(int point) const {
    if (point < 0 || point >= points_) {
        throw std::out_of_range("jacobian task index out of range");
    }
    return cox_count_ + static_cast<std::size_t>(point);
}

std::size_t TaskIndexer::product(int direction, std::size_t pair, int point) const {
    if (direction < 1 || direction > 3 || pair >= pairs_ || point < 0 || point >= points_) {
        throw std::out_of_range("product task index out of range");
    }
    const auto P = static_cast<std::size_t>(points_);
    return cox_count_ + P + static_cast<std::size_t>(direction - 1) * per_direction_ + pair * P +
           static_cast<std::size_t>(point);
}

std::size_t TaskIndexer::reduce(int direction, std::size_t pair) const {
    if (direction < 1 || direction > 3 || pair >= pairs_) {
        throw std::out_of_range("reduce task index out of range");
    }
    const auto P = static_cast<std::size_t>(points_);
    return cox_count_ + P + static_cast<std::size_t>(direction - 1) * per_direction_ + pairs_ * P + pair;
}

Task TaskIndexer::task(std::size_t id) const {
    if (id >= total_) {
        throw std::out_of_range("task id out of range");
    }
    const auto P = static_cast<std::size_t>(points_);
    const auto q = static_cast<std::size_t>(q_);
    Task t;
    t.element = element_;
    if (id < cox_count_) {
        t.kind = TaskKind::cox;
        t.point = static_cast<int>(id % P);
        auto rest = id / P;
        const auto f = static_cast<int>(rest % q);
        rest /= q;
        t.direction = static_cast<int>(rest % 3) + 1;
        t.order = static_cast<int>(rest / 3);
        t.function = direction_origin(t.direction) + f;
        return t;
    }
    id -= cox_count_;
    if (id < P) {
        t.kind = TaskKind::jacobian;
        t.point = static_cast<int>(id);
        return t;
    }
    id -= P;
    t.direction = static_cast<int>(id / per_direction_) + 1;
    id %= per_direction_;
    std::size_t pair = 0;
    if (id < pairs_ * P) {
        t.kind = TaskKind::product;
        pair = id / P;
        t.point = static_cast<int>(id % P);
    } else {
        t.kind = TaskKind::reduce;
        pair = id - pairs_ * P;
    }
    const auto [row, col] = pair_from_index(pair);
    t.row = row;
    t.col = col;
    return t;
}

int TaskIndexer::layout_class(const Task& t) const {
    switch (t.kind) {
        case TaskKind::cox:
            return t.order;
        case TaskKind::jacobian:
            return degree_;
        case TaskKind::product:
            return degree_ + 2 * t.direction - 1;
        case TaskKind::reduce:
            return degree_ + 2 * t.direction;
    }
    return -1;
}

std::vector<Task> build_alphabet(ElementId element, int degree, int points) {
    const TaskIndexer index(element, degree, points);
    std::vector<Task> tasks;
    tasks.reserve(index.size());
    for (std::size_t id = 0; id < index.size(); ++id) {
        tasks.push_back(index.task(id));
    }
    return tasks;
}

namespace {

struct TaskHash {
    std::size_t operator()(const Task& t) const noexcept {
        std::size_t h = static_cast<std::size_t>(t.kind);
        for (const int v : {t.element.i, t.element.j, t.element.k, t.direction, t.order, t.function, t.row, t.col,
                            t.point}) {
            h = h * 1000003u ^ static_cast<std::size_t>(v + 1);
        }
        return h;
    }
};

}  // namespace

std::size_t DependencyGraph::class_count() const {
    if (foata_class.empty()) {
        return 0;
    }
    return static_cast<std::size_t>(*std::max_element(foata_class.begin(), foata_class.end())) + 1;
}

std::vector<std::vector<std::size_t>> DependencyGraph::predecessors() const {
    std::vector<std::vector<std::size_t>> out(tasks.size());
    for (const auto& [u, v] : edges) {
        out[v].push_back(u);
    }
    return out;
}

std::vector<std::vector<std::size_t>> DependencyGraph::successors() const {
    std::vector<std::vector<std::size_t>> out(tasks.size());
    for (const auto& [u, v] : edges) {
        out[u].push_back(v);
    }
    return out;
}

DependencyGraph build_dependencies(std::vector<Task> tasks) {
    DependencyGraph g;
    if (tasks.empty()) {
        return g;
    }
    g.element = tasks.front().element;
    int max_point = 0;
    for (const auto& t : tasks) {
        if (t.kind == TaskKind::cox) {
            g.degree = std::max(g.degree, t.order);
        }
        if (t.kind != TaskKind::reduce) {
            max_point = std::max(max_point, t.point);
        }
    }
    g.points = max_point + 1;

    std::unordered_map<Task, std::size_t, TaskHash> ids;
    ids.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!ids.emplace(tasks[i], i).second) {
            throw std::invalid_argument("duplicate task in alphabet");
        }
    }
    const auto lookup = [&ids](const Task& t) {
        const auto it = ids.find(t);
        if (it == ids.end()) {
            throw std::invalid_argument("dependency references a task missing from the alphabet: " +
                                        std::string(to_string(t.kind)));
        }
        return it->second;
    };
    const auto find = [&ids](const Task& t) -> std::optional<std::size_t> {
        const auto it = ids.find(t);
        if (it == ids.end()) {
            return std::nullopt;
        }
        return it->second;
    };

    const int p = g.degree;
    const TaskIndexer index(g.element, p, g.points);
    for (std::size_t v = 0; v < tasks.size(); ++v) {
        const Task& t = tasks[v];
        switch (t.kind) {
            case TaskKind::cox: {
                if (t.order == 0) {
                    break;
                }
                Task src = t;
                src.order = t.order - 1;
                g.edges.emplace_back(lookup(src), v);
                // The f+1 input at the top of the fixed range is outside the
                // alphabet; its value vanishes on the element.
                src.function = t.function + 1;
                if (auto u = find(src)) {
                    g.edges.emplace_back(*u, v);
                }
                break;
            }
            case TaskKind::jacobian:
                break;
            case TaskKind::product: {
                const int axis = 3 - t.direction;
                const int origin = index.direction_origin(t.direction);
                const int a = origin + local_offsets(t.row, p)[static_cast<std::size_t>(axis)];
                const int b = origin + local_offsets(t.col, p)[static_cast<std::size_t>(axis)];
                Task cox{TaskKind::cox, t.element, t.direction, p, a, 0, 0, t.point};
                g.edges.emplace_back(lookup(cox), v);
                if (b != a) {
                    cox.function = b;
                    g.edges.emplace_back(lookup(cox), v);
                }
                if (t.direction == 1) {
                    g.edges.emplace_back(lookup(Task{TaskKind::jacobian, t.element, 0, 0, 0, 0, 0, t.point}), v);
                } else {
                    g.edges.emplace_back(
                        lookup(Task{TaskKind::reduce, t.element, t.direction - 1, 0, 0, t.row, t.col, 0}), v);
                }
                break;
            }
            case TaskKind::reduce: {
                for (int n = 0; n < g.points; ++n) {
                    g.edges.emplace_back(
                        lookup(Task{TaskKind::product, t.element, t.direction, 0, 0, t.row, t.col, n}), v);
                }
                break;
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    g.tasks = std::move(tasks);
    return g;
}

std::vector<int> longest_path_depth(const DependencyGraph& g) {
    const auto succ = g.successors();
    std::vector<std::size_t> indegree(g.tasks.size(), 0);
    for (const auto& e : g.edges) {
        ++indegree[e.second];
    }
    std::vector<int> depth(g.tasks.size(), 0);
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < g.tasks.size(); ++v) {
        if (indegree[v] == 0) {
            ready.push_back(v);
        }
    }
    std::size_t visited = 0;
    while (!ready.empty()) {
        const auto u = ready.front();
        ready.pop_front();
        ++visited;
        for (const auto v : succ[u]) {
            depth[v] = std::max(depth[v], depth[u] + 1);
            if (--indegree[v] == 0) {
                ready.push_back(v);
            }
        }
    }
    if (visited != g.tasks.size()) {
        throw std::runtime_error("dependency graph has a cycle");
    }
    return depth;
}

std::vector<int> foata_classes(const DependencyGraph& g) {
    const auto depth = longest_path_depth(g);
    if (g.tasks.empty()) {
        return {};
    }
    const TaskIndexer index(g.element, g.degree, g.points);
    std::vector<int> cls(g.tasks.size());
    for (std::size_t v = 0; v < g.tasks.size(); ++v) {
        cls[v] = index.layout_class(g.tasks[v]);
    }
    std::vector<int> earliest_successor(g.tasks.size(), std::numeric_limits<int>::max());
    std::vector<bool> has_pred(g.tasks.size(), false);
    for (const auto& [u, v] : g.edges) {
        if (cls[u] >= cls[v]) {
            throw std::runtime_error("edge does not cross Foata classes forward");
        }
        earliest_successor[u] = std::min(earliest_successor[u], cls[v]);
        has_pred[v] = true;
    }
    for (std::size_t v = 0; v < g.tasks.size(); ++v) {
        const bool ok = has_pred[v] ? cls[v] == depth[v]
                                    : (cls[v] == depth[v] || cls[v] == earliest_successor[v] - 1);
        if (!ok) {
            throw std::runtime_error("class layout disagrees with longest-path depth for a " +
                                     std::string(to_string(g.tasks[v].kind)) + " task");
        }
    }
    return cls;
}

DependencyGraph build_task_graph(ElementId element, int degree, int points) {
    auto g = build_dependencies(build_alphabet(element, degree, points));
    g.degree = degree;
    g.points = points;
    g.foata_class = foata_classes(g);
    return g;
}

std::vector<std::size_t> class_sizes(const DependencyGraph& g) {
    std::vector<std::size_t> sizes(g.class_count(), 0);
    for (const int c : g.foata_class) {
        ++sizes[static_cast<std::size_t>(c)];
    }
    return sizes;
}

namespace {

std::string task_label(const Task& t) {
    std::ostringstream os;
    os << to_string(t.kind);
    switch (t.kind) {
        case TaskKind::cox:
            os << " d" << t.direction << " r" << t.order << " f" << t.function << " n" << t.point;
            break;
        case TaskKind::jacobian:
            os << " n" << t.point;
            break;
        case TaskKind::product:
            os << " d" << t.direction << " (" << t.row << "," << t.col << ") n" << t.point;
            break;
        case TaskKind::reduce:
            os << " d" << t.direction << " (" << t.row << "," << t.col << ")";
            break;
    }
    return os.str();
}

}  // namespace

std::string export_dot(const DependencyGraph& g) {
    std::ostringstream os;
    os << "digraph taskgraph {\n";
    if (!g.tasks.empty()) {
        os << "  rankdir=TB;\n";
        os << "  node [shape=box, fontsize=10];\n";
        std::vector<std::vector<std::size_t>> by_class(std::max<std::size_t>(g.class_count(), 1));
        for (std::size_t v = 0; v < g.tasks.size(); ++v) {
            const auto c = g.foata_class.empty() ? 0 : static_cast<std::size_t>(g.foata_class[v]);
            by_class[c].push_back(v);
        }
        for (std::size_t c = 0; c < by_class.size(); ++c) {
            os << "  subgraph class_" << c << " {\n    rank=same;\n";
            for (const auto v : by_class[c]) {
                os << "    t" << v << " [label=\"" << task_label(g.tasks[v]) << "\"];\n";
            }
            os << "  }\n";
        }
        for (const auto& [u, v] : g.edges) {
            os << "  t" << u << " -> t" << v << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string export_json(const DependencyGraph& g) {
    using nlohmann::json;
    json tasks = json::array();
    for (std::size_t v = 0; v < g.tasks.size(); ++v) {
        const auto& t = g.tasks[v];
        json indices = json::object();
        switch (t.kind) {
            case TaskKind::cox:
                indices = {{"direction", t.direction}, {"order", t.order}, {"function", t.function},
                           {"point", t.point}};
                break;
            case TaskKind::jacobian:
                indices = {{"point", t.point}};
                break;
            case TaskKind::product:
                indices = {{"direction", t.direction}, {"row", t.row}, {"col", t.col}, {"point", t.point}};
                break;
            case TaskKind::reduce:
                indices = {{"direction", t.direction}, {"row", t.row}, {"col", t.col}};
                break;
        }
        indices["element"] = {t.element.i, t.element.j, t.element.k};
        tasks.push_back({{"id", v},
                         {"kind", std::string(to_string(t.kind))},
                         {"indices", indices},
                         {"class", g.foata_class.empty() ? -1 : g.foata_class[v]}});
    }
    json edges = json::array();
    for (const auto& [u, v] : g.edges) {
        edges.push_back({u, v});
    }
    json doc = {{"degree", g.degree}, {"points", g.points}, {"tasks", tasks}, {"edges", edges}};
    return doc.dump(1);
}

ScheduleVerdict validate_schedule(const DependencyGraph& g, std::span<const std::size_t> order) {
    if (order.size() != g.tasks.size()) {
        throw std::invalid_argument("schedule is not a permutation of the graph's tasks");
    }
    std::vector<std::size_t> position(g.tasks.size(), std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto v = order[i];
        if (v >= g.tasks.size() || position[v] != std::numeric_limits<std::size_t>::max()) {
            throw std::invalid_argument("schedule is not a permutation of the graph's tasks");
        }
        position[v] = i;
    }
    ScheduleVerdict verdict;
    verdict.valid = true;
    for (const auto& [u, v] : g.edges) {
        if (position[u] > position[v]) {
            verdict.valid = false;
            if (!verdict.first_violation || position[v] < *verdict.first_violation) {
                verdict.first_violation = position[v];
            }
        }
    }
    verdict.class_monotone = !g.foata_class.empty();
    for (std::size_t i = 1; i < order.size() && verdict.class_monotone; ++i) {
        if (g.foata_class[order[i]] < g.foata_class[order[i - 1]]) {
            verdict.class_monotone = false;
        }
    }
    return verdict;
}

}  // namespace igabench
