#include "igabench/parallel_runtime.hpp"

#include <algorithm>
#include <array>
#include <barrier>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace igabench {

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::sequential:
            return "sequential";
        case Strategy::over_elements:
            return "over_elements";
        case Strategy::within_element:
            return "within_element";
        case Strategy::combined:
            return "combined";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    for (const auto s : {Strategy::sequential, Strategy::over_elements, Strategy::within_element,
                         Strategy::combined}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

void RunConfig::validate() const {
    if (workers < 1) {
        throw std::invalid_argument("worker count must be at least 1");
    }
    if (elements < 1) {
        throw std::invalid_argument("mesh size must be at least 1");
    }
    if (degree < 0) {
        throw std::invalid_argument("degree must be non-negative");
    }
    if (repetitions < 1) {
        throw std::invalid_argument("repetitions must be at least 1");
    }
    if (points_per_direction < 0) {
        throw std::invalid_argument("quadrature point count must be positive");
    }
    if (element_workers < 0 || (element_workers > 0 && workers % element_workers != 0)) {
        throw std::invalid_argument("element workers must divide the worker count");
    }
}

// ---------------------------------------------------------------------------
// WorkerPool

WorkerPool::WorkerPool(int workers) : size_(workers) {
    if (workers < 1) {
        throw std::invalid_argument("worker pool needs at least one worker");
    }
    threads_.reserve(static_cast<std::size_t>(workers - 1));
    try {
        for (int id = 1; id < workers; ++id) {
            threads_.emplace_back([this, id] { worker_loop(id); });
        }
    } catch (...) {
        {
            std::lock_guard lock(mutex_);
            stop_ = true;
        }
        start_cv_.notify_all();
        for (auto& t : threads_) {
            t.join();
        }
        throw std::runtime_error("failed to start worker threads");
    }
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    start_cv_.notify_all();
    for (auto& t : threads_) {
        t.join();
    }
}

void WorkerPool::worker_loop(int id) {
    std::uint64_t seen = 0;
    for (;;) {
        const std::function<void(int)>* job = nullptr;
        {
            std::unique_lock lock(mutex_);
            start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) {
                return;
            }
            seen = generation_;
            job = job_;
        }
        try {
            (*job)(id);
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_) {
                error_ = std::current_exception();
            }
        }
        {
            std::lock_guard lock(mutex_);
            if (--pending_ == 0) {
                done_cv_.notify_one();
            }
        }
    }
}

void WorkerPool::run(const std::function<void(int)>& job) {
    {
        std::lock_guard lock(mutex_);
        job_ = &job;
        pending_ = size_ - 1;
        error_ = nullptr;
        ++generation_;
    }
    start_cv_.notify_all();
    try {
        job(0);
    } catch (...) {
        std::lock_guard lock(mutex_);
        if (!error_) {
            error_ = std::current_exception();
        }
    }
    std::unique_lock lock(mutex_);
    done_cv_.wait(lock, [&] { return pending_ == 0; });
    job_ = nullptr;
    if (error_) {
        std::rethrow_exception(std::exchange(error_, nullptr));
    }
}

// ---------------------------------------------------------------------------
// WithinElementExecutor

namespace {

struct BarrierCounter {
    std::uint64_t* count;
    void operator()() noexcept { ++*count; }
};

// Deals units [0, count) to workers: round-robin, or a seeded permutation.
std::vector<std::size_t> deal_order(std::size_t count, std::uint64_t seed, int cls) {
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (seed != 0) {
        std::mt19937_64 rng(seed * 1315423911u + static_cast<std::uint64_t>(cls));
        std::shuffle(order.begin(), order.end(), rng);
    }
    return order;
}

}  // namespace

struct WithinElementExecutor::State {
    State(int degree, int points, int workers)
        : p(degree),
          q(degree + 1),
          Q(points),
          P(points * points * points),
          pairs(static_cast<std::size_t>(q * q * q) * static_cast<std::size_t>(q * q * q + 1) / 2),
          cox(static_cast<std::size_t>(q * 3 * q * P), 0.0),
          jac(static_cast<std::size_t>(P), 0.0),
          prod(pairs * static_cast<std::size_t>(P), 0.0),
          barrier(workers, BarrierCounter{&barrier_phases}),
          logs(static_cast<std::size_t>(workers)),
          worker_flops(static_cast<std::size_t>(workers), 0),
          worker_tasks(static_cast<std::size_t>(workers), 0) {
        for (auto& r : red) {
            r.assign(pairs, 0.0);
        }
        point_coords.reserve(static_cast<std::size_t>(P));
        for (int a = 0; a < Q; ++a) {
            for (int b = 0; b < Q; ++b) {
                for (int c = 0; c < Q; ++c) {
                    point_coords.push_back({a, b, c});
                }
            }
        }
        const int n = q * q * q;
        offsets.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            offsets.push_back(local_offsets(i, degree));
        }
        pair_rows.reserve(pairs);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c <= r; ++c) {
                pair_rows.emplace_back(r, c);
            }
        }
    }

    [[nodiscard]] std::size_t cox_at(int order, int direction, int f, int point) const {
        return ((static_cast<std::size_t>(order) * 3 + static_cast<std::size_t>(direction - 1)) * q +
                static_cast<std::size_t>(f)) *
                   static_cast<std::size_t>(P) +
               static_cast<std::size_t>(point);
    }

    /// Point whose coordinate along axis is t and zero elsewhere.
    [[nodiscard]] int line_point(int axis, int t) const {
        std::array<int, 3> c{0, 0, 0};
        c[static_cast<std::size_t>(axis)] = t;
        return (c[0] * Q + c[1]) * Q + c[2];
    }

    int p;
    int q;
    int Q;
    int P;
    std::size_t pairs;
    std::vector<double> cox;
    std::vector<double> jac;
    std::vector<double> prod;
    std::array<std::vector<double>, 3> red;
    std::vector<std::array<int, 3>> point_coords;
    std::vector<MultiIndex> offsets;
    std::vector<std::pair<int, int>> pair_rows;

    std::uint64_t barrier_phases = 0;
    std::barrier<BarrierCounter> barrier;

    std::atomic<std::uint64_t> seq{0};
    std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> logs;
    std::vector<std::atomic<std::uint8_t>> done;
    std::atomic<std::uint64_t> waits{0};
    std::vector<std::uint64_t> worker_flops;
    std::vector<std::uint64_t> worker_tasks;
};

WithinElementExecutor::WithinElementExecutor(const KnotVector& kv, int points_per_direction, int workers,
                                             bool record)
    : kv_(kv),
      points_(points_per_direction > 0 ? points_per_direction : kv.degree() + 1),
      record_(record),
      pool_(std::make_unique<WorkerPool>(workers)),
      state_(std::make_unique<State>(kv.degree(), points_, workers)) {}

WithinElementExecutor::~WithinElementExecutor() = default;

int WithinElementExecutor::workers() const noexcept { return pool_->size(); }

ElementMatrix WithinElementExecutor::run(ElementId element, Method method) {
    return method == Method::classical ? run_classical(element) : run_sumfact(element);
}

ElementMatrix WithinElementExecutor::run_classical(ElementId element) {
    const auto rule = gauss_rule(kv_.degree(), kv_.elements(), element, points_);
    const auto table = tabulate_basis(kv_, rule, element);
    const auto weights = detail::tensor_weights(rule);
    auto& s = *state_;
    const int n = s.q * s.q * s.q;
    ElementMatrix m(element, n);
    const auto order = deal_order(s.pairs, shuffle_seed_, 0);
    const int workers = pool_->size();
    std::fill(s.worker_flops.begin(), s.worker_flops.end(), 0);
    pool_->run([&](int w) {
        std::uint64_t flops = 0;
        for (std::size_t u = static_cast<std::size_t>(w); u < order.size(); u += static_cast<std::size_t>(workers)) {
            const auto [r, c] = s.pair_rows[order[u]];
            m(r, c) = detail::classical_entry(table, weights, rule.jacobian, r, c, &flops);
        }
        s.worker_flops[static_cast<std::size_t>(w)] = flops;
    });
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < r; ++c) {
            m(c, r) = m(r, c);
        }
    }
    m.flops = 2 * weights.size() +
              std::accumulate(s.worker_flops.begin(), s.worker_flops.end(), std::uint64_t{0});
    ++stats_.elements;
    stats_.tasks += s.pairs;
    stats_.flops += m.flops;
    return m;
}

ElementMatrix WithinElementExecutor::run_sumfact(ElementId element) {
    auto& s = *state_;
    const int p = s.p;
    const int q = s.q;
    const int P = s.P;
    const auto rule = gauss_rule(p, kv_.elements(), element, points_);
    const auto& w = rule.reference_weights;
    const auto knots = kv_.knots();
    const TaskIndexer index(element, p, P);
    const int workers = pool_->size();
    const int classes = p + 7;

    if (record_) {
        if (s.done.size() != index.size()) {
            s.done = std::vector<std::atomic<std::uint8_t>>(index.size());
        }
        for (auto& d : s.done) {
            d.store(0, std::memory_order_relaxed);
        }
        for (auto& log : s.logs) {
            log.clear();
        }
        s.seq.store(0);
        s.waits.store(0);
    }
    std::fill(s.worker_flops.begin(), s.worker_flops.end(), 0);
    std::fill(s.worker_tasks.begin(), s.worker_tasks.end(), 0);
    const std::uint64_t barriers_before = s.barrier_phases;

    // Work units per class. Cox classes: (direction, function); class p adds
    // one jacobian unit. Product and reduce classes: one unit per pair.
    const std::size_t cox_units = static_cast<std::size_t>(3 * q);
    std::vector<std::vector<std::size_t>> deals(static_cast<std::size_t>(classes));
    for (int c = 0; c < classes; ++c) {
        std::size_t count = 0;
        if (c < p) {
            count = cox_units;
        } else if (c == p) {
            count = cox_units + 1;
        } else {
            count = s.pairs;
        }
        deals[static_cast<std::size_t>(c)] = deal_order(count, shuffle_seed_, c);
    }

    const auto coordinate = [&](int direction, int point) {
        const int axis = 3 - direction;
        return rule.abscissae[static_cast<std::size_t>(axis)]
                             [static_cast<std::size_t>(s.point_coords[static_cast<std::size_t>(point)]
                                                                      [static_cast<std::size_t>(axis)])];
    };

    const auto complete = [&](int worker, std::size_t id) {
        if (!record_) {
            return;
        }
        s.done[id].store(1, std::memory_order_release);
        s.logs[static_cast<std::size_t>(worker)].emplace_back(s.seq.fetch_add(1), id);
    };
    const auto require = [&](std::size_t id) {
        if (record_ && s.done[id].load(std::memory_order_acquire) == 0) {
            s.waits.fetch_add(1);
        }
    };

    const auto run_cox_unit = [&](int worker, int order, std::size_t unit) {
        const int direction = static_cast<int>(unit / static_cast<std::size_t>(q)) + 1;
        const int f = static_cast<int>(unit % static_cast<std::size_t>(q));
        const int fg = index.direction_origin(direction) + f;
        for (int n = 0; n < P; ++n) {
            const double x = coordinate(direction, n);
            double value = 0.0;
            if (order == 0) {
                value = eval_basis_order0(kv_, fg, x);
            } else {
                require(index.cox(order - 1, direction, fg, n));
                const double left = s.cox[s.cox_at(order - 1, direction, f, n)];
                double right = 0.0;
                if (f < p) {
                    require(index.cox(order - 1, direction, fg + 1, n));
                    right = s.cox[s.cox_at(order - 1, direction, f + 1, n)];
                }
                value = detail::cox_step(knots, fg, order, x, left, right);
                s.worker_flops[static_cast<std::size_t>(worker)] += 9;
            }
            s.cox[s.cox_at(order, direction, f, n)] = value;
            complete(worker, index.cox(order, direction, fg, n));
        }
        s.worker_tasks[static_cast<std::size_t>(worker)] += static_cast<std::uint64_t>(P);
    };

    const auto run_jacobian_unit = [&](int worker) {
        for (int n = 0; n < P; ++n) {
            s.jac[static_cast<std::size_t>(n)] = rule.jacobian;
            complete(worker, index.jacobian(n));
        }
        s.worker_tasks[static_cast<std::size_t>(worker)] += static_cast<std::uint64_t>(P);
    };

    const auto run_product_unit = [&](int worker, int direction, std::size_t pair) {
        const int axis = 3 - direction;
        const auto [row, col] = s.pair_rows[pair];
        const int a = s.offsets[static_cast<std::size_t>(row)][static_cast<std::size_t>(axis)];
        const int b = s.offsets[static_cast<std::size_t>(col)][static_cast<std::size_t>(axis)];
        const int origin = index.direction_origin(direction);
        for (int n = 0; n < P; ++n) {
            const auto t = static_cast<std::size_t>(
                s.point_coords[static_cast<std::size_t>(n)][static_cast<std::size_t>(axis)]);
            const double ba = s.cox[s.cox_at(p, direction, a, n)];
            const double bb = s.cox[s.cox_at(p, direction, b, n)];
            require(index.cox(p, direction, origin + a, n));
            require(index.cox(p, direction, origin + b, n));
            double value = 0.0;
            if (direction == 1) {
                require(index.jacobian(n));
                value = detail::first_contraction_term(ba, bb, w[t], s.jac[static_cast<std::size_t>(n)]);
            } else {
                require(index.reduce(direction - 1, pair));
                value = detail::next_contraction_term(ba, bb, s.red[static_cast<std::size_t>(direction - 2)][pair],
                                                      w[t]);
            }
            s.prod[pair * static_cast<std::size_t>(P) + static_cast<std::size_t>(n)] = value;
            complete(worker, index.product(direction, pair, n));
        }
        s.worker_flops[static_cast<std::size_t>(worker)] += 3 * static_cast<std::uint64_t>(P);
        s.worker_tasks[static_cast<std::size_t>(worker)] += static_cast<std::uint64_t>(P);
    };

    const auto run_reduce_unit = [&](int worker, int direction, std::size_t pair) {
        const int axis = 3 - direction;
        if (record_) {
            for (int n = 0; n < P; ++n) {
                require(index.product(direction, pair, n));
            }
        }
        // Partial sums run along the contracted axis only; products at the
        // other points of the full index n carry identical values.
        double acc = 0.0;
        for (int t = 0; t < s.Q; ++t) {
            acc += s.prod[pair * static_cast<std::size_t>(P) + static_cast<std::size_t>(s.line_point(axis, t))];
        }
        s.red[static_cast<std::size_t>(direction - 1)][pair] = acc;
        s.worker_flops[static_cast<std::size_t>(worker)] += static_cast<std::uint64_t>(s.Q);
        s.worker_tasks[static_cast<std::size_t>(worker)] += 1;
        complete(worker, index.reduce(direction, pair));
    };

    pool_->run([&](int worker) {
        for (int c = 0; c < classes; ++c) {
            const auto& deal = deals[static_cast<std::size_t>(c)];
            for (std::size_t u = static_cast<std::size_t>(worker); u < deal.size();
                 u += static_cast<std::size_t>(workers)) {
                const std::size_t unit = deal[u];
                if (c <= p) {
                    if (unit == cox_units) {
                        run_jacobian_unit(worker);
                    } else {
                        run_cox_unit(worker, c, unit);
                    }
                } else {
                    const int k = c - p;  // 1..6
                    const int direction = (k + 1) / 2;
                    if (k % 2 == 1) {
                        run_product_unit(worker, direction, unit);
                    } else {
                        run_reduce_unit(worker, direction, unit);
                    }
                }
            }
            if (c + 1 < classes) {
                s.barrier.arrive_and_wait();
            }
        }
    });

    const int n = q * q * q;
    ElementMatrix m(element, n);
    for (std::size_t pair = 0; pair < s.pairs; ++pair) {
        const auto [r, c] = s.pair_rows[pair];
        m(r, c) = s.red[2][pair];
        m(c, r) = s.red[2][pair];
    }
    m.flops = std::accumulate(s.worker_flops.begin(), s.worker_flops.end(), std::uint64_t{0});

    ++stats_.elements;
    stats_.barriers += s.barrier_phases - barriers_before;
    stats_.tasks += std::accumulate(s.worker_tasks.begin(), s.worker_tasks.end(), std::uint64_t{0});
    stats_.flops += m.flops;
    if (record_) {
        stats_.intra_class_waits += s.waits.load();
        std::vector<std::pair<std::uint64_t, std::size_t>> merged;
        for (const auto& log : s.logs) {
            merged.insert(merged.end(), log.begin(), log.end());
        }
        std::sort(merged.begin(), merged.end());
        completion_order_.clear();
        completion_order_.reserve(merged.size());
        for (const auto& entry : merged) {
            completion_order_.push_back(entry.second);
        }
    }
    return m;
}

ElementMatrix run_within_element(ElementId element, const KnotVector& kv, Method method, int workers,
                                 int points_per_direction) {
    WithinElementExecutor exec(kv, points_per_direction, workers);
    return exec.run(element, method);
}

// ---------------------------------------------------------------------------
// Runtime

namespace {

using Clock = std::chrono::steady_clock;

// Element matrices staged per batch are bounded by this many bytes.
constexpr std::size_t kStagingBytes = std::size_t{64} << 20;

struct Chunk {
    std::size_t begin;
    std::size_t end;
};

Chunk static_chunk(std::size_t count, int parts, int part) {
    const auto n = static_cast<std::size_t>(parts);
    const auto k = static_cast<std::size_t>(part);
    return {count * k / n, count * (k + 1) / n};
}

class BusyGuard {
public:
    explicit BusyGuard(std::atomic<bool>& flag) : flag_(flag) {
        if (flag_.exchange(true)) {
            throw std::logic_error("runtime is already executing a run");
        }
    }
    ~BusyGuard() { flag_.store(false); }
    BusyGuard(const BusyGuard&) = delete;
    BusyGuard& operator=(const BusyGuard&) = delete;

private:
    std::atomic<bool>& flag_;
};

ElementMatrix integrate_one(Method method, const KnotVector& kv, ElementId e, int points, SumFactBuffers& buffers) {
    const auto rule = gauss_rule(kv.degree(), kv.elements(), e, points);
    const auto table = tabulate_basis(kv, rule, e);
    return method == Method::classical ? integrate_element_classical(e, table, rule)
                                       : integrate_element_sumfact(e, table, rule, buffers);
}

}  // namespace

RunResult Runtime::run(const RunConfig& cfg) {
    BusyGuard guard(busy_);
    cfg.validate();

    const int K = cfg.elements;
    const int p = cfg.degree;
    const int points = cfg.points_per_direction > 0 ? cfg.points_per_direction : p + 1;
    const KnotVector kv(K, p);
    const auto elements = element_list(K);

    RunResult result{GlobalGram(K, p), {}, 0, cfg.workers, {}, {}};
    int workers = cfg.workers;
    const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (cfg.cap_to_hardware && workers > hw) {
        result.warnings.push_back("requested " + std::to_string(workers) + " workers but only " +
                                  std::to_string(hw) + " hardware threads are available; using " +
                                  std::to_string(hw));
        workers = hw;
    }
    int element_workers = cfg.element_workers > 0 ? cfg.element_workers : workers;
    if (cfg.strategy == Strategy::combined && workers % element_workers != 0) {
        element_workers = workers;
    }
    const int inner_workers = cfg.strategy == Strategy::combined ? workers / element_workers : workers;
    result.workers = workers;

    const int q = p + 1;
    const std::size_t matrix_bytes = static_cast<std::size_t>(q * q * q) * static_cast<std::size_t>(q * q * q) * 8;
    const std::size_t batch =
        std::clamp<std::size_t>(kStagingBytes / std::max<std::size_t>(matrix_bytes, 1),
                                static_cast<std::size_t>(workers), elements.size());

    // Teams are created before timing starts.
    std::unique_ptr<WorkerPool> pool;
    std::unique_ptr<WithinElementExecutor> within;
    std::vector<std::unique_ptr<WithinElementExecutor>> inner;
    std::vector<SumFactBuffers> buffers;
    switch (cfg.strategy) {
        case Strategy::sequential:
            buffers.emplace_back(p, points);
            break;
        case Strategy::over_elements:
            pool = std::make_unique<WorkerPool>(workers);
            for (int w = 0; w < workers; ++w) {
                buffers.emplace_back(p, points);
            }
            break;
        case Strategy::within_element:
            within = std::make_unique<WithinElementExecutor>(kv, points, workers);
            within->set_shuffle_seed(cfg.shuffle_seed);
            break;
        case Strategy::combined:
            pool = std::make_unique<WorkerPool>(element_workers);
            for (int w = 0; w < element_workers; ++w) {
                inner.push_back(std::make_unique<WithinElementExecutor>(kv, points, inner_workers));
                inner.back()->set_shuffle_seed(cfg.shuffle_seed);
            }
            break;
    }

    std::vector<ElementMatrix> staging;
    std::vector<std::uint64_t> worker_flops(static_cast<std::size_t>(workers), 0);

    for (int rep = 0; rep < cfg.repetitions; ++rep) {
        result.gram.clear_values();
        std::uint64_t flops = 0;
        const auto t0 = Clock::now();
        switch (cfg.strategy) {
            case Strategy::sequential:
                for (const auto e : elements) {
                    const auto m = integrate_one(cfg.method, kv, e, points, buffers.front());
                    flops += m.flops;
                    result.gram.scatter(m);
                }
                break;
            case Strategy::within_element:
                for (const auto e : elements) {
                    const auto m = within->run(e, cfg.method);
                    flops += m.flops;
                    result.gram.scatter(m);
                }
                break;
            case Strategy::over_elements:
            case Strategy::combined: {
                const int team = pool->size();
                for (std::size_t first = 0; first < elements.size(); first += batch) {
                    const std::size_t count = std::min(batch, elements.size() - first);
                    staging.resize(count);
                    std::fill(worker_flops.begin(), worker_flops.end(), 0);
                    std::atomic<std::size_t> next{0};
                    pool->run([&](int w) {
                        const auto integrate = [&](std::size_t i) {
                            const auto e = elements[first + i];
                            staging[i] = cfg.strategy == Strategy::combined
                                             ? inner[static_cast<std::size_t>(w)]->run(e, cfg.method)
                                             : integrate_one(cfg.method, kv, e, points,
                                                             buffers[static_cast<std::size_t>(w)]);
                            worker_flops[static_cast<std::size_t>(w)] += staging[i].flops;
                        };
                        if (cfg.schedule == Schedule::dynamic) {
                            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                                integrate(i);
                            }
                        } else {
                            const auto chunk = static_chunk(count, team, w);
                            for (std::size_t i = chunk.begin; i < chunk.end; ++i) {
                                integrate(i);
                            }
                        }
                    });
                    // Ordered reduction: each worker owns a row range and adds
                    // the batch's elements in lexicographic order.
                    pool->run([&](int w) {
                        const auto rows = static_chunk(result.gram.rows(), team, w);
                        for (const auto& m : staging) {
                            result.gram.scatter(m, rows.begin, rows.end);
                        }
                    });
                    flops += std::accumulate(worker_flops.begin(), worker_flops.end(), std::uint64_t{0});
                }
                break;
            }
        }
        const auto t1 = Clock::now();
        result.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
        result.flops = flops;
    }

    if (within) {
        result.within = within->stats();
    }
    for (const auto& ex : inner) {
        const auto& s = ex->stats();
        result.within.elements += s.elements;
        result.within.barriers += s.barriers;
        result.within.tasks += s.tasks;
        result.within.flops += s.flops;
        result.within.intra_class_waits += s.intra_class_waits;
    }
    return result;
}

RunResult run_integration(const RunConfig& cfg) {
    Runtime runtime;
    return runtime.run(cfg);
}

}  // namespace igabench
