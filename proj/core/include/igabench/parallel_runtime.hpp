#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "igabench/assembly.hpp"
#include "igabench/integrators.hpp"
#include "igabench/splines.hpp"
#include "igabench/taskgraph.hpp"

namespace igabench {

enum class Strategy { sequential, over_elements, within_element, combined };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

/// Element distribution for the over-elements strategy.
enum class Schedule { static_chunks, dynamic };

struct RunConfig {
    Method method = Method::sumfact;
    Strategy strategy = Strategy::sequential;
    int workers = 1;
    int elements = 1;  // K
    int degree = 0;    // p
    int repetitions = 1;
    int points_per_direction = 0;  // 0: p+1
    /// Outer workers for the combined strategy; 0 means all workers go to
    /// elements and each element runs on one worker.
    int element_workers = 0;
    Schedule schedule = Schedule::static_chunks;
    /// Cap workers at std::thread::hardware_concurrency (with a warning).
    bool cap_to_hardware = true;
    /// Nonzero: within-element executors deal work in a seeded random order.
    std::uint64_t shuffle_seed = 0;

    void validate() const;
};

/// Fork-join team of a fixed number of threads. The calling thread takes part
/// as worker 0.
class WorkerPool {
public:
    explicit WorkerPool(int workers);
    ~WorkerPool();
    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    [[nodiscard]] int size() const noexcept { return size_; }

    /// Runs job(worker) on every worker and waits for all of them. The first
    /// exception thrown by any worker is rethrown here.
    void run(const std::function<void(int)>& job);

private:
    void worker_loop(int id);

    int size_;
    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(int)>* job_ = nullptr;
    std::uint64_t generation_ = 0;
    int pending_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

struct WithinElementStats {
    std::uint64_t elements = 0;
    std::uint64_t barriers = 0;
    std::uint64_t tasks = 0;
    /// Tasks that started before one of their inputs was complete. Only
    /// counted when recording; always zero for a correct class schedule.
    std::uint64_t intra_class_waits = 0;
    std::uint64_t flops = 0;
};

/// Executes one element at a time on a team of workers. For sum factorization
/// the work follows the Foata classes 0..p+6 with a full barrier between
/// consecutive classes; tasks inside a class are batched per (direction,
/// function) or per function pair and dealt to workers round-robin. The
/// classical method distributes matrix entries over workers.
class WithinElementExecutor {
public:
    WithinElementExecutor(const KnotVector& kv, int points_per_direction, int workers, bool record = false);
    ~WithinElementExecutor();
    WithinElementExecutor(const WithinElementExecutor&) = delete;
    WithinElementExecutor& operator=(const WithinElementExecutor&) = delete;

    ElementMatrix run(ElementId element, Method method);

    [[nodiscard]] const WithinElementStats& stats() const noexcept { return stats_; }
    [[nodiscard]] int workers() const noexcept;

    /// Task ids (TaskIndexer numbering) in completion order for the last
    /// sum-factorization element; empty unless recording.
    [[nodiscard]] const std::vector<std::size_t>& completion_order() const noexcept { return completion_order_; }

    /// Reorders the deal of batches to workers; used by tests to shuffle
    /// execution order. Seed 0 restores round-robin.
    void set_shuffle_seed(std::uint64_t seed) noexcept { shuffle_seed_ = seed; }

private:
    struct State;

    ElementMatrix run_sumfact(ElementId element);
    ElementMatrix run_classical(ElementId element);

    const KnotVector& kv_;
    int points_;
    bool record_;
    std::uint64_t shuffle_seed_ = 0;
    std::unique_ptr<WorkerPool> pool_;
    std::unique_ptr<State> state_;
    WithinElementStats stats_;
    std::vector<std::size_t> completion_order_;
};

/// One-shot convenience wrapper around WithinElementExecutor.
ElementMatrix run_within_element(ElementId element, const KnotVector& kv, Method method, int workers,
                                 int points_per_direction = 0);

struct RunResult {
    GlobalGram gram;
    std::vector<double> seconds;  // one per repetition
    std::uint64_t flops = 0;      // per repetition
    int workers = 1;
    std::vector<std::string> warnings;
    WithinElementStats within;
};

/// Owns worker teams for one integration run at a time.
class Runtime {
public:
    /// Runs the configured integration; the returned matrix is bitwise
    /// identical across strategies and worker counts for a given method.
    RunResult run(const RunConfig& cfg);

private:
    std::atomic<bool> busy_{false};
};

RunResult run_integration(const RunConfig& cfg);

}  // namespace igabench
