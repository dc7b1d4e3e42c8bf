#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "igabench/parallel_runtime.hpp"

namespace igabench {

inline constexpr std::string_view artifact_version = "1.0.0";

/// Timing samples of one (method, strategy, p, K, workers) configuration.
struct BenchRecord {
    RunConfig config;
    std::vector<double> times;  // seconds, one per repetition
    std::uint64_t flops = 0;    // per repetition

    /// Throws std::invalid_argument if times is empty or holds a nonpositive value.
    void validate() const;
    /// Summary statistic used for speedups.
    [[nodiscard]] double min() const;
    [[nodiscard]] double mean() const;
    /// Sample standard deviation; 0 for a single repetition.
    [[nodiscard]] double stddev() const;
};

double speedup(double t1, double t_nu);

struct Efficiency {
    double value = 0.0;
    bool superlinear = false;  // value > 1
};

Efficiency efficiency(double speedup, int workers);

/// Parallel fraction from a speedup S measured on nu >= 2 workers.
double amdahl_fraction(int workers, double speedup);

/// Asymptotic speedup 1/(1-P). P = 1 gives +infinity; P outside [0,1] throws.
double amdahl_limit(double fraction);

double combined_limit(double inner_limit, double outer_limit);

struct AmdahlEstimate {
    int nu = 0;
    double speedup = 0.0;
    double fraction = 0.0;
    /// 1/(1-P); computed from the formula even when out of model.
    double limit = 0.0;
    bool out_of_model = false;  // P outside [0,1]
};

AmdahlEstimate estimate_amdahl(int workers, double speedup);

enum class Quantity { flops, time };

/// Least-squares slope of log(value) against log(p+1). Needs at least four
/// distinct degrees.
double fit_loglog_slope(std::span<const std::pair<int, double>> samples);
double fit_complexity_slope(std::span<const BenchRecord> records, Quantity quantity);

// Bench CSV: a '#' metadata line, a header row, then one row per repetition.
inline constexpr std::string_view bench_csv_header = "method,strategy,p,K,threads,rep,seconds,flops";

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records);
/// Groups rows into records by (method, strategy, p, K, threads) in order of
/// first appearance. Throws std::runtime_error on malformed input.
std::vector<BenchRecord> read_bench_csv(std::istream& in);

/// One row of an Amdahl report, per (method, strategy, p, K, nu >= 2).
struct AmdahlRow {
    Method method = Method::sumfact;
    Strategy strategy = Strategy::sequential;
    int degree = 0;
    int elements = 0;
    AmdahlEstimate estimate;
    /// Product of the inside-element and over-elements limits at the largest
    /// worker counts, filled on the row that completes the pair.
    std::optional<double> combined;
};

/// Speedups relative to the single-worker record of the same configuration,
/// or to the sequential record when none exists.
std::vector<AmdahlRow> amdahl_report(std::span<const BenchRecord> records);

}  // namespace igabench
