#include "igabench/scaling_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace igabench {

void BenchRecord::validate() const {
    if (times.empty()) {
        throw std::invalid_argument("bench record has no timing samples");
    }
    for (const double t : times) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw std::invalid_argument("bench record has a nonpositive time");
        }
    }
}

double BenchRecord::min() const {
    validate();
    return *std::min_element(times.begin(), times.end());
}

double BenchRecord::mean() const {
    validate();
    return std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
}

double BenchRecord::stddev() const {
    const double m = mean();
    if (times.size() < 2) {
        return 0.0;
    }
    double ss = 0.0;
    for (const double t : times) {
        ss += (t - m) * (t - m);
    }
    return std::sqrt(ss / static_cast<double>(times.size() - 1));
}

double speedup(double t1, double t_nu) {
    if (!(t1 > 0.0) || !(t_nu > 0.0)) {
        throw std::invalid_argument("speedup needs positive times");
    }
    return t1 / t_nu;
}

Efficiency efficiency(double s, int workers) {
    if (workers < 1) {
        throw std::invalid_argument("efficiency needs at least one worker");
    }
    const double e = s / workers;
    return {e, e > 1.0};
}

double amdahl_fraction(int workers, double s) {
    if (workers < 2) {
        throw std::invalid_argument("parallel fraction is undefined for fewer than two workers");
    }
    if (!(s > 0.0)) {
        throw std::invalid_argument("speedup must be positive");
    }
    const double nu = workers;
    return (nu / s - nu) / (1.0 - nu);
}

double amdahl_limit(double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("parallel fraction outside [0,1]");
    }
    if (fraction == 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / (1.0 - fraction);
}

double combined_limit(double inner_limit, double outer_limit) {
    if (!(inner_limit >= 1.0) || !(outer_limit >= 1.0)) {
        throw std::invalid_argument("speedup limits must be at least 1");
    }
    return inner_limit * outer_limit;
}

AmdahlEstimate estimate_amdahl(int workers, double s) {
    AmdahlEstimate est;
    est.nu = workers;
    est.speedup = s;
    est.fraction = amdahl_fraction(workers, s);
    est.out_of_model = est.fraction < 0.0 || est.fraction > 1.0;
    est.limit = est.fraction == 1.0 ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - est.fraction);
    return est;
}

double fit_loglog_slope(std::span<const std::pair<int, double>> samples) {
    std::set<int> degrees;
    for (const auto& [p, v] : samples) {
        if (p < 0 || !(v > 0.0)) {
            throw std::invalid_argument("slope fit needs p >= 0 and positive values");
        }
        degrees.insert(p);
    }
    if (degrees.size() < 4) {
        throw std::invalid_argument("slope fit needs at least four distinct degrees");
    }
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& [p, v] : samples) {
        sx += std::log(p + 1.0);
        sy += std::log(v);
    }
    const auto n = static_cast<double>(samples.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& [p, v] : samples) {
        const double dx = std::log(p + 1.0) - mx;
        sxy += dx * (std::log(v) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

double fit_complexity_slope(std::span<const BenchRecord> records, Quantity quantity) {
    std::vector<std::pair<int, double>> samples;
    samples.reserve(records.size());
    for (const auto& r : records) {
        const double v = quantity == Quantity::flops ? static_cast<double>(r.flops) : r.min();
        samples.emplace_back(r.config.degree, v);
    }
    return fit_loglog_slope(samples);
}

namespace {

template <typename T, typename F>
std::string joined(std::span<const BenchRecord> records, F&& field) {
    std::vector<T> seen;
    for (const auto& r : records) {
        const T v = field(r);
        if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
            seen.push_back(v);
        }
    }
    std::ostringstream s;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        s << (i ? ";" : "") << seen[i];
    }
    return s.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream s(line);
    while (std::getline(s, field, sep)) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line) {
    std::istringstream s(text);
    T value{};
    s >> value;
    if (s.fail() || !s.eof()) {
        throw std::runtime_error("bench CSV line " + std::to_string(line) + ": bad number '" + text + "'");
    }
    return value;
}

}  // namespace

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records) {
    out << "# igabench " << artifact_version
        << " method=" << joined<std::string>(records, [](const BenchRecord& r) { return std::string(to_string(r.config.method)); })
        << " p=" << joined<int>(records, [](const BenchRecord& r) { return r.config.degree; })
        << " K=" << joined<int>(records, [](const BenchRecord& r) { return r.config.elements; })
        << " threads=" << joined<int>(records, [](const BenchRecord& r) { return r.config.workers; })
        << " repetitions=" << joined<int>(records, [](const BenchRecord& r) { return r.config.repetitions; }) << '\n';
    out << bench_csv_header << '\n';
    const auto precision = out.precision(9);
    for (const auto& r : records) {
        for (std::size_t rep = 0; rep < r.times.size(); ++rep) {
            out << to_string(r.config.method) << ',' << to_string(r.config.strategy) << ',' << r.config.degree
                << ',' << r.config.elements << ',' << r.config.workers << ',' << rep << ',' << r.times[rep] << ','
                << r.flops << '\n';
        }
    }
    out.precision(precision);
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
    std::vector<BenchRecord> records;
    std::map<std::tuple<Method, Strategy, int, int, int>, std::size_t> slot;
    std::string line;
    std::size_t number = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header) {
            if (line != bench_csv_header) {
                throw std::runtime_error("bench CSV: unexpected header '" + line + "'");
            }
            header = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 8) {
            throw std::runtime_error("bench CSV line " + std::to_string(number) + ": expected 8 fields");
        }
        RunConfig cfg;
        try {
            cfg.method = parse_method(f[0]);
            cfg.strategy = parse_strategy(f[1]);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("bench CSV line " + std::to_string(number) + ": " + e.what());
        }
        cfg.degree = parse_number<int>(f[2], number);
        cfg.elements = parse_number<int>(f[3], number);
        cfg.workers = parse_number<int>(f[4], number);
        const double seconds = parse_number<double>(f[6], number);
        const auto flops = parse_number<std::uint64_t>(f[7], number);
        const auto key = std::make_tuple(cfg.method, cfg.strategy, cfg.degree, cfg.elements, cfg.workers);
        auto it = slot.find(key);
        if (it == slot.end()) {
            it = slot.emplace(key, records.size()).first;
            records.push_back({cfg, {}, flops});
        }
        auto& r = records[it->second];
        r.times.push_back(seconds);
        r.config.repetitions = static_cast<int>(r.times.size());
    }
    if (!header) {
        throw std::runtime_error("bench CSV: missing header row");
    }
    for (const auto& r : records) {
        r.validate();
    }
    return records;
}

std::vector<AmdahlRow> amdahl_report(std::span<const BenchRecord> records) {
    const auto find = [&](Method m, Strategy s, int p, int K, int nu) -> const BenchRecord* {
        for (const auto& r : records) {
            if (r.config.method == m && r.config.strategy == s && r.config.degree == p && r.config.elements == K &&
                r.config.workers == nu) {
                return &r;
            }
        }
        return nullptr;
    };

    std::vector<AmdahlRow> rows;
    for (const auto& r : records) {
        const auto& c = r.config;
        if (c.workers < 2) {
            continue;
        }
        const BenchRecord* base = find(c.method, c.strategy, c.degree, c.elements, 1);
        if (base == nullptr) {
            base = find(c.method, Strategy::sequential, c.degree, c.elements, 1);
        }
        if (base == nullptr) {
            continue;
        }
        AmdahlRow row;
        row.method = c.method;
        row.strategy = c.strategy;
        row.degree = c.degree;
        row.elements = c.elements;
        row.estimate = estimate_amdahl(c.workers, speedup(base->min(), r.min()));
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const AmdahlRow& a, const AmdahlRow& b) {
        return std::tie(a.method, a.degree, a.elements, a.strategy, a.estimate.nu) <
               std::tie(b.method, b.degree, b.elements, b.strategy, b.estimate.nu);
    });

    // Combined column: inner limit (within element) times outer limit (over
    // elements), each at its largest measured worker count.
    const auto largest = [&](const AmdahlRow& key, Strategy s) -> AmdahlRow* {
        AmdahlRow* best = nullptr;
        for (auto& row : rows) {
            if (row.method == key.method && row.degree == key.degree && row.elements == key.elements &&
                row.strategy == s && (best == nullptr || row.estimate.nu > best->estimate.nu)) {
                best = &row;
            }
        }
        return best;
    };
    for (auto& row : rows) {
        if (row.strategy != Strategy::over_elements) {
            continue;
        }
        AmdahlRow* outer = largest(row, Strategy::over_elements);
        AmdahlRow* inner = largest(row, Strategy::within_element);
        if (outer != &row || inner == nullptr || outer->estimate.out_of_model || inner->estimate.out_of_model) {
            continue;
        }
        row.combined = combined_limit(inner->estimate.limit, outer->estimate.limit);
    }
    return rows;
}

}  // namespace igabench
