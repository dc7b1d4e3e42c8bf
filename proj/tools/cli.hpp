#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace igabench::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_mismatch = 1,
    exit_usage = 2,
    exit_failure = 3,
};

/// Parses a comma-separated list of positive worker counts ("1,2,4").
std::vector<int> parse_thread_list(const std::string& text);

/// Full command line; out receives the primary output, err diagnostics.
/// threads_env is the value of IGA_BENCH_THREADS, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& threads_env = std::nullopt);

}  // namespace igabench::cli
