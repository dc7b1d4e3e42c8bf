#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> threads;
    if (const char* env = std::getenv("IGA_BENCH_THREADS"); env != nullptr && *env != '\0') {
        threads = env;
    }
    return igabench::cli::run(args, std::cout, std::cerr, threads);
}
