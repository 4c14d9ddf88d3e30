#include "suite.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 0;
    int failed = 0;
    tdual::suite::run_all(seed, [&](const tdual::suite::CriterionResult& r) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << ' ' << r.name << ": " << r.detail << std::endl;
        failed += r.pass ? 0 : 1;
    });
    std::cout << (tdual::suite::kCriterionCount - failed) << '/' << tdual::suite::kCriterionCount
              << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
