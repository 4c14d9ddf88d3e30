#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tdual::suite {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

inline constexpr int kCriterionCount = 10;

/// Runs one acceptance criterion (1..10). All randomness derives from seed.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Runs every criterion in order, reporting each result as it completes.
std::vector<CriterionResult> run_all(std::uint64_t seed, const std::function<void(const CriterionResult&)>& progress = {});

} // namespace tdual::suite
