#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace agboost {

enum class VerifyLevel { Fast, Full };

struct GroupReport {
    std::string name;  ///< module.invariant
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs every invariant group; Fast trims replication counts so the whole
/// suite finishes well under a minute.
std::vector<GroupReport> run_verification(VerifyLevel level, std::uint64_t seed);

}  // namespace agboost
