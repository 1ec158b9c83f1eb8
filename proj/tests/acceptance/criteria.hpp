// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "covcat/io.hpp"

namespace covcat::acceptance {

/// Outcome of one criterion: a verdict and a deterministic JSON report.
struct Outcome {
    bool pass = false;
    io::Json report;
};

struct Criterion {
    int id = 0;
    std::string title;
    std::function<Outcome()> run;
};

/// Criteria 1 to 9; determinism (10) is judged by the driver from repeated
/// runs of these.
[[nodiscard]] std::vector<Criterion> criteria();

/// Minimum sizes and limits, pinned here so that the suite cannot drift.
inline constexpr std::size_t kMinEquivalenceCorpus = 25;
inline constexpr std::size_t kMinBaseCategories = 5;
inline constexpr std::size_t kMinPullbackPairs = 15;
inline constexpr std::size_t kMaxSearchObjects = 8;
inline constexpr std::size_t kMinCones = 10;
inline constexpr double kSuiteSeconds = 60.0;

}  // namespace covcat::acceptance
