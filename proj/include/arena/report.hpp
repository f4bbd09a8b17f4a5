#pragma once

#include <filesystem>
#include <optional>

#include "arena/analysis.hpp"

namespace arena {

// Post-run diagnostics assembled from a run directory: judge agreement by
// judging round, per-judge kappa against the committee majority, and (when a
// reference ranking is supplied) rank correlation of the leaderboard.
json build_report(const std::filesystem::path& run_dir,
                  const std::optional<std::vector<std::string>>& reference);

}  // namespace arena
