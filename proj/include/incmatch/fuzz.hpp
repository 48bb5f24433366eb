#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace incmatch {

struct FuzzOptions {
  std::uint64_t seed = 1;
  std::size_t seeds_per_config = 6;
  std::size_t random_patterns = 6;
  unsigned threads = 1;
  bool reduction = true;
};

struct FuzzReport {
  std::size_t graphs = 0;
  std::size_t patterns = 0;
  std::size_t cases = 0;
  std::size_t count_mismatches = 0;
  std::size_t invalid_plans = 0;
  std::uint64_t removed_edge_reads = 0;
  std::uint64_t shortcut_checks = 0;
  std::uint64_t shortcut_mismatches = 0;
  std::uint64_t trail_failures = 0;
  std::uint64_t total_embeddings = 0;
  std::vector<std::string> failures;  // first few, human readable

  bool ok() const noexcept {
    return count_mismatches == 0 && invalid_plans == 0 && removed_edge_reads == 0 && shortcut_mismatches == 0 &&
           trail_failures == 0;
  }
};

// Engine against oracle over the random corpus, with shadow enumeration of
// shortcut leaves and trail checksums switched on.
FuzzReport run_fuzz(const FuzzOptions& options);

}  // namespace incmatch
