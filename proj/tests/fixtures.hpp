// Walkthrough states used across the test suites.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bwa/black_white_array.hpp"

namespace bwa::fixtures {

using Int = std::int32_t;
using Bwa = BlackWhiteArray<Int>;

/// The seven inserts that produce rank 2 = [21,59,67,83], rank 1 = [33,76],
/// rank 0 = [45], total = 7; inserting 52 next yields the full rank-3 merge.
inline const std::vector<Int> kInsertPrelude{83, 67, 59, 21, 76, 33, 45};

inline Bwa insert_walkthrough_before() {
  Bwa b(4, GrowthPolicy::Fixed);
  for (Int v : kInsertPrelude) b.insert(v);
  return b;
}

inline Bwa insert_walkthrough_after() {
  Bwa b = insert_walkthrough_before();
  b.insert(52);
  return b;
}

/// Builds rank 3 = [6,·,·,52,59,67,·,83], rank 2 = [21,77,·,91],
/// rank 1 = [45,82], total = 14 using inserts followed by deletes.
inline const std::vector<Int> kDeletePreludeInserts{6, 10, 20, 52, 59, 67, 70, 83,
                                                    21, 77, 80, 91, 45, 82};
inline const std::vector<Int> kDeletePreludeDeletes{10, 20, 70, 80};

inline Bwa delete_walkthrough_before() {
  Bwa b(4, GrowthPolicy::Fixed);
  for (Int v : kDeletePreludeInserts) b.insert(v);
  for (Int v : kDeletePreludeDeletes) b.erase(v);
  return b;
}

inline Bwa delete_walkthrough_after() {
  Bwa b = delete_walkthrough_before();
  b.erase(59);
  return b;
}

/// White slots of segment `rank`, bottom to top.
template <class B>
std::vector<std::optional<typename B::value_type>> segment(const B& b, unsigned rank) {
  const SegmentRef seg = segment_of_rank(rank);
  const auto w = b.white();
  return {w.begin() + static_cast<std::ptrdiff_t>(seg.start),
          w.begin() + static_cast<std::ptrdiff_t>(seg.end + 1)};
}

inline constexpr std::nullopt_t kVoid = std::nullopt;

}  // namespace bwa::fixtures
