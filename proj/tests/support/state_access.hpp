// Test-only access to BlackWhiteArray internals: raw slot writes, the
// internal merge/demote steps, and fault injection.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bwa/black_white_array.hpp"

namespace bwa::testing {

struct StateAccess {
  template <class B>
  static auto& white(B& b) { return b.white_; }
  template <class B>
  static auto& black(B& b) { return b.black_; }
  template <class B>
  static std::size_t& total(B& b) { return b.total_; }
  template <class B>
  static std::vector<std::size_t>& live(B& b) { return b.live_; }

  enum class Dest { Black, White };

  /// Returns the live count written into the destination segment.
  template <class B>
  static std::size_t merge(B& b, unsigned rank, Dest dest) {
    typename B::Tally tally(b.counters_);
    return b.merge_segments(rank, dest == Dest::Black ? B::Dest::Black : B::Dest::White,
                            tally);
  }

  template <class B>
  static void demote(B& b, unsigned rank) {
    typename B::Tally tally(b.counters_);
    b.demote(rank, tally);
  }
};

}  // namespace bwa::testing
