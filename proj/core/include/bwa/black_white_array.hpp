// bwa::BlackWhiteArray — an ordered dynamic multiset stored in a pair of
// arrays. The white array (length N = 2^k) holds the data in segments of
// rank 0..k-1, segment i covering indices [2^i, 2^(i+1) - 1]. The black
// array (length N/2) is scratch space used while two segments of equal
// rank are merged into the next rank.
//
// The integer `total` counts the slots of all active segments, deleted
// (void) slots included, and its binary form is the segment configuration:
// rank i is active iff bit i of total is set. An insert is therefore a
// binary increment and the merge cascade it triggers is the carry chain.
//
// Deletion replaces a value with a void slot. When a segment of rank j
// falls to half occupancy its live values are demoted to rank j-1, which
// keeps every active segment of rank >= 1 strictly above 50% occupied.
#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bwa {

using Index = std::size_t;

/// A slot of either array: an element, or std::nullopt for a void slot.
template <class T>
using Slot = std::optional<T>;

/// White-array index of a hit, or std::nullopt on a miss.
using SearchResult = std::optional<Index>;

enum class GrowthPolicy { Grow, Fixed };
enum class Side { Min, Max };

/// Lower: smallest stored value strictly greater than the probe.
/// Upper: largest stored value strictly smaller than the probe.
enum class BoundSide { Lower, Upper };

/// Thrown by insert() on a full structure under GrowthPolicy::Fixed.
class CapacityExceeded : public std::length_error {
 public:
  explicit CapacityExceeded(std::size_t capacity)
      : std::length_error("black-white array is full (capacity " +
                          std::to_string(capacity) + ")") {}
};

/// Index range of the segment of a given rank; computed, never stored.
struct SegmentRef {
  unsigned rank = 0;
  Index start = 0;
  Index end = 0;

  [[nodiscard]] constexpr std::size_t size() const noexcept {
    return end - start + 1;
  }
  friend constexpr bool operator==(const SegmentRef&, const SegmentRef&) = default;
};

[[nodiscard]] constexpr SegmentRef segment_of_rank(unsigned rank) noexcept {
  return {rank, Index{1} << rank, (Index{1} << (rank + 1)) - 1};
}

/// Rank of the segment containing `index`: position of its highest set bit.
[[nodiscard]] constexpr unsigned rank_of_index(Index index) noexcept {
  return static_cast<unsigned>(std::bit_width(index)) - 1;
}

/// Number of merges an insert performs when the structure holds `total`
/// slots: the count of trailing one bits.
[[nodiscard]] constexpr unsigned trailing_ones(std::size_t total) noexcept {
  return static_cast<unsigned>(std::countr_one(total));
}

struct Counters {
  std::uint64_t comparisons = 0;
  std::uint64_t moves = 0;
  std::uint64_t merges = 0;
  std::uint64_t demotes = 0;
  std::uint64_t grows = 0;

  friend bool operator==(const Counters&, const Counters&) = default;
};

struct Stats {
  std::size_t len = 0;
  std::size_t slot_count = 0;
  std::vector<double> occupancy;  // per rank; 0 for inactive ranks
  std::size_t capacity = 0;
};

namespace testing {
struct StateAccess;
}

template <class T, class Compare = std::less<T>>
class BlackWhiteArray {
 public:
  using value_type = T;
  using compare_type = Compare;

  explicit BlackWhiteArray(unsigned cap_exp = 10,
                           GrowthPolicy policy = GrowthPolicy::Grow,
                           Compare comp = Compare())
      : comp_(std::move(comp)), policy_(policy) {
    if (cap_exp == 0)
      throw std::invalid_argument("capacity exponent must be at least 1");
    if (cap_exp >= 48)
      throw std::invalid_argument("capacity exponent too large");
    cap_exp_ = cap_exp;
    white_.resize(Index{1} << cap_exp);
    black_.resize(Index{1} << (cap_exp - 1));
    live_.assign(cap_exp, 0);
  }

  // ---- layout -------------------------------------------------------------

  [[nodiscard]] SegmentRef seg_bounds(unsigned rank) const {
    if (rank >= cap_exp_) throw std::out_of_range("rank out of range");
    return segment_of_rank(rank);
  }

  [[nodiscard]] bool is_active(unsigned rank) const noexcept {
    return rank < cap_exp_ && ((total_ >> rank) & 1U) != 0;
  }

  [[nodiscard]] unsigned rank_of(Index index) const {
    if (index == 0 || index >= white_.size())
      throw std::out_of_range("index out of range");
    return rank_of_index(index);
  }

  [[nodiscard]] unsigned cap_exp() const noexcept { return cap_exp_; }
  [[nodiscard]] std::size_t capacity() const noexcept { return white_.size(); }
  [[nodiscard]] std::size_t total() const noexcept { return total_; }
  [[nodiscard]] GrowthPolicy policy() const noexcept { return policy_; }

  [[nodiscard]] std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto v : live_) n += v;
    return n;
  }
  [[nodiscard]] bool empty() const noexcept { return total_ == 0; }

  /// Live (non-void) slot count of the white segment of `rank`.
  [[nodiscard]] std::size_t occupancy(unsigned rank) const {
    return rank < cap_exp_ ? live_[rank] : 0;
  }

  [[nodiscard]] std::span<const Slot<T>> white() const noexcept { return white_; }
  [[nodiscard]] std::span<const Slot<T>> black() const noexcept { return black_; }

  // ---- instrumentation ----------------------------------------------------

  [[nodiscard]] Counters counters() const noexcept {
    return {counters_.comparisons.load(std::memory_order_relaxed),
            counters_.moves.load(std::memory_order_relaxed),
            counters_.merges.load(std::memory_order_relaxed),
            counters_.demotes.load(std::memory_order_relaxed),
            counters_.grows.load(std::memory_order_relaxed)};
  }
  void reset_counters() noexcept { counters_.reset(); }

  [[nodiscard]] Stats stats() const {
    Stats s;
    s.len = size();
    s.slot_count = total_;
    s.capacity = capacity();
    s.occupancy.resize(cap_exp_, 0.0);
    for (unsigned r = 0; r < cap_exp_; ++r)
      if (is_active(r))
        s.occupancy[r] = static_cast<double>(live_[r]) /
                         static_cast<double>(Index{1} << r);
    return s;
  }

  // ---- modifiers ----------------------------------------------------------

  void insert(const T& value) {
    if (total_ == capacity() - 1) {
      if (policy_ == GrowthPolicy::Fixed) throw CapacityExceeded(capacity());
      grow();
    }
    Tally tally(counters_);
    if (!is_active(0)) {
      white_[1] = value;
      live_[0] = 1;
      ++tally.moves;
    } else {
      black_[1] = value;
      ++tally.moves;
      // Carry chain of total + 1: merge upward while the next rank is taken.
      std::size_t carried = 1;
      for (unsigned rank = 0;; ++rank) {
        const bool next_taken = is_active(rank + 1);
        carried = merge_segments(rank, next_taken ? Dest::Black : Dest::White,
                                 tally);
        live_[rank] = 0;
        if (!next_taken) {
          live_[rank + 1] = carried;
          break;
        }
      }
    }
    ++total_;
  }

  /// Removes one occurrence of `value` (the one search() finds).
  SearchResult erase(const T& value) {
    const SearchResult hit = search(value);
    if (hit) erase_at(*hit);
    return hit;
  }

  std::optional<T> extract(Side side) {
    const SearchResult at = extreme_index(side);
    if (!at) return std::nullopt;
    T out = *white_[*at];
    erase_at(*at);
    return out;
  }

  // ---- queries ------------------------------------------------------------

  /// Searches active segments from the highest rank down.
  [[nodiscard]] SearchResult search(const T& value) const {
    Tally tally(counters_);
    for (std::size_t bits = total_; bits != 0;) {
      const unsigned rank = rank_of_index(bits);
      bits &= ~(std::size_t{1} << rank);
      if (auto hit = find_in_segment(value, rank, tally)) return hit;
    }
    return std::nullopt;
  }

  [[nodiscard]] bool contains(const T& value) const {
    return search(value).has_value();
  }

  [[nodiscard]] std::optional<T> extreme(Side side) const {
    const SearchResult at = extreme_index(side);
    if (!at) return std::nullopt;
    return *white_[*at];
  }

  [[nodiscard]] std::optional<T> bound(const T& value, BoundSide side) const {
    Tally tally(counters_);
    std::optional<Index> best;
    for_each_active([&](SegmentRef seg) {
      std::optional<Index> cand;
      if (side == BoundSide::Lower) {
        // first live slot after the last one not greater than value
        const Index le = last_live_where(
            seg.start, seg.end,
            [&](const T& x) { return !less(value, x, tally); });
        cand = next_live(le == 0 ? seg.start - 1 : le, seg.end);
      } else {
        const Index lt = last_live_where(
            seg.start, seg.end, [&](const T& x) { return less(x, value, tally); });
        if (lt != 0) cand = lt;
      }
      if (!cand) return;
      if (!best) {
        best = cand;
      } else if (side == BoundSide::Lower ? less(*white_[*cand], *white_[*best], tally)
                                          : less(*white_[*best], *white_[*cand], tally)) {
        best = cand;
      }
    });
    if (!best) return std::nullopt;
    return *white_[*best];
  }

  /// Every stored x with lo <= x <= hi, ascending, duplicates included.
  [[nodiscard]] std::vector<T> interval(const T& lo, const T& hi) const {
    if (comp_(hi, lo)) throw std::invalid_argument("interval: lo > hi");
    Tally tally(counters_);
    std::vector<Run> runs;
    for_each_active([&](SegmentRef seg) {
      const Index below = last_live_where(
          seg.start, seg.end, [&](const T& x) { return less(x, lo, tally); });
      const Index last = last_live_where(
          seg.start, seg.end, [&](const T& x) { return !less(hi, x, tally); });
      const Index first = below == 0 ? seg.start : below + 1;
      if (last != 0 && first <= last) runs.push_back({first, last});
    });
    return merge_runs(std::move(runs), tally);
  }

  /// All stored values ascending; a multiway merge over active segments.
  [[nodiscard]] std::vector<T> sorted() const {
    Tally tally(counters_);
    std::vector<Run> runs;
    for_each_active([&](SegmentRef seg) { runs.push_back({seg.start, seg.end}); });
    return merge_runs(std::move(runs), tally);
  }

  /// Checks every structural invariant; returns one message per violation.
  [[nodiscard]] std::vector<std::string> validate() const {
    std::vector<std::string> errs;
    auto report = [&](auto&&... parts) {
      std::ostringstream os;
      (os << ... << parts);
      errs.push_back(os.str());
    };
    if (white_.size() != (Index{1} << cap_exp_))
      report("white length ", white_.size(), " != 2^", cap_exp_);
    if (white_.size() != 2 * black_.size())
      report("white length ", white_.size(), " != 2 * black length ",
             black_.size());
    if (live_.size() != cap_exp_)
      report("occupancy vector length ", live_.size(), " != ", cap_exp_);
    if (total_ >= white_.size())
      report("total ", total_, " exceeds capacity ", white_.size() - 1);

    std::size_t recount_total = 0;
    std::size_t len = 0;
    const unsigned ranks = std::min<unsigned>(cap_exp_, live_.size());
    for (unsigned r = 0; r < ranks; ++r) {
      if (live_[r] > 0) recount_total += Index{1} << r;
      len += live_[r];
      if (!is_active(r)) {
        if (live_[r] != 0)
          report("inactive rank ", r, " has occupancy ", live_[r]);
        continue;
      }
      const SegmentRef seg = segment_of_rank(r);
      std::size_t live = 0;
      const T* prev = nullptr;
      bool ordered = true;
      for (Index i = seg.start; i <= seg.end; ++i) {
        if (!white_[i]) continue;
        ++live;
        if (prev && comp_(*white_[i], *prev)) ordered = false;
        prev = &*white_[i];
      }
      if (!ordered) report("rank ", r, " is not sorted");
      if (live != live_[r])
        report("rank ", r, " holds ", live, " values but occupancy says ",
               live_[r]);
      // strictly above half; for rank 0 this means the single slot is live
      if (2 * live_[r] <= seg.size())
        report("rank ", r, " occupancy ", live_[r], "/", seg.size(),
               " is not above 50%");
    }
    if (recount_total != total_)
      report("total/active mismatch: total = ", total_,
             " but occupied segments account for ", recount_total);
    if (len > total_) report("len ", len, " exceeds total ", total_);
    return errs;
  }

 private:
  friend struct testing::StateAccess;

  enum class Dest { Black, White };

  struct Run {
    Index next;
    Index end;
  };

  struct AtomicCounters {
    std::atomic<std::uint64_t> comparisons{0}, moves{0}, merges{0}, demotes{0},
        grows{0};

    AtomicCounters() = default;
    AtomicCounters(const AtomicCounters& o) { *this = o; }
    AtomicCounters& operator=(const AtomicCounters& o) {
      comparisons.store(o.comparisons.load(std::memory_order_relaxed),
                        std::memory_order_relaxed);
      moves.store(o.moves.load(std::memory_order_relaxed), std::memory_order_relaxed);
      merges.store(o.merges.load(std::memory_order_relaxed),
                   std::memory_order_relaxed);
      demotes.store(o.demotes.load(std::memory_order_relaxed),
                    std::memory_order_relaxed);
      grows.store(o.grows.load(std::memory_order_relaxed), std::memory_order_relaxed);
      return *this;
    }
    void reset() noexcept {
      for (auto* c : {&comparisons, &moves, &merges, &demotes, &grows})
        c->store(0, std::memory_order_relaxed);
    }
  };

  // Per-operation counts, published once when the operation finishes so
  // that concurrent readers only touch the shared counters once each.
  struct Tally {
    explicit Tally(AtomicCounters& sink) : sink(sink) {}
    Tally(const Tally&) = delete;
    Tally& operator=(const Tally&) = delete;
    ~Tally() {
      constexpr auto relaxed = std::memory_order_relaxed;
      if (comparisons) sink.comparisons.fetch_add(comparisons, relaxed);
      if (moves) sink.moves.fetch_add(moves, relaxed);
      if (merges) sink.merges.fetch_add(merges, relaxed);
      if (demotes) sink.demotes.fetch_add(demotes, relaxed);
    }
    AtomicCounters& sink;
    std::uint64_t comparisons = 0, moves = 0, merges = 0, demotes = 0;
  };

  bool less(const T& a, const T& b, Tally& tally) const {
    ++tally.comparisons;
    return comp_(a, b);
  }

  template <class Fn>
  void for_each_active(Fn&& fn) const {
    for (std::size_t bits = total_; bits != 0; bits &= bits - 1)
      fn(segment_of_rank(static_cast<unsigned>(std::countr_zero(bits))));
  }

  void grow() {
    white_.resize(white_.size() * 2);
    black_.resize(black_.size() * 2);
    live_.push_back(0);
    ++cap_exp_;
    counters_.grows.fetch_add(1, std::memory_order_relaxed);
  }

  // Merges the black and white segments of `rank` into the segment of
  // rank + 1 of `dest`. Void slots are skipped; the destination is packed
  // from its bottom and padded with voids. On ties the black value goes
  // first. Returns the number of live values written.
  std::size_t merge_segments(unsigned rank, Dest dest, Tally& tally) {
    const SegmentRef src = segment_of_rank(rank);
    std::vector<Slot<T>>& out = dest == Dest::Black ? black_ : white_;
    Index b = src.start, w = src.start;
    Index k = src.start * 2;
    const Index k_end = src.start * 4 - 1;
    auto skip_void = [&](const std::vector<Slot<T>>& arr, Index& i) {
      while (i <= src.end && !arr[i]) ++i;
    };
    skip_void(black_, b);
    skip_void(white_, w);
    while (b <= src.end && w <= src.end) {
      if (!less(*white_[w], *black_[b], tally)) {
        out[k++] = std::move(black_[b++]);
        skip_void(black_, b);
      } else {
        out[k++] = std::move(white_[w++]);
        skip_void(white_, w);
      }
    }
    for (; b <= src.end; skip_void(black_, ++b)) out[k++] = std::move(black_[b]);
    for (; w <= src.end; skip_void(white_, ++w)) out[k++] = std::move(white_[w]);
    const std::size_t written = k - src.start * 2;
    for (; k <= k_end; ++k) out[k].reset();
    tally.moves += src.start * 2;
    ++tally.merges;
    return written;
  }

  void erase_at(Index at) {
    Tally tally(counters_);
    const unsigned rank = rank_of_index(at);
    white_[at].reset();
    ++tally.moves;
    --live_[rank];
    if (rank == 0) {
      total_ -= 1;
      return;
    }
    const std::size_t half = Index{1} << (rank - 1);
    if (live_[rank] > half) return;
    demote(rank, tally);
  }

  // Moves the live values of a half-empty segment one rank down. If the
  // lower rank is active they land in the black array and are merged with
  // the lower white segment back into this rank; otherwise they fill the
  // lower white segment exactly.
  void demote(unsigned rank, Tally& tally) {
    ++tally.demotes;
    const unsigned lower = rank - 1;
    const std::size_t half = Index{1} << lower;
    const bool lower_active = is_active(lower);
    std::vector<Slot<T>>& dst = lower_active ? black_ : white_;
    const SegmentRef seg = segment_of_rank(rank);
    Index d = half;
    for (Index s = seg.start; s <= seg.end; ++s)
      if (white_[s]) dst[d++] = std::move(white_[s]);
    tally.moves += half;
    if (lower_active) {
      live_[rank] = merge_segments(lower, Dest::White, tally);
      live_[lower] = 0;
    } else {
      live_[lower] = half;
      live_[rank] = 0;
    }
    // clears bit `lower` (case A) or borrows bit `rank` into it (case B)
    total_ -= half;
  }

  // Nearest live slot to `mid` within [lo, hi], probing mid, mid-1, mid+1,
  // mid-2, ... ; 0 when the range holds only voids.
  Index nearest_live(Index mid, Index lo, Index hi) const {
    if (white_[mid]) return mid;
    for (Index d = 1;; ++d) {
      const bool down = mid - lo >= d;
      const bool up = hi - mid >= d;
      if (down && white_[mid - d]) return mid - d;
      if (up && white_[mid + d]) return mid + d;
      if (!down && !up) return 0;
    }
  }

  // Largest live index in [lo, hi] whose value satisfies `pred`, where pred
  // holds on a prefix of the sorted live values; 0 if none does.
  template <class Pred>
  Index last_live_where(Index lo, Index hi, Pred&& pred) const {
    Index best = 0;
    while (lo <= hi) {
      const Index p = nearest_live(lo + (hi - lo) / 2, lo, hi);
      if (p == 0) break;
      if (pred(*white_[p])) {
        best = p;
        lo = p + 1;
      } else {
        hi = p - 1;
      }
    }
    return best;
  }

  std::optional<Index> next_live(Index after, Index end) const {
    for (Index i = after + 1; i <= end; ++i)
      if (white_[i]) return i;
    return std::nullopt;
  }

  SearchResult find_in_segment(const T& value, unsigned rank, Tally& tally) const {
    const SegmentRef seg = segment_of_rank(rank);
    const Index at = last_live_where(
        seg.start, seg.end, [&](const T& x) { return !less(value, x, tally); });
    if (at != 0 && !less(*white_[at], value, tally)) return at;
    return std::nullopt;
  }

  SearchResult extreme_index(Side side) const {
    Tally tally(counters_);
    SearchResult best;
    for_each_active([&](SegmentRef seg) {
      Index at = 0;
      if (side == Side::Min) {
        for (Index i = seg.start; i <= seg.end && at == 0; ++i)
          if (white_[i]) at = i;
      } else {
        for (Index i = seg.end; i >= seg.start && at == 0; --i)
          if (white_[i]) at = i;
      }
      if (at == 0) return;
      if (!best || (side == Side::Min ? less(*white_[at], *white_[*best], tally)
                                      : less(*white_[*best], *white_[at], tally)))
        best = at;
    });
    return best;
  }

  std::vector<T> merge_runs(std::vector<Run> runs, Tally& tally) const {
    std::vector<T> out;
    std::size_t expect = 0;
    for (auto& run : runs) {
      while (run.next <= run.end && !white_[run.next]) ++run.next;
      expect += run.end - run.next + 1;
    }
    std::erase_if(runs, [](const Run& r) { return r.next > r.end; });
    out.reserve(expect);
    if (runs.size() == 1) {
      for (Index i = runs[0].next; i <= runs[0].end; ++i)
        if (white_[i]) out.push_back(*white_[i]);
      return out;
    }
    // min-heap over run heads
    auto heap_greater = [&](const Run& a, const Run& b) {
      return less(*white_[b.next], *white_[a.next], tally);
    };
    std::priority_queue<Run, std::vector<Run>, decltype(heap_greater)> heads(
        heap_greater, std::move(runs));
    while (!heads.empty()) {
      Run r = heads.top();
      heads.pop();
      out.push_back(*white_[r.next]);
      do {
        ++r.next;
      } while (r.next <= r.end && !white_[r.next]);
      if (r.next <= r.end) heads.push(r);
    }
    return out;
  }

  std::vector<Slot<T>> white_;
  std::vector<Slot<T>> black_;
  std::vector<std::size_t> live_;  // occupancy vector V
  std::size_t total_ = 0;
  unsigned cap_exp_ = 0;
  Compare comp_;
  GrowthPolicy policy_;
  mutable AtomicCounters counters_;
};

}  // namespace bwa
