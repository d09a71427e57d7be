// Model-based testing kit: a reference sorted multiset, a seeded operation
// generator, and a runner that replays one operation sequence against both
// the reference and a structure under test.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bwa/black_white_array.hpp"

namespace bwa::oracle {

using Element = std::int32_t;

enum class OpKind { Insert, Search, Delete, ExtractMin, ExtractMax, Bound, Interval };

[[nodiscard]] const char* to_string(OpKind kind) noexcept;

/// One generated operation. `value` is the operand; Interval uses
/// [value, hi] and Bound uses `side`.
struct OpRecord {
  OpKind kind = OpKind::Insert;
  Element value = 0;
  Element hi = 0;
  BoundSide side = BoundSide::Lower;

  friend bool operator==(const OpRecord&, const OpRecord&) = default;
};

[[nodiscard]] std::string to_string(const OpRecord& op);

/// Relative weights per operation kind.
struct OpMix {
  double insert = 0;
  double search = 0;
  double erase = 0;
  double extract_min = 0;
  double extract_max = 0;
  double bound = 0;
  double interval = 0;

  static OpMix insert_only() { return {.insert = 1}; }
  /// 50/25/25 insert/search/delete.
  static OpMix standard() { return {.insert = 50, .search = 25, .erase = 25}; }
  /// Every kind, insert-heavy so the structure keeps growing.
  static OpMix all_kinds() {
    return {.insert = 40, .search = 15, .erase = 15, .extract_min = 5,
            .extract_max = 5, .bound = 10, .interval = 10};
  }
};

/// Deterministic for a given argument tuple. Search and Delete operands
/// come from previously inserted values with probability `hit_ratio`.
/// Throws std::invalid_argument on negative or all-zero weights, or a
/// hit ratio outside [0, 1].
[[nodiscard]] std::vector<OpRecord> generate_ops(std::uint64_t seed, std::size_t n,
                                                 const OpMix& mix, double hit_ratio);

class ReferenceModel {
 public:
  void insert(Element v) { items_.insert(v); }
  [[nodiscard]] bool contains(Element v) const { return items_.contains(v); }
  bool erase_one(Element v);
  std::optional<Element> extract(Side side);
  [[nodiscard]] std::optional<Element> extreme(Side side) const;
  [[nodiscard]] std::optional<Element> bound(Element v, BoundSide side) const;
  [[nodiscard]] std::vector<Element> interval(Element lo, Element hi) const;
  [[nodiscard]] std::vector<Element> sorted() const { return {items_.begin(), items_.end()}; }
  [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }

 private:
  std::multiset<Element> items_;
};

struct Divergence {
  std::size_t step = 0;  // index into the op sequence; == size for the final drain
  OpRecord op;
  std::string expected;
  std::string actual;
};

struct Verdict {
  std::size_t steps = 0;
  std::optional<Divergence> divergence;

  [[nodiscard]] bool ok() const noexcept { return !divergence.has_value(); }
};

[[nodiscard]] std::string describe(const Verdict& verdict);

namespace detail {

template <class T>
std::string show(const std::optional<T>& v) {
  if (!v) return "none";
  std::ostringstream os;
  os << *v;
  return os.str();
}

template <class T>
std::string show(const std::vector<T>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

inline std::string show(bool hit) { return hit ? "hit" : "miss"; }

inline std::string show(const std::vector<std::string>& violations) {
  std::string out = "invariant violation:";
  for (const auto& v : violations) out += " " + v + ";";
  return out;
}

}  // namespace detail

/// Replays `ops` on `subject` and on a fresh ReferenceModel. After every
/// step the observable result, both extremes and subject.validate() are
/// checked; the first mismatch is returned. Search is compared by hit/miss
/// only since the model has no notion of array indices.
template <class Structure>
Verdict run_equivalence(Structure& subject, std::span<const OpRecord> ops) {
  using detail::show;
  ReferenceModel model;
  Verdict verdict;
  auto diverge = [&](std::size_t step, const OpRecord& op, std::string expected,
                     std::string actual) {
    verdict.divergence = Divergence{step, op, std::move(expected), std::move(actual)};
  };

  for (std::size_t step = 0; step < ops.size(); ++step) {
    const OpRecord& op = ops[step];
    verdict.steps = step + 1;
    switch (op.kind) {
      case OpKind::Insert:
        model.insert(op.value);
        subject.insert(op.value);
        break;
      case OpKind::Search: {
        const bool want = model.contains(op.value);
        const bool got = subject.search(op.value).has_value();
        if (want != got) return diverge(step, op, show(want), show(got)), verdict;
        break;
      }
      case OpKind::Delete: {
        const bool want = model.erase_one(op.value);
        const bool got = subject.erase(op.value).has_value();
        if (want != got) return diverge(step, op, show(want), show(got)), verdict;
        break;
      }
      case OpKind::ExtractMin:
      case OpKind::ExtractMax: {
        const Side side = op.kind == OpKind::ExtractMin ? Side::Min : Side::Max;
        const auto want = model.extract(side);
        const auto got = subject.extract(side);
        if (want != got) return diverge(step, op, show(want), show(got)), verdict;
        break;
      }
      case OpKind::Bound: {
        const auto want = model.bound(op.value, op.side);
        const auto got = subject.bound(op.value, op.side);
        if (want != got) return diverge(step, op, show(want), show(got)), verdict;
        break;
      }
      case OpKind::Interval: {
        const auto want = model.interval(op.value, op.hi);
        const auto got = subject.interval(op.value, op.hi);
        if (want != got) return diverge(step, op, show(want), show(got)), verdict;
        break;
      }
    }
    for (Side side : {Side::Min, Side::Max}) {
      const auto want = model.extreme(side);
      const auto got = subject.extreme(side);
      if (want != got)
        return diverge(step, op, "extreme " + show(want), "extreme " + show(got)),
               verdict;
    }
    if (auto violations = subject.validate(); !violations.empty())
      return diverge(step, op, "no invariant violations", show(violations)), verdict;
  }

  const auto want = model.sorted();
  const auto got = subject.sorted();
  if (want != got) diverge(ops.size(), OpRecord{}, "drain " + show(want), "drain " + show(got));
  return verdict;
}

/// Generates a sequence and replays it against a BlackWhiteArray<Element>
/// of capacity 2^cap_exp with growth enabled.
[[nodiscard]] Verdict run_equivalence(std::uint64_t seed, std::size_t n, const OpMix& mix,
                                      double hit_ratio, unsigned cap_exp);

}  // namespace bwa::oracle
