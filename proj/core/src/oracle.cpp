#include "bwa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bwa::oracle {

const char* to_string(OpKind kind) noexcept {
  switch (kind) {
    case OpKind::Insert: return "insert";
    case OpKind::Search: return "search";
    case OpKind::Delete: return "delete";
    case OpKind::ExtractMin: return "extract-min";
    case OpKind::ExtractMax: return "extract-max";
    case OpKind::Bound: return "bound";
    case OpKind::Interval: return "interval";
  }
  return "?";
}

std::string to_string(const OpRecord& op) {
  std::ostringstream os;
  os << to_string(op.kind);
  switch (op.kind) {
    case OpKind::ExtractMin:
    case OpKind::ExtractMax:
      break;
    case OpKind::Bound:
      os << ' ' << op.value << (op.side == BoundSide::Lower ? " lower" : " upper");
      break;
    case OpKind::Interval:
      os << ' ' << op.value << ' ' << op.hi;
      break;
    default:
      os << ' ' << op.value;
  }
  return os.str();
}

std::vector<OpRecord> generate_ops(std::uint64_t seed, std::size_t n, const OpMix& mix,
                                   double hit_ratio) {
  const std::vector<double> weights{mix.insert,      mix.search,      mix.erase,
                                    mix.extract_min, mix.extract_max, mix.bound,
                                    mix.interval};
  double sum = 0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0)
      throw std::invalid_argument("op mix weights must be finite and non-negative");
    sum += w;
  }
  if (sum <= 0) throw std::invalid_argument("op mix weights are all zero");
  if (!(hit_ratio >= 0.0 && hit_ratio <= 1.0))
    throw std::invalid_argument("hit ratio must lie in [0, 1]");

  // Values span a range a few times larger than the sequence so duplicates
  // occur but most fresh probes miss.
  const auto range = static_cast<Element>(std::clamp<std::size_t>(4 * n, 16, 1U << 30));
  const Element window = std::max<Element>(1, range / 64);

  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> pick_kind(weights.begin(), weights.end());
  std::uniform_int_distribution<Element> fresh(0, range - 1);
  std::uniform_int_distribution<Element> width(0, window);
  std::bernoulli_distribution take_hit(hit_ratio);
  std::bernoulli_distribution coin(0.5);

  std::vector<Element> inserted;
  auto probe = [&] {
    if (!inserted.empty() && take_hit(rng)) {
      std::uniform_int_distribution<std::size_t> at(0, inserted.size() - 1);
      return inserted[at(rng)];
    }
    return fresh(rng);
  };

  std::vector<OpRecord> ops;
  ops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    OpRecord op;
    op.kind = static_cast<OpKind>(pick_kind(rng));
    switch (op.kind) {
      case OpKind::Insert:
        op.value = fresh(rng);
        inserted.push_back(op.value);
        break;
      case OpKind::Search:
      case OpKind::Delete:
        op.value = probe();
        break;
      case OpKind::ExtractMin:
      case OpKind::ExtractMax:
        break;
      case OpKind::Bound:
        op.value = probe();
        op.side = coin(rng) ? BoundSide::Lower : BoundSide::Upper;
        break;
      case OpKind::Interval:
        op.value = fresh(rng);
        op.hi = op.value + width(rng);
        break;
    }
    ops.push_back(op);
  }
  return ops;
}

bool ReferenceModel::erase_one(Element v) {
  const auto it = items_.find(v);
  if (it == items_.end()) return false;
  items_.erase(it);
  return true;
}

std::optional<Element> ReferenceModel::extreme(Side side) const {
  if (items_.empty()) return std::nullopt;
  return side == Side::Min ? *items_.begin() : *items_.rbegin();
}

std::optional<Element> ReferenceModel::extract(Side side) {
  if (items_.empty()) return std::nullopt;
  const auto it = side == Side::Min ? items_.begin() : std::prev(items_.end());
  const Element v = *it;
  items_.erase(it);
  return v;
}

std::optional<Element> ReferenceModel::bound(Element v, BoundSide side) const {
  if (side == BoundSide::Lower) {
    const auto it = items_.upper_bound(v);
    if (it == items_.end()) return std::nullopt;
    return *it;
  }
  const auto it = items_.lower_bound(v);
  if (it == items_.begin()) return std::nullopt;
  return *std::prev(it);
}

std::vector<Element> ReferenceModel::interval(Element lo, Element hi) const {
  return {items_.lower_bound(lo), items_.upper_bound(hi)};
}

std::string describe(const Verdict& verdict) {
  if (verdict.ok()) return "ok (" + std::to_string(verdict.steps) + " steps)";
  const Divergence& d = *verdict.divergence;
  std::ostringstream os;
  os << "divergence at step " << d.step;
  if (d.step < verdict.steps) os << " (" << to_string(d.op) << ")";
  os << ": expected " << d.expected << ", got " << d.actual;
  return os.str();
}

Verdict run_equivalence(std::uint64_t seed, std::size_t n, const OpMix& mix,
                        double hit_ratio, unsigned cap_exp) {
  const auto ops = generate_ops(seed, n, mix, hit_ratio);
  BlackWhiteArray<Element> subject(cap_exp, GrowthPolicy::Grow);
  return run_equivalence(subject, std::span<const OpRecord>(ops));
}

}  // namespace bwa::oracle
