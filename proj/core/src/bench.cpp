#include "bwa/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <new>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bwa/black_white_array.hpp"

namespace bwa::bench {
namespace {

using Element = std::int32_t;
using Bwa = BlackWhiteArray<Element>;
using Clock = std::chrono::steady_clock;

constexpr auto kMinTimedRegion = std::chrono::milliseconds(1);
// Insert batches replicate small sizes until roughly this many inserts.
constexpr std::size_t kInsertBatchTarget = std::size_t{1} << 16;
constexpr std::size_t kMaxDeleteBatches = 64;

// Stored values are even, so odd probes always miss.
Element stored_value(std::mt19937_64& rng) {
  std::uniform_int_distribution<Element> half(0, (1 << 30) - 1);
  return 2 * half(rng);
}
Element absent_value(std::mt19937_64& rng) { return stored_value(rng) + 1; }

std::vector<Element> random_values(std::mt19937_64& rng, std::size_t n) {
  std::vector<Element> out(n);
  for (auto& v : out) v = stored_value(rng);
  return out;
}

// Probe operands: hits drawn from the first `stored` entries of `values`
// without replacement (cycling once exhausted), misses are absent values.
std::vector<Element> make_probes(std::mt19937_64& rng, const std::vector<Element>& values,
                                 std::size_t stored, std::size_t count, double hit_ratio) {
  std::vector<Element> pool(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(stored));
  std::shuffle(pool.begin(), pool.end(), rng);
  std::bernoulli_distribution hit(hit_ratio);
  std::vector<Element> probes;
  probes.reserve(count);
  std::size_t next = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!pool.empty() && hit(rng)) {
      probes.push_back(pool[next]);
      next = (next + 1) % pool.size();
    } else {
      probes.push_back(absent_value(rng));
    }
  }
  return probes;
}

double elapsed_ns(Clock::time_point from, Clock::time_point to) {
  return static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(to - from).count());
}

struct Measurement {
  double ns_per_op = 0;
  double cmp_per_op = 0;
};

// Repeats the read-only probe pass until the timed region reaches the
// minimum. Every pass performs identical comparisons, so the per-pass
// comparison count is exact.
Measurement measure_search(const Bwa& bwa, const std::vector<Element>& probes) {
  volatile std::size_t sink = 0;
  const std::uint64_t cmp_before = bwa.counters().comparisons;
  std::size_t passes = 0;
  const auto start = Clock::now();
  auto now = start;
  do {
    std::size_t hits = 0;
    for (Element p : probes) hits += bwa.search(p).has_value();
    sink = sink + hits;
    ++passes;
    now = Clock::now();
  } while (now - start < kMinTimedRegion);
  const std::uint64_t cmp = (bwa.counters().comparisons - cmp_before) / passes;
  const double ops = static_cast<double>(probes.size());
  return {elapsed_ns(start, now) / (static_cast<double>(passes) * ops),
          static_cast<double>(cmp) / ops};
}

// Each batch deletes from a fresh copy of `filled`; the copy is untimed.
Measurement measure_delete(const Bwa& filled, const std::vector<Element>& probes) {
  double total_ns = 0;
  std::uint64_t cmp_one_batch = 0;
  std::size_t batches = 0;
  do {
    Bwa work = filled;
    work.reset_counters();
    const auto start = Clock::now();
    for (Element p : probes) (void)work.erase(p);
    const auto stop = Clock::now();
    total_ns += elapsed_ns(start, stop);
    cmp_one_batch = work.counters().comparisons;
    ++batches;
  } while (total_ns < 1e6 && batches < kMaxDeleteBatches);
  const double ops = static_cast<double>(probes.size());
  return {total_ns / (static_cast<double>(batches) * ops),
          static_cast<double>(cmp_one_batch) / ops};
}

std::size_t delete_batch_size(const BenchConfig& cfg, std::size_t stored) {
  return std::clamp<std::size_t>(stored / 8, 1, cfg.probes);
}

bool wants(const BenchConfig& cfg, BenchOp op) {
  return std::find(cfg.ops.begin(), cfg.ops.end(), op) != cfg.ops.end();
}

BenchRow make_row(unsigned m, BenchOp op, const BenchConfig& cfg, double hit_ratio,
                  Measurement r) {
  return {m, to_string(op), to_string(cfg.config), hit_ratio, r.ns_per_op, r.cmp_per_op};
}

// Per-size seed so that every size is reproducible on its own.
std::mt19937_64 size_rng(const BenchConfig& cfg, unsigned m, unsigned salt) {
  std::seed_seq seq{cfg.seed, std::uint64_t{m}, std::uint64_t{salt}};
  return std::mt19937_64(seq);
}

void probe_perfect(const BenchConfig& cfg, unsigned m, BenchReport& report) {
  auto rng = size_rng(cfg, m, 1);
  const std::size_t n = std::size_t{1} << m;
  const auto values = random_values(rng, n);
  Bwa filled(m + 1);
  for (Element v : values) filled.insert(v);

  if (wants(cfg, BenchOp::Search)) {
    const auto probes = make_probes(rng, values, n, cfg.probes, cfg.hit_ratio);
    report.rows.push_back(make_row(m, BenchOp::Search, cfg, cfg.hit_ratio,
                                   measure_search(filled, probes)));
  }
  if (wants(cfg, BenchOp::Delete)) {
    const auto probes =
        make_probes(rng, values, n, delete_batch_size(cfg, n), cfg.hit_ratio);
    report.rows.push_back(make_row(m, BenchOp::Delete, cfg, cfg.hit_ratio,
                                   measure_delete(filled, probes)));
  }
}

// Trial totals are sorted and one structure is grown through all of them;
// the state at each checkpoint is exactly that of a fresh fill of the same
// length with the same values.
void probe_random(const BenchConfig& cfg, unsigned m, BenchReport& report) {
  auto rng = size_rng(cfg, m, 2);
  const std::size_t n = std::size_t{1} << m;
  const auto values = random_values(rng, n - 1);
  std::uniform_int_distribution<std::size_t> pick_total(1, n - 1);
  std::vector<std::size_t> totals(cfg.trials);
  for (auto& t : totals) t = pick_total(rng);
  std::sort(totals.begin(), totals.end());

  const bool search = wants(cfg, BenchOp::Search);
  const bool erase = wants(cfg, BenchOp::Delete);
  Measurement search_sum, delete_sum;
  Bwa bwa(m);
  std::size_t filled = 0;
  for (std::size_t total : totals) {
    while (filled < total) bwa.insert(values[filled++]);
    if (search) {
      const auto probes = make_probes(rng, values, total, cfg.probes, cfg.hit_ratio);
      const Measurement r = measure_search(bwa, probes);
      search_sum.ns_per_op += r.ns_per_op;
      search_sum.cmp_per_op += r.cmp_per_op;
    }
    if (erase) {
      const auto probes =
          make_probes(rng, values, total, delete_batch_size(cfg, total), cfg.hit_ratio);
      const Measurement r = measure_delete(bwa, probes);
      delete_sum.ns_per_op += r.ns_per_op;
      delete_sum.cmp_per_op += r.cmp_per_op;
    }
  }
  const auto trials = static_cast<double>(cfg.trials);
  auto mean = [&](Measurement s) {
    return Measurement{s.ns_per_op / trials, s.cmp_per_op / trials};
  };
  if (search)
    report.rows.push_back(make_row(m, BenchOp::Search, cfg, cfg.hit_ratio, mean(search_sum)));
  if (erase)
    report.rows.push_back(make_row(m, BenchOp::Delete, cfg, cfg.hit_ratio, mean(delete_sum)));
}

std::string failure_message(unsigned m, const char* what, const std::exception& e) {
  return "size 2^" + std::to_string(m) + " " + what + ": " + e.what();
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

}  // namespace

const char* to_string(Config config) noexcept {
  return config == Config::Perfect ? "perfect" : "random";
}

const char* to_string(BenchOp op) noexcept {
  switch (op) {
    case BenchOp::Insert: return "insert";
    case BenchOp::Search: return "search";
    case BenchOp::Delete: return "delete";
  }
  return "?";
}

void BenchConfig::validate() const {
  if (min_exp < 1 || min_exp > max_exp)
    throw std::invalid_argument("size exponents must satisfy 1 <= min <= max");
  if (max_exp > 30) throw std::invalid_argument("max size exponent is 30");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (probes < 1) throw std::invalid_argument("probes must be at least 1");
  if (!(hit_ratio >= 0.0 && hit_ratio <= 1.0))
    throw std::invalid_argument("hit ratio must lie in [0, 1]");
}

BenchReport run_insert_bench(const BenchConfig& cfg) {
  cfg.validate();
  BenchReport report;
  for (unsigned m = cfg.min_exp; m <= cfg.max_exp; ++m) {
    try {
      auto rng = size_rng(cfg, m, 0);
      const std::size_t n = std::size_t{1} << m;
      const auto values = random_values(rng, n);
      const std::size_t reps = std::max<std::size_t>(1, kInsertBatchTarget / n);
      double total_ns = 0;
      std::size_t rounds = 0;
      std::uint64_t cmp = 0;
      do {
        std::vector<Bwa> fresh;
        fresh.reserve(reps);
        for (std::size_t r = 0; r < reps; ++r) fresh.emplace_back(m + 1);
        const auto start = Clock::now();
        for (auto& bwa : fresh)
          for (Element v : values) bwa.insert(v);
        const auto stop = Clock::now();
        total_ns += elapsed_ns(start, stop);
        cmp = fresh.front().counters().comparisons;
        ++rounds;
      } while (total_ns < 1e6);
      const double ops = static_cast<double>(n);
      report.rows.push_back({m, to_string(BenchOp::Insert), to_string(cfg.config), 0.0,
                             total_ns / (static_cast<double>(rounds * reps) * ops),
                             static_cast<double>(cmp) / ops});
    } catch (const std::bad_alloc& e) {
      report.failures.push_back(failure_message(m, "insert", e));
    }
  }
  return report;
}

BenchReport run_probe_bench(const BenchConfig& cfg) {
  cfg.validate();
  BenchReport report;
  if (!wants(cfg, BenchOp::Search) && !wants(cfg, BenchOp::Delete)) return report;
  for (unsigned m = cfg.min_exp; m <= cfg.max_exp; ++m) {
    try {
      if (cfg.config == Config::Perfect)
        probe_perfect(cfg, m, report);
      else
        probe_random(cfg, m, report);
    } catch (const std::bad_alloc& e) {
      report.failures.push_back(failure_message(m, "probe", e));
    }
  }
  return report;
}

BenchReport run_bench(const BenchConfig& cfg) {
  BenchReport report;
  if (wants(cfg, BenchOp::Insert)) report = run_insert_bench(cfg);
  BenchReport probe = run_probe_bench(cfg);
  report.rows.insert(report.rows.end(), probe.rows.begin(), probe.rows.end());
  report.failures.insert(report.failures.end(), probe.failures.begin(), probe.failures.end());
  return report;
}

void write_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.size_exp << ',' << r.op << ',' << r.config << ',' << format_double(r.hit_ratio)
        << ',' << format_double(r.ns_per_op) << ',' << format_double(r.cmp_per_op) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<BenchRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error(path.string() + ": missing or unexpected header");

  auto parse_num = [&](const std::string& field, auto& dst, std::size_t lineno) {
    const auto res = std::from_chars(field.data(), field.data() + field.size(), dst);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": bad number '" + field + "'");
  };

  std::vector<BenchRow> rows;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 6)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected 6 fields");
    BenchRow r;
    parse_num(f[0], r.size_exp, lineno);
    r.op = f[1];
    r.config = f[2];
    parse_num(f[3], r.hit_ratio, lineno);
    parse_num(f[4], r.ns_per_op, lineno);
    parse_num(f[5], r.cmp_per_op, lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace bwa::bench
