// Amortized-cost benchmarks over BlackWhiteArray<int32_t>.
//
// Perfect configurations hold exactly 2^m values (one active segment).
// Random configurations hold a total drawn uniformly from [1, 2^m - 1];
// their results are averaged over `trials` draws. Value generation and
// structure allocation always happen outside the timed regions.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bwa::bench {

enum class Config { Perfect, Random };
enum class BenchOp { Insert, Search, Delete };

[[nodiscard]] const char* to_string(Config config) noexcept;
[[nodiscard]] const char* to_string(BenchOp op) noexcept;

struct BenchConfig {
  unsigned min_exp = 10;
  unsigned max_exp = 16;
  std::vector<BenchOp> ops{BenchOp::Insert, BenchOp::Search, BenchOp::Delete};
  Config config = Config::Perfect;
  std::size_t trials = 1000;
  double hit_ratio = 0.5;
  std::uint64_t seed = 1;
  /// Probe operations per measurement batch.
  std::size_t probes = 4096;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct BenchRow {
  unsigned size_exp = 0;
  std::string op;
  std::string config;
  double hit_ratio = 0;
  double ns_per_op = 0;
  double cmp_per_op = 0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

/// Collected from a sweep: rows for sizes that ran, messages for sizes
/// that failed (e.g. out of memory). A failure never aborts the sweep.
struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<std::string> failures;
};

/// One row per size: time to insert 2^m pre-generated values into a fresh
/// structure, divided by 2^m. Independent of cfg.config.
[[nodiscard]] BenchReport run_insert_bench(const BenchConfig& cfg);

/// Search and/or Delete rows (whichever cfg.ops names) per size, under
/// cfg.config. Deletes run against a restored copy of the filled
/// structure for every batch so each probe sees the intended size.
[[nodiscard]] BenchReport run_probe_bench(const BenchConfig& cfg);

/// Insert rows (if requested) followed by probe rows.
[[nodiscard]] BenchReport run_bench(const BenchConfig& cfg);

inline constexpr const char* kCsvHeader = "size_exp,op,config,hit_ratio,ns_per_op,cmp_per_op";

/// Writes the header and one line per row. Throws std::runtime_error
/// naming the path on I/O failure.
void write_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path);

/// Parses a file produced by write_csv. Throws std::runtime_error on
/// unreadable or malformed input.
[[nodiscard]] std::vector<BenchRow> read_csv(const std::filesystem::path& path);

}  // namespace bwa::bench
