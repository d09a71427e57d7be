// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Usage: acceptance <path-to-bwa-cli>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bwa/bench.hpp"
#include "bwa/black_white_array.hpp"
#include "bwa/oracle.hpp"
#include "fixtures.hpp"

using namespace bwa;
using namespace bwa::fixtures;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Expect {
 public:
  void check(bool cond, const std::string& what) {
    if (!cond) {
      pass_ = false;
      failures_ << (failures_.tellp() > 0 ? "; " : "") << what;
    }
  }
  Outcome done(const std::string& detail) const {
    return {pass_, pass_ ? detail : failures_.str() + " | " + detail};
  }

 private:
  bool pass_ = true;
  std::ostringstream failures_;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

Outcome insert_walkthrough() {
  const auto t0 = Clock::now();
  Expect e;
  Bwa b = insert_walkthrough_before();
  e.check(b.total() == 7, "total before != 7");
  const auto merges = b.counters().merges;
  b.insert(52);
  const auto merged = b.counters().merges - merges;
  e.check(b.total() == 8, "total != 8");
  const std::vector<std::optional<Int>> want{21, 33, 45, 52, 59, 67, 76, 83};
  e.check(segment(b, 3) == want, "rank 3 contents differ");
  e.check(merged == 3, "merges on final insert = " + std::to_string(merged));
  e.check(b.validate().empty(), "invariant violation");
  const double s = seconds_since(t0);
  e.check(s < 1.0, "runtime " + fmt(s) + " s");
  return e.done("total=8, 3 merges, " + fmt(s * 1e3) + " ms");
}

Outcome delete_walkthrough() {
  const auto t0 = Clock::now();
  Expect e;
  Bwa b = delete_walkthrough_before();
  e.check(b.total() == 14, "prelude total != 14");
  const auto before = b.counters();
  e.check(b.erase(59).has_value(), "59 not found");
  const auto after = b.counters();
  using S = std::vector<std::optional<Int>>;
  e.check(b.total() == 10, "total != 10");
  e.check(segment(b, 3) == S{6, 21, 52, 67, 77, 83, 91, kVoid}, "rank 3 contents differ");
  e.check(!b.is_active(2), "rank 2 still active");
  e.check(segment(b, 1) == S{45, 82}, "rank 1 contents differ");
  e.check(after.demotes - before.demotes == 1, "demotions != 1");
  e.check(after.merges - before.merges == 1, "merges != 1");
  e.check(b.validate().empty(), "invariant violation");
  const double s = seconds_since(t0);
  e.check(s < 1.0, "runtime " + fmt(s) + " s");
  return e.done("total 14 -> 10, 1 demotion, 1 merge, " + fmt(s * 1e3) + " ms");
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  Expect e;
  const auto verdict = oracle::run_equivalence(20240601, 100000, oracle::OpMix::standard(), 0.5, 16);
  const double s = seconds_since(t0);
  e.check(verdict.ok(), oracle::describe(verdict));
  e.check(verdict.steps == 100000, "steps = " + std::to_string(verdict.steps));
  e.check(s < 30.0, "runtime " + fmt(s) + " s");
  return e.done("10^5 ops, validate() every step, " + fmt(s) + " s");
}

std::uint64_t insert_comparisons(unsigned m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Int> dist(0, (1 << 30) - 1);
  Bwa b(m + 1);
  for (std::size_t i = 0; i < (std::size_t{1} << m); ++i) b.insert(dist(rng));
  return b.counters().comparisons;
}

Outcome insert_comparison_bound() {
  Expect e;
  std::ostringstream detail;
  for (unsigned m : {10U, 14U, 18U}) {
    const std::uint64_t n = std::uint64_t{1} << m;
    const auto c = insert_comparisons(m, m);
    const auto c2 = insert_comparisons(m + 1, m);
    const double ratio = static_cast<double>(c2) / static_cast<double>(c);
    e.check(c <= 2 * m * n, "m=" + std::to_string(m) + ": " + std::to_string(c) + " > 2mn");
    e.check(ratio <= 2.4, "m=" + std::to_string(m) + ": ratio " + fmt(ratio));
    detail << "m=" << m << " cmp/(2mn)=" << fmt(static_cast<double>(c) / (2.0 * m * n))
           << " ratio=" << fmt(ratio) << ' ';
  }
  return e.done(detail.str());
}

Outcome search_counters() {
  Expect e;
  bench::BenchConfig cfg;
  cfg.min_exp = cfg.max_exp = 16;
  cfg.ops = {bench::BenchOp::Search};
  cfg.seed = 16;

  cfg.config = bench::Config::Perfect;
  cfg.hit_ratio = 1.0;
  const auto perfect = bench::run_probe_bench(cfg).rows.at(0).cmp_per_op;
  e.check(perfect <= 18.0, "perfect hit cmp/op " + fmt(perfect) + " > 18");

  cfg.config = bench::Config::Random;
  cfg.hit_ratio = 0.0;
  cfg.trials = 1000;
  const auto random = bench::run_probe_bench(cfg).rows.at(0).cmp_per_op;
  e.check(random <= 324.0, "random miss cmp/op " + fmt(random) + " > 324");
  return e.done("perfect hit " + fmt(perfect) + " <= 18, random miss " + fmt(random) +
                " <= 324 (1000 trials)");
}

Outcome occupancy() {
  Expect e;
  // extracts always remove a value, so segments drain often enough to demote
  const oracle::OpMix mix{.insert = 50, .erase = 20, .extract_min = 15, .extract_max = 15};
  const auto ops = oracle::generate_ops(99, 100000, mix, 0.9);
  Bwa b(4);
  std::size_t demotions = 0, steps_checked = 0;
  bool floor_ok = true, post_ok = true, single_ok = true;
  for (const auto& op : ops) {
    const auto before = b.counters();
    const std::size_t total_before = b.total();
    switch (op.kind) {
      case oracle::OpKind::Insert: b.insert(op.value); break;
      case oracle::OpKind::Delete: (void)b.erase(op.value); break;
      case oracle::OpKind::ExtractMin: (void)b.extract(Side::Min); break;
      case oracle::OpKind::ExtractMax: (void)b.extract(Side::Max); break;
      default: break;
    }
    const auto after = b.counters();
    const auto demoted = after.demotes - before.demotes;
    if (op.kind != oracle::OpKind::Insert && (demoted > 1 || after.merges - before.merges > 1))
      single_ok = false;
    if (demoted == 1) {
      ++demotions;
      // a demotion of rank j lowers total by exactly 2^(j-1)
      const std::size_t drop = total_before - b.total();
      const unsigned j = rank_of_index(drop) + 1;
      if (b.is_active(j)) {
        // merged back into rank j
        const double rate = static_cast<double>(b.occupancy(j)) / static_cast<double>(std::size_t{1} << j);
        if (!(rate > 0.75 || rate == 1.0)) post_ok = false;
      } else if (!b.is_active(j - 1) || b.occupancy(j - 1) != drop) {
        post_ok = false;
      }
    }
    for (unsigned r = 1; r < b.cap_exp(); ++r)
      if (b.is_active(r) && 2 * b.occupancy(r) <= (std::size_t{1} << r)) floor_ok = false;
    if (!b.validate().empty()) floor_ok = false;
    ++steps_checked;
  }
  e.check(floor_ok, "an active rank fell to 50% or below");
  e.check(post_ok, "post-demotion occupancy out of range");
  e.check(single_ok, "a delete triggered more than one demotion or merge");
  e.check(demotions > 0, "no demotion exercised");
  return e.done(std::to_string(steps_checked) + " steps, " + std::to_string(demotions) +
                " demotions checked");
}

Outcome bench_trend() {
  const auto t0 = Clock::now();
  Expect e;
  bench::BenchConfig cfg;
  cfg.min_exp = 10;
  cfg.max_exp = 22;
  cfg.seed = 5;
  cfg.hit_ratio = 0.5;
  cfg.trials = 1000;

  cfg.ops = {bench::BenchOp::Insert, bench::BenchOp::Search};
  cfg.config = bench::Config::Perfect;
  const auto perfect = bench::run_bench(cfg);
  cfg.ops = {bench::BenchOp::Search};
  cfg.config = bench::Config::Random;
  const auto random = bench::run_probe_bench(cfg);
  e.check(perfect.failures.empty() && random.failures.empty(), "a size failed to run");

  std::vector<double> insert_ns, perfect_ns, random_ns;
  for (const auto& r : perfect.rows)
    (r.op == "insert" ? insert_ns : perfect_ns).push_back(r.ns_per_op);
  for (const auto& r : random.rows) random_ns.push_back(r.ns_per_op);
  const std::size_t sizes = cfg.max_exp - cfg.min_exp + 1;
  e.check(insert_ns.size() == sizes && perfect_ns.size() == sizes && random_ns.size() == sizes,
          "missing rows");
  if (!e.done("").pass) return e.done("");

  const double insert_ratio = insert_ns.back() / insert_ns.front();
  e.check(insert_ratio <= 4.0, "insert ns ratio 2^22/2^10 = " + fmt(insert_ratio));
  std::ostringstream sep;
  for (std::size_t i = 0; i < sizes; ++i) {
    e.check(random_ns[i] > perfect_ns[i], "random <= perfect at 2^" + std::to_string(cfg.min_exp + i));
    sep << fmt(random_ns[i] / perfect_ns[i], 2) << (i + 1 < sizes ? "," : "");
  }
  const double s = seconds_since(t0);
  e.check(s < 600.0, "sweep runtime " + fmt(s) + " s");
  return e.done("insert ratio " + fmt(insert_ratio, 2) + " (" + fmt(insert_ns.front(), 1) +
                " -> " + fmt(insert_ns.back(), 1) + " ns), random/perfect search [" + sep.str() +
                "], " + fmt(s, 1) + " s");
}

Outcome space_ratio() {
  Expect e;
  for (unsigned k = 1; k <= 26; ++k) {
    const Bwa b(k, GrowthPolicy::Fixed);
    e.check(b.white().size() == 2 * b.black().size(), "k=" + std::to_string(k));
  }
  Bwa g(1, GrowthPolicy::Grow);
  for (Int v = 0; v < (1 << 16); ++v) {
    g.insert(v);
    if (g.white().size() != 2 * g.black().size()) {
      e.check(false, "grown structure at k=" + std::to_string(g.cap_exp()));
      break;
    }
  }
  return e.done("white:black = 2:1 for k = 1..26 and through 16 growth steps");
}

Outcome sort_tool(const std::string& cli) {
  Expect e;
  if (cli.empty()) {
    e.check(false, "no CLI path given");
    return e.done("");
  }
  const fs::path dir = fs::temp_directory_path() / "bwa_acceptance_sort";
  fs::create_directories(dir);
  const fs::path in = dir / "in.txt", out = dir / "out.txt";

  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::int64_t> dist(-(std::int64_t{1} << 40), std::int64_t{1} << 40);
  std::vector<std::int64_t> values(1000000);
  for (auto& v : values) v = dist(rng);
  {
    std::ofstream f(in);
    for (std::size_t i = 0; i < values.size(); ++i) f << values[i] << (i % 10 == 9 ? '\n' : ' ');
  }
  std::sort(values.begin(), values.end());
  std::string expected;
  char buf[24];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) expected.push_back(' ');
    expected.append(buf, std::to_chars(buf, buf + sizeof buf, values[i]).ptr);
  }
  expected.push_back('\n');

  const auto t0 = Clock::now();
  const std::string cmd = "\"" + cli + "\" sort < \"" + in.string() + "\" > \"" + out.string() + "\"";
  const int rc = std::system(cmd.c_str());
  const double s = seconds_since(t0);
  std::ifstream f(out, std::ios::binary);
  const std::string got((std::istreambuf_iterator<char>(f)), {});
  e.check(rc == 0, "exit status " + std::to_string(rc));
  e.check(got == expected, "output differs from std::sort");
  e.check(s < 10.0, "runtime " + fmt(s) + " s");
  fs::remove_all(dir);
  return e.done("10^6 integers byte-identical to std::sort, " + fmt(s, 2) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"insert walkthrough", insert_walkthrough},
      {"delete walkthrough", delete_walkthrough},
      {"oracle equivalence", oracle_equivalence},
      {"insert comparison bound", insert_comparison_bound},
      {"search comparison counters", search_counters},
      {"occupancy", occupancy},
      {"bench trend", bench_trend},
      {"space ratio", space_ratio},
      {"sort tool", [&] { return sort_tool(cli); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
