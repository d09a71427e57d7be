#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bwa/bench.hpp"
#include "bwa/black_white_array.hpp"
#include "bwa/dump.hpp"
#include "bwa/oracle.hpp"

namespace bwa::cli {
namespace {

template <class Int>
bool parse_int(std::string_view token, Int& out) {
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc{} && res.ptr == token.data() + token.size();
}

std::vector<bench::BenchOp> parse_ops(const std::vector<std::string>& names) {
  static const std::map<std::string, bench::BenchOp> known{
      {"insert", bench::BenchOp::Insert},
      {"search", bench::BenchOp::Search},
      {"delete", bench::BenchOp::Delete}};
  std::vector<bench::BenchOp> ops;
  for (const auto& n : names) {
    const auto it = known.find(n);
    if (it == known.end()) throw CLI::ValidationError("--ops", "unknown op '" + n + "'");
    ops.push_back(it->second);
  }
  return ops;
}

}  // namespace

void trace(std::istream& script, std::ostream& out) {
  BlackWhiteArray<std::int64_t> bwa(4, GrowthPolicy::Grow);
  std::string line;
  for (std::size_t lineno = 1; std::getline(script, line); ++lineno) {
    std::istringstream words(line);
    std::string verb, operand, extra;
    if (!(words >> verb) || verb.front() == '#') continue;
    std::int64_t value = 0;
    if (!(words >> operand) || !parse_int(operand, value) || (words >> extra))
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected '<op> <integer>'");

    out << verb << ' ' << value;
    if (verb == "insert") {
      bwa.insert(value);
    } else if (verb == "delete" || verb == "search") {
      const SearchResult r = verb == "delete" ? bwa.erase(value) : bwa.search(value);
      out << " -> " << (r ? std::to_string(*r) : std::string("nil"));
    } else {
      throw std::runtime_error("line " + std::to_string(lineno) + ": unknown op '" + verb + "'");
    }
    out << " (total=" << bwa.total() << ")\n";
    dump(out, bwa);
    out << '\n';
  }
}

void sort(std::istream& in, std::ostream& out) {
  BlackWhiteArray<std::int64_t> bwa(10, GrowthPolicy::Grow);
  const std::string input(std::istreambuf_iterator<char>(in), {});
  const char* p = input.data();
  const char* const end = p + input.size();
  auto is_space = [](char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; };
  while (true) {
    while (p != end && is_space(*p)) ++p;
    if (p == end) break;
    const char* tok = p;
    while (p != end && !is_space(*p)) ++p;
    std::int64_t v = 0;
    if (!parse_int(std::string_view(tok, static_cast<std::size_t>(p - tok)), v))
      throw std::runtime_error("not an integer: '" + std::string(tok, p) + "'");
    bwa.insert(v);
  }

  const auto sorted = bwa.sorted();
  std::string buf;
  buf.reserve(sorted.size() * 12 + 1);
  char num[24];
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) buf.push_back(' ');
    buf.append(num, std::to_chars(num, num + sizeof num, sorted[i]).ptr);
  }
  buf.push_back('\n');
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Black-white array: ordered multiset toolkit"};
  app.require_subcommand(1);

  bench::BenchConfig bench_cfg;
  std::vector<std::string> bench_ops{"insert", "search", "delete"};
  std::string bench_config = "perfect";
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Measure amortized ns/op and comparisons/op, write CSV");
  bench_cmd->add_option("--min-exp", bench_cfg.min_exp, "Smallest size exponent")->capture_default_str();
  bench_cmd->add_option("--max-exp", bench_cfg.max_exp, "Largest size exponent")->capture_default_str();
  bench_cmd->add_option("--ops", bench_ops, "Operations: insert,search,delete")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--config", bench_config, "perfect or random")
      ->check(CLI::IsMember({"perfect", "random"}))
      ->capture_default_str();
  bench_cmd->add_option("--trials", bench_cfg.trials, "Random configurations averaged")->capture_default_str();
  bench_cmd->add_option("--hit-ratio", bench_cfg.hit_ratio, "Fraction of probes that hit")->capture_default_str();
  bench_cmd->add_option("--seed", bench_cfg.seed, "RNG seed")->capture_default_str();
  bench_cmd->add_option("--probes", bench_cfg.probes, "Probe ops per batch")->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "CSV output path")->required();

  unsigned verify_exp = 16;
  std::size_t verify_ops = 100000;
  std::uint64_t verify_seed = 1;
  double verify_hits = 0.5;
  std::string verify_mix = "standard";
  auto* verify_cmd = app.add_subcommand("verify", "Check equivalence against a reference multiset");
  verify_cmd->add_option("--size-exp", verify_exp, "Initial capacity exponent")->capture_default_str();
  verify_cmd->add_option("--ops", verify_ops, "Number of generated operations")->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "RNG seed")->capture_default_str();
  verify_cmd->add_option("--hit-ratio", verify_hits, "Fraction of probes drawn from inserted values")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  verify_cmd->add_option("--mix", verify_mix, "standard (50/25/25 insert/search/delete), all, insert-only")
      ->check(CLI::IsMember({"standard", "all", "insert-only"}))
      ->capture_default_str();

  std::string script_path;
  auto* trace_cmd = app.add_subcommand("trace", "Replay an op script, dumping segments after each op");
  trace_cmd->add_option("--script", script_path, "Script file")->required();

  auto* sort_cmd = app.add_subcommand("sort", "Sort whitespace-separated integers from stdin");

  try {
    app.parse(argc, argv);
    if (bench_cmd->parsed()) {
      bench_cfg.ops = parse_ops(bench_ops);
      bench_cfg.config = bench_config == "random" ? bench::Config::Random : bench::Config::Perfect;
      bench_cfg.validate();
    }
    if (verify_cmd->parsed() && (verify_exp < 1 || verify_exp >= 48))
      throw CLI::ValidationError("--size-exp", "must lie in [1, 47]");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (bench_cmd->parsed()) {
      const auto report = bench::run_bench(bench_cfg);
      for (const auto& row : report.rows)
        out << "2^" << row.size_exp << ' ' << row.op << ' ' << row.config << ": "
            << row.ns_per_op << " ns/op, " << row.cmp_per_op << " cmp/op\n";
      bench::write_csv(report.rows, bench_out);
      for (const auto& f : report.failures) err << "failed: " << f << '\n';
      return report.failures.empty() ? 0 : 1;
    }
    if (verify_cmd->parsed()) {
      const oracle::OpMix mix = verify_mix == "all"           ? oracle::OpMix::all_kinds()
                                : verify_mix == "insert-only" ? oracle::OpMix::insert_only()
                                                              : oracle::OpMix::standard();
      const auto verdict =
          oracle::run_equivalence(verify_seed, verify_ops, mix, verify_hits, verify_exp);
      out << oracle::describe(verdict) << '\n';
      return verdict.ok() ? 0 : 1;
    }
    if (trace_cmd->parsed()) {
      std::ifstream script(script_path);
      if (!script) {
        err << "error: cannot open " << script_path << '\n';
        return 1;
      }
      trace(script, out);
      return 0;
    }
    if (sort_cmd->parsed()) {
      sort(in, out);
      return out ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace bwa::cli
