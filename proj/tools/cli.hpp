#pragma once

#include <iosfwd>

namespace bwa::cli {

/// Exit status: 0 success, 1 verification divergence or I/O failure,
/// 2 malformed flags.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

/// Replays a trace script (`insert V`, `delete V`, `search V`, one per
/// line; blank lines and `#` comments ignored), dumping the segments after
/// every op. Throws std::runtime_error on a malformed line.
void trace(std::istream& script, std::ostream& out);

/// Reads whitespace-separated integers and writes them ascending,
/// space-separated, newline-terminated. Throws std::runtime_error on a
/// token that is not an integer.
void sort(std::istream& in, std::ostream& out);

}  // namespace bwa::cli
