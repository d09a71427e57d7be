#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "bwa/black_white_array.hpp"

namespace bwa {

/// Marker printed for a void slot (U+00B7 MIDDLE DOT, UTF-8 encoded).
inline constexpr const char* kVoidMarker = "\xC2\xB7";

/// Writes one line per active segment, lowest rank first:
///   rank=<r> [v,·,v,...]
template <class T, class C>
void dump(std::ostream& os, const BlackWhiteArray<T, C>& bwa) {
  const auto white = bwa.white();
  for (unsigned r = 0; r < bwa.cap_exp(); ++r) {
    if (!bwa.is_active(r)) continue;
    const SegmentRef seg = segment_of_rank(r);
    os << "rank=" << r << " [";
    for (Index i = seg.start; i <= seg.end; ++i) {
      if (i != seg.start) os << ',';
      if (white[i])
        os << *white[i];
      else
        os << kVoidMarker;
    }
    os << "]\n";
  }
}

template <class T, class C>
std::string dump(const BlackWhiteArray<T, C>& bwa) {
  std::ostringstream os;
  dump(os, bwa);
  return os.str();
}

}  // namespace bwa
