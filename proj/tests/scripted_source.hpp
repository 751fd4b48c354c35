#pragma once

// Bit source replaying a fixed bit string. Running a sampler on every
// L-bit string and weighting each equally gives its exact distribution,
// minus the strings that would need more than L bits.

#include <cstdint>
#include <functional>
#include <map>

namespace randlab::testing {

struct OutOfBits {};

class ScriptedSource {
 public:
  ScriptedSource(std::uint64_t pattern, unsigned length) : pattern_(pattern), length_(length) {}

  std::uint64_t bits(unsigned count) {
    if (count == 0) return 0;
    if (pos_ + count > length_) throw OutOfBits{};
    std::uint64_t out = 0;
    for (unsigned i = 0; i < count; ++i) out |= ((pattern_ >> (pos_ + i)) & 1u) << i;
    pos_ += count;
    return out;
  }

  unsigned consumed() const { return pos_; }

 private:
  std::uint64_t pattern_;
  unsigned length_;
  unsigned pos_ = 0;
};

struct Enumeration {
  std::map<std::uint64_t, std::uint64_t> counts;  // outcome -> number of strings
  std::uint64_t undetermined = 0;
};

// Runs fn over all 2^length bit strings.
inline Enumeration enumerate_bits(unsigned length, const std::function<std::uint64_t(ScriptedSource&)>& fn) {
  Enumeration e;
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << length); ++pattern) {
    ScriptedSource src(pattern, length);
    try {
      ++e.counts[fn(src)];
    } catch (const OutOfBits&) {
      ++e.undetermined;
    }
  }
  return e;
}

}  // namespace randlab::testing
