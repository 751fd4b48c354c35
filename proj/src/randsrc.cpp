#include "randlab/randsrc.hpp"

#include <cerrno>
#include <cstdlib>

namespace randlab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t parse_seed(const std::string& text) {
  if (text.empty()) fail(ErrorCode::parse_error, "empty seed");
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const char* digits = text.c_str() + (hex ? 2 : 0);
  if (*digits == '\0' || *digits == '-' || *digits == '+') fail(ErrorCode::parse_error, "bad seed: " + text);
  char* end = nullptr;
  errno = 0;
  const unsigned long long value = std::strtoull(digits, &end, hex ? 16 : 10);
  if (errno != 0 || *end != '\0') fail(ErrorCode::parse_error, "bad seed: " + text);
  return static_cast<std::uint64_t>(value);
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& s : state_) {
    x = splitmix64(x);
    s = x;
  }
  // xoshiro must not start from the all-zero state.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RandomSource::next_word() noexcept {
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

std::uint64_t RandomSource::bits(unsigned count) {
  require(count <= 64, "RandomSource::bits: count exceeds 64");
  if (count == 0) return 0;
  consumed_ += count;
  if (count <= buffered_) {
    const std::uint64_t out = count == 64 ? buffer_ : buffer_ & ((std::uint64_t{1} << count) - 1);
    buffer_ = count == 64 ? 0 : buffer_ >> count;
    buffered_ -= count;
    return out;
  }
  // Take what is left in the buffer, then the remainder from a fresh word.
  const unsigned have = buffered_;
  const std::uint64_t low = buffer_;
  const unsigned need = count - have;
  const std::uint64_t fresh = next_word();
  const std::uint64_t high = need == 64 ? fresh : fresh & ((std::uint64_t{1} << need) - 1);
  buffer_ = need == 64 ? 0 : fresh >> need;
  buffered_ = 64 - need;
  return have == 0 ? high : (low | (high << have));
}

double RandomSource::uniform_real() { return static_cast<double>(bits(53)) * 0x1.0p-53; }

RandomSource RandomSource::fork(std::uint64_t stream_id) const {
  return RandomSource(splitmix64(seed_ ^ splitmix64(stream_id + 0x5851f42d4c957f2dULL)));
}

}  // namespace randlab
