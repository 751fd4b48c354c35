#include "randlab/hashfam.hpp"

#include <bit>

#include <nlohmann/json.hpp>

namespace randlab::hashfam {
namespace {

constexpr char kMagic[] = "RLHF";
constexpr std::uint16_t kVersion = 1;

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t random_bits_below(RandomSource& src, unsigned width) {
  return width == 0 ? 0 : src.bits(width);
}

}  // namespace

const char* family_name(Family f) noexcept {
  switch (f) {
    case Family::mod_p:
      return "mod_p";
    case Family::multiply_shift:
      return "multiply_shift";
    case Family::tabulation:
      return "tabulation";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "mod_p") return Family::mod_p;
  if (name == "multiply_shift") return Family::multiply_shift;
  if (name == "tabulation") return Family::tabulation;
  fail(ErrorCode::invalid_argument, "unknown hash family: " + name);
}

// Deterministic Miller-Rabin; these bases are exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  require(n < kLargestPrime64, "no 64-bit prime above the requested universe");
  std::uint64_t candidate = n + 1;
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

ModPrimeHash ModPrimeHash::from_params(std::uint64_t a, std::uint64_t b, std::uint64_t p, std::uint64_t m) {
  require(is_prime(p), "mod_p: p must be prime");
  require(m >= 1 && m <= p, "mod_p: need 1 <= m <= p");
  require(a >= 1 && a < p, "mod_p: need 1 <= a < p");
  require(b < p, "mod_p: need 0 <= b < p");
  return ModPrimeHash(a, b, p, m);
}

MultiplyShiftHash MultiplyShiftHash::from_params(std::uint64_t a, unsigned k, unsigned l) {
  require(k >= 1 && k <= 64, "multiply_shift: k must lie in [1, 64]");
  require(l >= 1 && l <= k, "multiply_shift: need 1 <= l <= k");
  require((a & 1) == 1, "multiply_shift: a must be odd");
  require(k == 64 || a < (std::uint64_t{1} << k), "multiply_shift: a must be below 2^k");
  return MultiplyShiftHash(a, k, l);
}

TabulationHash TabulationHash::from_tables(unsigned c, unsigned char_bits, unsigned m_bits,
                                           std::vector<std::uint64_t> tables) {
  require(c >= 1, "tabulation: need at least one character");
  require(char_bits >= 1 && char_bits <= 16, "tabulation: char_bits must lie in [1, 16]");
  require(c * char_bits <= 64, "tabulation: key wider than 64 bits");
  require(m_bits >= 1 && m_bits <= 64, "tabulation: m_bits must lie in [1, 64]");
  require(tables.size() == (std::size_t{c} << char_bits), "tabulation: wrong table size");
  if (m_bits < 64) {
    for (auto w : tables) require(w >> m_bits == 0, "tabulation: table word wider than m_bits");
  }
  return TabulationHash(c, char_bits, m_bits, std::move(tables));
}

std::uint64_t HashFunction::range() const noexcept {
  return std::visit(
      [](const auto& h) -> std::uint64_t {
        using H = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<H, ModPrimeHash>) {
          return h.m();
        } else if constexpr (std::is_same_v<H, MultiplyShiftHash>) {
          return h.l() == 64 ? 0 : std::uint64_t{1} << h.l();
        } else {
          return h.m_bits() == 64 ? 0 : std::uint64_t{1} << h.m_bits();
        }
      },
      impl_);
}

unsigned HashFunction::universe_bits() const noexcept {
  return std::visit(
      [](const auto& h) -> unsigned {
        using H = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<H, ModPrimeHash>) {
          return static_cast<unsigned>(std::bit_width(h.p() - 1));
        } else if constexpr (std::is_same_v<H, MultiplyShiftHash>) {
          return h.k();
        } else {
          return h.c() * h.char_bits();
        }
      },
      impl_);
}

void HashFunction::serialize(ByteWriter& out) const {
  out.put_tag(kMagic);
  out.put(kVersion);
  out.put(static_cast<std::uint8_t>(family()));
  std::visit(
      [&out](const auto& h) {
        using H = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<H, ModPrimeHash>) {
          out.put(h.a());
          out.put(h.b());
          out.put(h.p());
          out.put(h.m());
        } else if constexpr (std::is_same_v<H, MultiplyShiftHash>) {
          out.put(h.a());
          out.put(static_cast<std::uint8_t>(h.k()));
          out.put(static_cast<std::uint8_t>(h.l()));
        } else {
          out.put(static_cast<std::uint8_t>(h.c()));
          out.put(static_cast<std::uint8_t>(h.char_bits()));
          out.put(static_cast<std::uint8_t>(h.m_bits()));
          for (auto w : h.tables()) out.put(w);
        }
      },
      impl_);
}

std::vector<std::uint8_t> HashFunction::to_bytes() const {
  ByteWriter out;
  serialize(out);
  return std::move(out).take();
}

namespace {

// Out-of-range parameters in stored bytes are a format problem, not a caller error.
template <class Fn>
HashFunction as_parse_error(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::invalid_argument) throw;
    fail(ErrorCode::parse_error, std::string("hash handle: ") + e.what());
  }
}

}  // namespace

HashFunction HashFunction::deserialize(ByteReader& in) {
  return as_parse_error([&in]() -> HashFunction { return deserialize_unchecked(in); });
}

HashFunction HashFunction::deserialize_unchecked(ByteReader& in) {
  in.expect_tag(kMagic);
  const auto version = in.get<std::uint16_t>();
  if (version != kVersion) fail(ErrorCode::parse_error, "unsupported hash handle version");
  const auto family = in.get<std::uint8_t>();
  switch (static_cast<Family>(family)) {
    case Family::mod_p: {
      const auto a = in.get<std::uint64_t>();
      const auto b = in.get<std::uint64_t>();
      const auto p = in.get<std::uint64_t>();
      const auto m = in.get<std::uint64_t>();
      return ModPrimeHash::from_params(a, b, p, m);
    }
    case Family::multiply_shift: {
      const auto a = in.get<std::uint64_t>();
      const unsigned k = in.get<std::uint8_t>();
      const unsigned l = in.get<std::uint8_t>();
      return MultiplyShiftHash::from_params(a, k, l);
    }
    case Family::tabulation: {
      const unsigned c = in.get<std::uint8_t>();
      const unsigned char_bits = in.get<std::uint8_t>();
      const unsigned m_bits = in.get<std::uint8_t>();
      if (char_bits < 1 || char_bits > 16 || c < 1) fail(ErrorCode::parse_error, "bad tabulation header");
      std::vector<std::uint64_t> tables(std::size_t{c} << char_bits);
      for (auto& w : tables) w = in.get<std::uint64_t>();
      return TabulationHash::from_tables(c, char_bits, m_bits, std::move(tables));
    }
  }
  fail(ErrorCode::parse_error, "unknown hash family tag");
}

HashFunction HashFunction::from_bytes(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  HashFunction h = deserialize(in);
  if (in.remaining() != 0) fail(ErrorCode::parse_error, "trailing bytes after hash handle");
  return h;
}

std::string HashFunction::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["family"] = family_name(family());
  std::visit(
      [&j](const auto& h) {
        using H = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<H, ModPrimeHash>) {
          j["a"] = h.a();
          j["b"] = h.b();
          j["p"] = h.p();
          j["m"] = h.m();
        } else if constexpr (std::is_same_v<H, MultiplyShiftHash>) {
          j["a"] = h.a();
          j["k"] = h.k();
          j["l"] = h.l();
        } else {
          j["c"] = h.c();
          j["char_bits"] = h.char_bits();
          j["m_bits"] = h.m_bits();
          auto rows = nlohmann::ordered_json::array();
          const std::size_t row_len = std::size_t{1} << h.char_bits();
          for (unsigned i = 0; i < h.c(); ++i) {
            auto row = h.tables().subspan(i * row_len, row_len);
            rows.push_back(std::vector<std::uint64_t>(row.begin(), row.end()));
          }
          j["tables"] = std::move(rows);
        }
      },
      impl_);
  return j.dump();
}

HashFunction HashFunction::from_json(const std::string& text) {
  return as_parse_error([&text]() -> HashFunction { return from_json_unchecked(text); });
}

HashFunction HashFunction::from_json_unchecked(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != kVersion) fail(ErrorCode::parse_error, "unsupported hash handle version");
    switch (parse_family(j.at("family").get<std::string>())) {
      case Family::mod_p:
        return ModPrimeHash::from_params(j.at("a").get<std::uint64_t>(), j.at("b").get<std::uint64_t>(),
                                         j.at("p").get<std::uint64_t>(), j.at("m").get<std::uint64_t>());
      case Family::multiply_shift:
        return MultiplyShiftHash::from_params(j.at("a").get<std::uint64_t>(), j.at("k").get<unsigned>(),
                                              j.at("l").get<unsigned>());
      case Family::tabulation: {
        std::vector<std::uint64_t> tables;
        for (const auto& row : j.at("tables")) {
          for (const auto& w : row) tables.push_back(w.get<std::uint64_t>());
        }
        return TabulationHash::from_tables(j.at("c").get<unsigned>(), j.at("char_bits").get<unsigned>(),
                                           j.at("m_bits").get<unsigned>(), std::move(tables));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("hash handle json: ") + e.what());
  }
  fail(ErrorCode::parse_error, "unknown hash family");
}

ModPrimeHash sample_mod_prime(RandomSource& src, std::uint64_t p, std::uint64_t m) {
  require(m >= 1 && m <= p, "mod_p: need 1 <= m <= p");
  const std::uint64_t a = 1 + uniform_below(src, p - 1);
  const std::uint64_t b = uniform_below(src, p);
  return ModPrimeHash::from_params(a, b, p, m);
}

ModPrimeHash sample_mod_p_raw(RandomSource& src, std::uint64_t universe_max, std::uint64_t m) {
  require(m >= 1, "mod_p: m must be positive");
  return sample_mod_prime(src, next_prime(std::max(universe_max, m - 1)), m);
}

HashFunction sample_mod_p(RandomSource& src, std::uint64_t universe_max, std::uint64_t m) {
  return sample_mod_p_raw(src, universe_max, m);
}

HashFunction sample_multiply_shift(RandomSource& src, unsigned k, unsigned l) {
  require(k >= 1 && k <= 64, "multiply_shift: k must lie in [1, 64]");
  require(l >= 1 && l <= k, "multiply_shift: need 1 <= l <= k");
  const std::uint64_t a = (random_bits_below(src, k - 1) << 1) | 1;
  return MultiplyShiftHash::from_params(a, k, l);
}

TabulationHash sample_tabulation_raw(RandomSource& src, unsigned c, unsigned char_bits, unsigned m_bits) {
  require(c >= 1 && char_bits >= 1 && char_bits <= 16 && c * char_bits <= 64,
          "tabulation: c * char_bits must fit a 64-bit key, char_bits <= 16");
  require(m_bits >= 1 && m_bits <= 64, "tabulation: m_bits must lie in [1, 64]");
  std::vector<std::uint64_t> tables(std::size_t{c} << char_bits);
  for (auto& w : tables) w = src.bits(m_bits);
  return TabulationHash::from_tables(c, char_bits, m_bits, std::move(tables));
}

HashFunction sample_tabulation(RandomSource& src, unsigned c, unsigned char_bits, unsigned m_bits) {
  return sample_tabulation_raw(src, c, char_bits, m_bits);
}

std::vector<std::uint64_t> derive_pairwise(std::span<const std::uint64_t> base, std::uint64_t n,
                                           std::uint64_t alphabet_size) {
  std::vector<std::uint64_t> derived;
  derived.reserve(n);
  for (std::uint64_t j = 1; j <= n; ++j) {
    u128 sum = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if ((j >> i) & 1) sum += base[i];
    }
    derived.push_back(static_cast<std::uint64_t>(sum % alphabet_size));
  }
  return derived;
}

PairwiseBitBlock pairwise_bits(RandomSource& src, std::uint64_t n, std::uint64_t alphabet_size) {
  require(n >= 1, "pairwise_bits: n must be positive");
  require(n < (std::uint64_t{1} << 62), "pairwise_bits: n too large");
  require(alphabet_size >= 2, "pairwise_bits: alphabet needs at least two symbols");
  PairwiseBitBlock block;
  block.alphabet_size = alphabet_size;
  const auto width = static_cast<unsigned>(std::bit_width(n));  // ceil(lg(n+1))
  block.base.resize(width);
  for (auto& v : block.base) v = uniform_below(src, alphabet_size);
  block.derived = derive_pairwise(block.base, n, alphabet_size);
  return block;
}

}  // namespace randlab::hashfam
