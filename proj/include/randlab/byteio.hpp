#pragma once

// Little-endian byte buffers for the versioned binary formats.

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randlab/error.hpp"

namespace randlab {

class ByteWriter {
 public:
  template <class UInt>
  void put(UInt value) {
    for (std::size_t i = 0; i < sizeof(UInt); ++i) {
      bytes_.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i)));
    }
  }

  void put_f64(double value) {
    std::uint64_t raw = 0;
    std::memcpy(&raw, &value, sizeof raw);
    put(raw);
  }

  void put_tag(std::string_view tag) { bytes_.insert(bytes_.end(), tag.begin(), tag.end()); }

  void put_bytes(std::span<const std::uint8_t> data) { bytes_.insert(bytes_.end(), data.begin(), data.end()); }

  const std::vector<std::uint8_t>& bytes() const& { return bytes_; }
  std::vector<std::uint8_t> take() && { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  template <class UInt>
  UInt get() {
    need(sizeof(UInt));
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) value |= std::uint64_t{data_[pos_ + i]} << (8 * i);
    pos_ += sizeof(UInt);
    return static_cast<UInt>(value);
  }

  double get_f64() {
    const auto raw = get<std::uint64_t>();
    double value = 0;
    std::memcpy(&value, &raw, sizeof value);
    return value;
  }

  void expect_tag(std::string_view tag) {
    need(tag.size());
    if (std::memcmp(data_.data() + pos_, tag.data(), tag.size()) != 0) {
      fail(ErrorCode::parse_error, "bad magic, expected " + std::string(tag));
    }
    pos_ += tag.size();
  }

  std::span<const std::uint8_t> get_bytes(std::size_t count) {
    need(count);
    auto out = data_.subspan(pos_, count);
    pos_ += count;
    return out;
  }

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  std::size_t position() const noexcept { return pos_; }

 private:
  void need(std::size_t count) const {
    if (data_.size() - pos_ < count) fail(ErrorCode::parse_error, "truncated input");
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace randlab
