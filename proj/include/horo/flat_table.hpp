#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

namespace horo {

/// Open-addressing hash map from fixed-stride int64 keys to int32 values.
/// Linear probing, power-of-two capacity, load factor at most 1/2.
class FlatTable {
 public:
  explicit FlatTable(int stride, std::size_t expected = 64) : stride_(stride) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    allocate(cap);
  }

  int stride() const { return stride_; }
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return values_.size(); }
  std::size_t memory_bytes() const {
    return keys_.size() * sizeof(std::int64_t) + values_.size() * sizeof(std::int32_t);
  }

  const std::int32_t* find(const std::int64_t* key) const {
    std::size_t slot = hash(key) & mask_;
    while (values_[slot] != kEmpty) {
      if (equal(slot, key)) return &values_[slot];
      slot = (slot + 1) & mask_;
    }
    return nullptr;
  }

  /// Inserts when absent; returns false (and leaves the value) otherwise.
  bool insert(const std::int64_t* key, std::int32_t value) {
    if (2 * (size_ + 1) > values_.size()) grow();
    std::size_t slot = hash(key) & mask_;
    while (values_[slot] != kEmpty) {
      if (equal(slot, key)) return false;
      slot = (slot + 1) & mask_;
    }
    std::memcpy(&keys_[slot * stride_], key, stride_ * sizeof(std::int64_t));
    values_[slot] = value;
    ++size_;
    return true;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t s = 0; s < values_.size(); ++s)
      if (values_[s] != kEmpty) fn(&keys_[s * stride_], values_[s]);
  }

 private:
  static constexpr std::int32_t kEmpty = -1;

  int stride_;
  std::size_t size_ = 0;
  std::size_t mask_ = 0;
  std::vector<std::int64_t> keys_;
  std::vector<std::int32_t> values_;

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  std::uint64_t hash(const std::int64_t* key) const {
    std::uint64_t h = 0;
    for (int i = 0; i < stride_; ++i) h = mix(h ^ static_cast<std::uint64_t>(key[i]));
    return h;
  }
  bool equal(std::size_t slot, const std::int64_t* key) const {
    return std::memcmp(&keys_[slot * stride_], key, stride_ * sizeof(std::int64_t)) == 0;
  }
  void allocate(std::size_t cap) {
    keys_.assign(cap * stride_, 0);
    values_.assign(cap, kEmpty);
    mask_ = cap - 1;
    size_ = 0;
  }
  void grow() {
    std::vector<std::int64_t> old_keys = std::move(keys_);
    std::vector<std::int32_t> old_values = std::move(values_);
    allocate(old_values.size() * 2);
    for (std::size_t s = 0; s < old_values.size(); ++s)
      if (old_values[s] != kEmpty) insert(&old_keys[s * stride_], old_values[s]);
  }
};

}  // namespace horo
