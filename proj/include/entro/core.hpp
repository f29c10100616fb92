#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace entro {

/// Usage errors: malformed arguments, mismatched groups, violated preconditions.
class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// A closure or set product outgrew its max_size budget. Partial results may
/// be retained by the caller (trajectories keep their cache).
class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what, std::size_t limit)
      : std::runtime_error(what), limit_(limit) {}
  std::size_t limit() const { return limit_; }

private:
  std::size_t limit_;
};

/// A construction was requested that the group/catalog cannot support
/// (e.g. a finite-subgroup family of a group that is not locally finite).
class UnsupportedError : public std::runtime_error {
public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/// A homomorphism / invariance / normality certification failed. Carries a
/// printable witness so reports can show the offending element(s).
class InvarianceError : public std::runtime_error {
public:
  InvarianceError(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

private:
  std::string witness_;
};

/// Invalid group construction (non-associative table, non-automorphic action...).
class ConstructionError : public std::runtime_error {
public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_bytes(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ull ^ mix64(seed);
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;  // FNV-1a prime
  }
  return mix64(h);
}

// Little-endian fixed-width codec helpers used by the group encodings.
inline void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_i32(std::string& out, std::int32_t v) { put_u32(out, static_cast<std::uint32_t>(v)); }

inline std::uint8_t get_u8(std::string_view in, std::size_t pos) {
  return static_cast<std::uint8_t>(in[pos]);
}

inline std::uint32_t get_u32(std::string_view in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  return v;
}

inline std::int32_t get_i32(std::string_view in, std::size_t pos) {
  return static_cast<std::int32_t>(get_u32(in, pos));
}

}  // namespace detail

/// One element of some ambient group: a canonical group-specific encoding
/// plus the tag of the owning group. Equality is payload equality; the
/// fingerprint is a stable 64-bit hash used to order and bucket elements.
struct Element {
  std::string payload;
  std::uint32_t group_tag = 0;
  std::uint64_t fingerprint = 0;

  friend bool operator==(const Element& a, const Element& b) {
    return a.group_tag == b.group_tag && a.fingerprint == b.fingerprint && a.payload == b.payload;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  // Total order: fingerprint first, payload breaks ties exactly.
  friend bool operator<(const Element& a, const Element& b) {
    if (a.fingerprint != b.fingerprint) return a.fingerprint < b.fingerprint;
    return a.payload < b.payload;
  }
};

inline Element make_element(std::string payload, std::uint32_t group_tag) {
  Element e;
  // fingerprint depends on the payload only, so retagging (projection into a
  // quotient, lifting back) is a field write rather than a rehash
  e.fingerprint = detail::hash_bytes(payload, 0);
  e.payload = std::move(payload);
  e.group_tag = group_tag;
  return e;
}

inline Element with_tag(Element e, std::uint32_t group_tag) {
  e.group_tag = group_tag;
  return e;
}

struct ElementHash {
  std::size_t operator()(const Element& e) const { return static_cast<std::size_t>(e.fingerprint); }
};

}  // namespace entro
