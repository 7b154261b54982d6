#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace paramodal {

// Operations of the two-element Boolean algebra.
namespace bits {
constexpr bool meet(bool a, bool b) { return a && b; }
constexpr bool join(bool a, bool b) { return a || b; }
constexpr bool implies(bool a, bool b) { return !a || b; }
constexpr bool complement(bool a) { return !a; }
}  // namespace bits

// A tuple of bits of width 2, 3 or 4. Coordinates are 1-based.
class Snapshot {
 public:
  constexpr Snapshot() = default;
  constexpr Snapshot(std::initializer_list<int> coords) {
    for (int c : coords) push(c != 0);
  }
  static constexpr Snapshot from_bits(int width, unsigned packed) {
    Snapshot s;
    s.width_ = static_cast<std::uint8_t>(width);
    s.bits_ = static_cast<std::uint8_t>(packed & ((1u << width) - 1));
    return s;
  }

  constexpr int width() const { return width_; }
  // Packed value with coordinate 1 as the most significant bit.
  constexpr unsigned packed() const { return bits_; }
  constexpr bool operator[](int i) const {
    return (bits_ >> (width_ - i)) & 1u;
  }
  constexpr bool designated() const { return (*this)[1]; }

  constexpr Snapshot with(int i, bool value) const {
    Snapshot s = *this;
    unsigned mask = 1u << (width_ - i);
    s.bits_ = static_cast<std::uint8_t>(value ? (bits_ | mask) : (bits_ & ~mask));
    return s;
  }

  friend constexpr bool operator==(Snapshot, Snapshot) = default;

  std::string to_string() const {
    std::string out = "(";
    for (int i = 1; i <= width_; ++i) {
      if (i > 1) out += ',';
      out += (*this)[i] ? '1' : '0';
    }
    return out + ")";
  }

 private:
  constexpr void push(bool b) {
    bits_ = static_cast<std::uint8_t>((bits_ << 1) | (b ? 1u : 0u));
    ++width_;
  }

  std::uint8_t width_ = 0;
  std::uint8_t bits_ = 0;
};

enum class DomainKind { Pairs, Triples, QuadsRestricted, QuadsUnrestricted };

constexpr int width_of(DomainKind kind) {
  switch (kind) {
    case DomainKind::Pairs: return 2;
    case DomainKind::Triples: return 3;
    default: return 4;
  }
}

constexpr std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Pairs: return "pairs";
    case DomainKind::Triples: return "triples";
    case DomainKind::QuadsRestricted: return "quads_restricted";
    case DomainKind::QuadsUnrestricted: return "quads_unrestricted";
  }
  return "?";
}

// Membership constraints. Pairs are unconstrained; triples need z2 <= z1 and
// z1 & z3 = 0; the restricted quads add z2 & z4 = 0 and z3 <= z4.
constexpr bool in_domain(Snapshot s, DomainKind kind) {
  if (s.width() != width_of(kind)) return false;
  if (kind == DomainKind::Pairs) return true;
  bool z1 = s[1], z2 = s[2], z3 = s[3];
  if (!bits::implies(z2, z1) || bits::meet(z1, z3)) return false;
  if (kind == DomainKind::QuadsRestricted) {
    bool z4 = s[4];
    if (bits::meet(z2, z4) || !bits::implies(z3, z4)) return false;
  }
  return true;
}

namespace detail {

// Sort key for the canonical order: designated values first, then the box
// coordinate descending, remaining coordinates ascending. For pairs the second
// coordinate is ascending. This yields 1,b,n,0 / T,t,f,F / T0,t0,t1,f0,f1,F1.
inline std::array<int, 4> canonical_key(Snapshot s) {
  std::array<int, 4> key{};
  key[0] = !s[1];
  if (s.width() == 2) {
    key[1] = s[2];
    return key;
  }
  key[1] = !s[2];
  key[2] = s[3];
  if (s.width() == 4) key[3] = s[4];
  return key;
}

}  // namespace detail

inline std::vector<Snapshot> enumerate_domain(DomainKind kind) {
  const int w = width_of(kind);
  std::vector<Snapshot> out;
  for (unsigned packed = 0; packed < (1u << w); ++packed) {
    Snapshot s = Snapshot::from_bits(w, packed);
    if (in_domain(s, kind)) out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](Snapshot a, Snapshot b) {
    return detail::canonical_key(a) < detail::canonical_key(b);
  });
  return out;
}

// Pairs: 1=(1,0) b=(1,1) n=(0,0) 0=(0,1).
// Triples: T=(1,1,0) t=(1,0,0) f=(0,0,0) F=(0,0,1).
// Quads: the triple letter of (z1,z2,z3) followed by the digit z4.
inline std::string name_of(Snapshot s) {
  auto triple_letter = [](bool z1, bool z2, bool z3) -> char {
    if (z1 && z2 && !z3) return 'T';
    if (z1 && !z2 && !z3) return 't';
    if (!z1 && !z2 && !z3) return 'f';
    if (!z1 && !z2 && z3) return 'F';
    return '?';
  };
  switch (s.width()) {
    case 2:
      if (s[1]) return s[2] ? "b" : "1";
      return s[2] ? "0" : "n";
    case 3:
      if (in_domain(s, DomainKind::Triples))
        return std::string(1, triple_letter(s[1], s[2], s[3]));
      break;
    case 4:
      if (in_domain(s, DomainKind::QuadsUnrestricted))
        return std::string(1, triple_letter(s[1], s[2], s[3])) + (s[4] ? '1' : '0');
      break;
    default:
      break;
  }
  throw UnknownName("tuple outside every domain: " + s.to_string());
}

inline Snapshot snapshot_of(std::string_view name, DomainKind kind) {
  for (Snapshot s : enumerate_domain(kind))
    if (name_of(s) == name) return s;
  throw UnknownName("unknown value name '" + std::string(name) + "' for " +
                    std::string(to_string(kind)));
}

// Subset of a domain of at most 8 elements, as a bitmask over canonical
// indices.
class ValueSet {
 public:
  constexpr ValueSet() = default;
  constexpr explicit ValueSet(std::uint8_t mask) : mask_(mask) {}
  static constexpr ValueSet single(int i) { return ValueSet(static_cast<std::uint8_t>(1u << i)); }
  static constexpr ValueSet all(int n) { return ValueSet(static_cast<std::uint8_t>((1u << n) - 1)); }

  constexpr std::uint8_t mask() const { return mask_; }
  constexpr bool contains(int i) const { return (mask_ >> i) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr void insert(int i) { mask_ = static_cast<std::uint8_t>(mask_ | (1u << i)); }
  constexpr bool subset_of(ValueSet o) const { return (mask_ & ~o.mask_) == 0; }

  friend constexpr ValueSet operator|(ValueSet a, ValueSet b) { return ValueSet(a.mask_ | b.mask_); }
  friend constexpr ValueSet operator&(ValueSet a, ValueSet b) { return ValueSet(a.mask_ & b.mask_); }
  friend constexpr bool operator==(ValueSet, ValueSet) = default;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(unsigned rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    unsigned rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(mask_); }
  constexpr iterator end() const { return iterator(0); }

 private:
  std::uint8_t mask_ = 0;
};

// An ordered finite set of snapshots of one width, with designation by the
// first coordinate.
class Domain {
 public:
  Domain() = default;
  explicit Domain(DomainKind kind) : Domain(enumerate_domain(kind)) {}
  explicit Domain(std::vector<Snapshot> elements) : elements_(std::move(elements)) {
    if (elements_.empty() || elements_.size() > 8)
      throw Error("domain size must be between 1 and 8");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      names_.push_back(name_of(elements_[i]));
      if (elements_[i].designated()) designated_.insert(static_cast<int>(i));
    }
  }

  int size() const { return static_cast<int>(elements_.size()); }
  int width() const { return elements_.front().width(); }
  Snapshot operator[](int i) const { return elements_[static_cast<std::size_t>(i)]; }
  const std::vector<Snapshot>& elements() const { return elements_; }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  ValueSet designated() const { return designated_; }
  bool is_designated(int i) const { return designated_.contains(i); }
  ValueSet all() const { return ValueSet::all(size()); }

  std::optional<int> index_of(Snapshot s) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (elements_[i] == s) return static_cast<int>(i);
    return std::nullopt;
  }

  int index_of_name(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    throw UnknownName("unknown value name '" + std::string(name) + "'");
  }

  std::string set_to_string(ValueSet s, std::string_view sep = ",") const {
    std::string out;
    for (int i : s) {
      if (!out.empty()) out += sep;
      out += name(i);
    }
    return out;
  }

  friend bool operator==(const Domain& a, const Domain& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<Snapshot> elements_;
  std::vector<std::string> names_;
  ValueSet designated_;
};

}  // namespace paramodal
