#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ergolab/scalar.hpp"
#include "ergolab/space.hpp"

namespace ergolab {

class SetClass;

/// Subset of a finite atom space; bit i set iff atom i belongs to the set.
struct AtomSet {
  boost::dynamic_bitset<> mask;
  friend bool operator==(const AtomSet&, const AtomSet&) = default;
};

/// Union of level-k cylinders. A level-k cylinder is indexed by the
/// little-endian base-b value of its first k digits (digit 0 least
/// significant), so the odometer acts as +1 mod b^k.
struct CylinderSet {
  std::uint32_t level = 0;
  std::vector<std::uint64_t> indices;
  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;
};

/// Half-open interval [lo, hi) of the circle [0, 1).
struct Interval {
  Scalar lo;
  Scalar hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of half-open intervals of [0, 1).
struct IntervalSet {
  std::vector<Interval> intervals;
  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
};

/// Subset of (finite atoms) x fiber; fibers[i] is the slice over atom i.
struct ProductSet {
  std::vector<SetClass> fibers;
  friend bool operator==(const ProductSet&, const ProductSet&);
};

/// A mu-equivalence class of measurable sets, held by a representative.
///
/// Values built through the factories and operations below are canonical:
/// two sets over the same space denote the same class iff they compare
/// equal. `raw` admits a structurally valid but non-canonical
/// representative (e.g. a cylinder set held at a working level).
class SetClass {
 public:
  using Data = std::variant<AtomSet, CylinderSet, IntervalSet, ProductSet>;

  /// Structural validation only; no canonicalization.
  static SetClass raw(SpaceRef space, Data data);

  static SetClass empty(SpaceRef space);
  static SetClass full(SpaceRef space);
  static SetClass atoms(SpaceRef space, std::span<const std::size_t> members);
  static SetClass cylinders(SpaceRef space, std::uint32_t level, std::vector<std::uint64_t> indices);
  /// Cylinder of a word read left to right ("011": first digit 0).
  static SetClass word(SpaceRef space, std::string_view digits);
  static SetClass intervals(SpaceRef space, std::vector<Interval> intervals);
  static SetClass interval(SpaceRef space, Scalar lo, Scalar hi);
  static SetClass product(SpaceRef space, std::vector<SetClass> fibers);

  const SpaceRef& space() const noexcept { return space_; }
  const Data& data() const noexcept { return data_; }

  template <typename T>
  const T& as() const {
    return std::get<T>(data_);
  }

  bool is_canonical() const;

  friend bool operator==(const SetClass& lhs, const SetClass& rhs);

 private:
  SetClass(SpaceRef space, Data data) : space_(std::move(space)), data_(std::move(data)) {}

  SpaceRef space_;
  Data data_;
};

/// Canonical representative of the class of `s`. Idempotent, measure-preserving.
SetClass normalize(const SetClass& s);

SetClass unite(const SetClass& a, const SetClass& b);
SetClass intersect(const SetClass& a, const SetClass& b);
SetClass complement(const SetClass& a);
SetClass symdiff(const SetClass& a, const SetClass& b);
SetClass difference(const SetClass& a, const SetClass& b);

Scalar measure(const SetClass& s);
/// Frechet-Nikodym distance mu(a symdiff b).
Scalar distance(const SetClass& a, const SetClass& b);
bool is_null(const SetClass& s);
bool is_full(const SetClass& s);
/// a is contained in b up to a null set.
bool is_subset(const SetClass& a, const SetClass& b);

/// Indices of a cylinder set refined to `level` (>= its own level), sorted.
std::vector<std::uint64_t> indices_at_level(const CylinderSet& s, unsigned base, std::uint32_t level);

/// Deterministic text in set-expression syntax; parse_set_expr reparses it
/// to an identical canonical value.
std::string to_text(const SetClass& s);

/// Digits of a level-k cylinder index, first digit first.
std::string cylinder_word(std::uint64_t index, unsigned base, std::uint32_t level);

}  // namespace ergolab
