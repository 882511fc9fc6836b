#include "ergolab/set_class.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

#include "ergolab/errors.hpp"

namespace ergolab {
namespace {

const char* kind_name(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::atoms:
      return "atoms";
    case SpaceKind::cylinders:
      return "cylinders";
    case SpaceKind::circle:
      return "circle";
    case SpaceKind::product:
      return "product";
  }
  return "?";
}

std::size_t expected_alternative(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::atoms:
      return 0;
    case SpaceKind::cylinders:
      return 1;
    case SpaceKind::circle:
      return 2;
    case SpaceKind::product:
      return 3;
  }
  return 0;
}

void validate(const Space& space, const SetClass::Data& data) {
  if (data.index() != expected_alternative(space.kind())) {
    throw StructuralError(std::string("set representation does not match ") +
                          kind_name(space.kind()) + " space");
  }
  switch (space.kind()) {
    case SpaceKind::atoms: {
      const auto& mask = std::get<AtomSet>(data).mask;
      if (mask.size() != space.atom_count()) {
        throw StructuralError("atom mask has " + std::to_string(mask.size()) + " bits, space has " +
                              std::to_string(space.atom_count()) + " atoms");
      }
      break;
    }
    case SpaceKind::cylinders: {
      const auto& cyl = std::get<CylinderSet>(data);
      const std::uint64_t count = cylinder_count(space.base(), cyl.level);
      for (std::uint64_t index : cyl.indices) {
        if (index >= count) {
          throw StructuralError("cylinder index " + std::to_string(index) + " out of range at level " +
                                std::to_string(cyl.level));
        }
      }
      break;
    }
    case SpaceKind::circle: {
      for (const Interval& iv : std::get<IntervalSet>(data).intervals) {
        for (const Scalar* end : {&iv.lo, &iv.hi}) {
          if (end->radicand() != 0 && end->radicand() != space.field()) {
            throw StructuralError("interval endpoint " + end->to_string() + " is not in the field of " +
                                  space.describe());
          }
        }
        if (iv.lo.sign() < 0 || Scalar(1) < iv.hi) {
          throw StructuralError("interval [" + iv.lo.to_string() + ", " + iv.hi.to_string() +
                                ") leaves [0, 1]");
        }
        if (iv.hi < iv.lo) {
          throw StructuralError("interval [" + iv.lo.to_string() + ", " + iv.hi.to_string() +
                                ") has lo > hi");
        }
      }
      break;
    }
    case SpaceKind::product: {
      const auto& fibers = std::get<ProductSet>(data).fibers;
      if (fibers.size() != space.atom_count()) {
        throw StructuralError("product set has " + std::to_string(fibers.size()) + " fibers, space has " +
                              std::to_string(space.atom_count()) + " atoms");
      }
      for (const SetClass& fiber : fibers) {
        if (!same_space(fiber.space(), space.fiber())) {
          throw StructuralError("product fiber lives on " + fiber.space()->describe() + ", expected " +
                                space.fiber()->describe());
        }
      }
      break;
    }
  }
}

CylinderSet prune(unsigned base, CylinderSet s) {
  std::sort(s.indices.begin(), s.indices.end());
  s.indices.erase(std::unique(s.indices.begin(), s.indices.end()), s.indices.end());
  while (s.level > 0) {
    if (s.indices.empty()) {
      s.level = 0;
      break;
    }
    if (s.indices.size() == cylinder_count(base, s.level)) {
      s.level = 0;
      s.indices = {0};
      break;
    }
    if (s.indices.size() % base != 0) break;
    // Siblings at level k share their first k-1 digits, i.e. index mod b^(k-1).
    const std::uint64_t parent_count = cylinder_count(base, s.level - 1);
    std::vector<std::uint64_t> parents;
    parents.reserve(s.indices.size());
    for (std::uint64_t index : s.indices) parents.push_back(index % parent_count);
    std::sort(parents.begin(), parents.end());
    bool full_blocks = true;
    for (std::size_t i = 0; i < parents.size() && full_blocks; i += base) {
      full_blocks = parents[i] == parents[i + base - 1];
    }
    if (!full_blocks) break;
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
    s.indices = std::move(parents);
    --s.level;
  }
  return s;
}

IntervalSet merge_intervals(IntervalSet s) {
  std::erase_if(s.intervals, [](const Interval& iv) { return !(iv.lo < iv.hi); });
  std::sort(s.intervals.begin(), s.intervals.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (Interval& iv : s.intervals) {
    if (!merged.empty() && !(merged.back().hi < iv.lo)) {
      if (merged.back().hi < iv.hi) merged.back().hi = std::move(iv.hi);
    } else {
      merged.push_back(std::move(iv));
    }
  }
  s.intervals = std::move(merged);
  return s;
}

SetClass::Data normalized_data(const Space& space, const SetClass::Data& data) {
  switch (space.kind()) {
    case SpaceKind::atoms:
      return data;
    case SpaceKind::cylinders:
      return prune(space.base(), std::get<CylinderSet>(data));
    case SpaceKind::circle:
      return merge_intervals(std::get<IntervalSet>(data));
    case SpaceKind::product: {
      ProductSet out;
      for (const SetClass& fiber : std::get<ProductSet>(data).fibers) out.fibers.push_back(normalize(fiber));
      return out;
    }
  }
  return data;
}

enum class BoolOp { unite, intersect, symdiff, difference };

std::vector<std::uint64_t> merge_indices(const std::vector<std::uint64_t>& a,
                                         const std::vector<std::uint64_t>& b, BoolOp op) {
  std::vector<std::uint64_t> out;
  out.reserve(op == BoolOp::intersect ? std::min(a.size(), b.size()) : a.size() + b.size());
  auto it = std::back_inserter(out);
  switch (op) {
    case BoolOp::unite:
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), it);
      break;
    case BoolOp::intersect:
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), it);
      break;
    case BoolOp::symdiff:
      std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), it);
      break;
    case BoolOp::difference:
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), it);
      break;
  }
  return out;
}

std::vector<Interval> complement_intervals(const std::vector<Interval>& intervals) {
  std::vector<Interval> out;
  Scalar cursor(0);
  for (const Interval& iv : intervals) {
    if (cursor < iv.lo) out.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < Scalar(1)) out.push_back({cursor, Scalar(1)});
  return out;
}

std::vector<Interval> intersect_intervals(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const Scalar& lo = max(a[i].lo, b[j].lo);
    const Scalar& hi = min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

SetClass combine(const SetClass& a, const SetClass& b, BoolOp op, const char* what) {
  require_same_space(a.space(), b.space(), what);
  const Space& space = *a.space();
  switch (space.kind()) {
    case SpaceKind::atoms: {
      const auto& x = a.as<AtomSet>().mask;
      const auto& y = b.as<AtomSet>().mask;
      AtomSet out;
      switch (op) {
        case BoolOp::unite:
          out.mask = x | y;
          break;
        case BoolOp::intersect:
          out.mask = x & y;
          break;
        case BoolOp::symdiff:
          out.mask = x ^ y;
          break;
        case BoolOp::difference:
          out.mask = x - y;
          break;
      }
      return SetClass::raw(a.space(), std::move(out));
    }
    case SpaceKind::cylinders: {
      const auto& x = a.as<CylinderSet>();
      const auto& y = b.as<CylinderSet>();
      const std::uint32_t level = std::max(x.level, y.level);
      CylinderSet out{level, merge_indices(indices_at_level(x, space.base(), level),
                                           indices_at_level(y, space.base(), level), op)};
      return normalize(SetClass::raw(a.space(), std::move(out)));
    }
    case SpaceKind::circle: {
      const SetClass na = normalize(a);
      const SetClass nb = normalize(b);
      const auto& x = na.as<IntervalSet>().intervals;
      const auto& y = nb.as<IntervalSet>().intervals;
      IntervalSet out;
      switch (op) {
        case BoolOp::unite:
          out.intervals = x;
          out.intervals.insert(out.intervals.end(), y.begin(), y.end());
          break;
        case BoolOp::intersect:
          out.intervals = intersect_intervals(x, y);
          break;
        case BoolOp::difference:
          out.intervals = intersect_intervals(x, complement_intervals(y));
          break;
        case BoolOp::symdiff: {
          out.intervals = intersect_intervals(x, complement_intervals(y));
          auto other = intersect_intervals(y, complement_intervals(x));
          out.intervals.insert(out.intervals.end(), other.begin(), other.end());
          break;
        }
      }
      return normalize(SetClass::raw(a.space(), std::move(out)));
    }
    case SpaceKind::product: {
      const auto& x = a.as<ProductSet>().fibers;
      const auto& y = b.as<ProductSet>().fibers;
      ProductSet out;
      out.fibers.reserve(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out.fibers.push_back(combine(x[i], y[i], op, what));
      return SetClass::raw(a.space(), std::move(out));
    }
  }
  return a;
}

}  // namespace

bool operator==(const ProductSet& lhs, const ProductSet& rhs) { return lhs.fibers == rhs.fibers; }

bool operator==(const SetClass& lhs, const SetClass& rhs) {
  return same_space(lhs.space_, rhs.space_) && lhs.data_ == rhs.data_;
}

SetClass SetClass::raw(SpaceRef space, Data data) {
  if (!space) throw StructuralError("set without a space");
  validate(*space, data);
  return SetClass(std::move(space), std::move(data));
}

SetClass SetClass::empty(SpaceRef space) {
  switch (space->kind()) {
    case SpaceKind::atoms:
      return SetClass(space, AtomSet{boost::dynamic_bitset<>(space->atom_count())});
    case SpaceKind::cylinders:
      return SetClass(space, CylinderSet{});
    case SpaceKind::circle:
      return SetClass(space, IntervalSet{});
    case SpaceKind::product: {
      ProductSet out;
      out.fibers.assign(space->atom_count(), empty(space->fiber()));
      return SetClass(space, std::move(out));
    }
  }
  throw StructuralError("unknown space kind");
}

SetClass SetClass::full(SpaceRef space) {
  switch (space->kind()) {
    case SpaceKind::atoms: {
      boost::dynamic_bitset<> mask(space->atom_count());
      mask.set();
      return SetClass(space, AtomSet{std::move(mask)});
    }
    case SpaceKind::cylinders:
      return SetClass(space, CylinderSet{0, {0}});
    case SpaceKind::circle:
      return SetClass(space, IntervalSet{{Interval{Scalar(0), Scalar(1)}}});
    case SpaceKind::product: {
      ProductSet out;
      out.fibers.assign(space->atom_count(), full(space->fiber()));
      return SetClass(space, std::move(out));
    }
  }
  throw StructuralError("unknown space kind");
}

SetClass SetClass::atoms(SpaceRef space, std::span<const std::size_t> members) {
  if (space->kind() != SpaceKind::atoms) throw UsageError("atoms{...} needs an atom space");
  boost::dynamic_bitset<> mask(space->atom_count());
  for (std::size_t i : members) {
    if (i >= mask.size()) {
      throw StructuralError("atom index " + std::to_string(i) + " out of range for " + space->describe());
    }
    mask.set(i);
  }
  return SetClass(std::move(space), AtomSet{std::move(mask)});
}

SetClass SetClass::cylinders(SpaceRef space, std::uint32_t level, std::vector<std::uint64_t> indices) {
  if (space->kind() != SpaceKind::cylinders) throw UsageError("cylinder set needs a cylinder space");
  return normalize(raw(std::move(space), CylinderSet{level, std::move(indices)}));
}

SetClass SetClass::word(SpaceRef space, std::string_view digits) {
  if (space->kind() != SpaceKind::cylinders) throw UsageError("cylinder word needs a cylinder space");
  const unsigned base = space->base();
  const auto level = static_cast<std::uint32_t>(digits.size());
  cylinder_count(base, level);
  std::uint64_t index = 0;
  std::uint64_t weight = 1;
  for (char c : digits) {
    unsigned digit = 0;
    if (c >= '0' && c <= '9') {
      digit = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'z') {
      digit = static_cast<unsigned>(c - 'a') + 10;
    } else {
      throw StructuralError(std::string("invalid digit '") + c + "'");
    }
    if (digit >= base) {
      throw StructuralError(std::string("digit '") + c + "' outside base " + std::to_string(base));
    }
    index += digit * weight;
    weight *= base;
  }
  return cylinders(std::move(space), level, {index});
}

SetClass SetClass::intervals(SpaceRef space, std::vector<Interval> intervals) {
  if (space->kind() != SpaceKind::circle) throw UsageError("interval set needs a circle space");
  return normalize(raw(std::move(space), IntervalSet{std::move(intervals)}));
}

SetClass SetClass::interval(SpaceRef space, Scalar lo, Scalar hi) {
  return intervals(std::move(space), {Interval{std::move(lo), std::move(hi)}});
}

SetClass SetClass::product(SpaceRef space, std::vector<SetClass> fibers) {
  if (space->kind() != SpaceKind::product) throw UsageError("product set needs a product space");
  return normalize(raw(std::move(space), ProductSet{std::move(fibers)}));
}

bool SetClass::is_canonical() const { return normalize(*this) == *this; }

SetClass normalize(const SetClass& s) {
  return SetClass::raw(s.space(), normalized_data(*s.space(), s.data()));
}

SetClass unite(const SetClass& a, const SetClass& b) { return combine(a, b, BoolOp::unite, "union"); }

SetClass intersect(const SetClass& a, const SetClass& b) {
  return combine(a, b, BoolOp::intersect, "intersection");
}

SetClass symdiff(const SetClass& a, const SetClass& b) {
  return combine(a, b, BoolOp::symdiff, "symmetric difference");
}

SetClass difference(const SetClass& a, const SetClass& b) {
  return combine(a, b, BoolOp::difference, "difference");
}

SetClass complement(const SetClass& a) {
  const Space& space = *a.space();
  switch (space.kind()) {
    case SpaceKind::atoms: {
      AtomSet out{~a.as<AtomSet>().mask};
      return SetClass::raw(a.space(), std::move(out));
    }
    case SpaceKind::cylinders: {
      const auto& x = a.as<CylinderSet>();
      const std::uint64_t count = cylinder_count(space.base(), x.level);
      std::vector<std::uint64_t> sorted = x.indices;
      std::sort(sorted.begin(), sorted.end());
      CylinderSet out{x.level, {}};
      out.indices.reserve(count - std::min<std::uint64_t>(count, sorted.size()));
      std::size_t k = 0;
      for (std::uint64_t j = 0; j < count; ++j) {
        while (k < sorted.size() && sorted[k] < j) ++k;
        if (k < sorted.size() && sorted[k] == j) continue;
        out.indices.push_back(j);
      }
      return normalize(SetClass::raw(a.space(), std::move(out)));
    }
    case SpaceKind::circle: {
      const SetClass na = normalize(a);
      IntervalSet out{complement_intervals(na.as<IntervalSet>().intervals)};
      return normalize(SetClass::raw(a.space(), std::move(out)));
    }
    case SpaceKind::product: {
      ProductSet out;
      for (const SetClass& fiber : a.as<ProductSet>().fibers) out.fibers.push_back(complement(fiber));
      return SetClass::raw(a.space(), std::move(out));
    }
  }
  return a;
}

Scalar measure(const SetClass& s) {
  const Space& space = *s.space();
  switch (space.kind()) {
    case SpaceKind::atoms: {
      const auto& mask = s.as<AtomSet>().mask;
      Scalar total;
      for (auto i = mask.find_first(); i != boost::dynamic_bitset<>::npos; i = mask.find_next(i)) {
        total += space.weights()[i];
      }
      return total;
    }
    case SpaceKind::cylinders: {
      const SetClass n = normalize(s);
      const auto& cyl = n.as<CylinderSet>();
      return Scalar::fraction(static_cast<unsigned long>(cyl.indices.size()),
                              static_cast<unsigned long>(cylinder_count(space.base(), cyl.level)));
    }
    case SpaceKind::circle: {
      const SetClass n = normalize(s);
      Scalar total;
      for (const Interval& iv : n.as<IntervalSet>().intervals) total += iv.hi - iv.lo;
      return total;
    }
    case SpaceKind::product: {
      const auto& fibers = s.as<ProductSet>().fibers;
      Scalar total;
      for (std::size_t i = 0; i < fibers.size(); ++i) {
        if (!is_null(fibers[i])) total += space.weights()[i] * measure(fibers[i]);
      }
      return total;
    }
  }
  return Scalar(0);
}

Scalar distance(const SetClass& a, const SetClass& b) { return measure(symdiff(a, b)); }

bool is_null(const SetClass& s) {
  switch (s.space()->kind()) {
    case SpaceKind::atoms:
      return s.as<AtomSet>().mask.none();
    case SpaceKind::cylinders:
      return s.as<CylinderSet>().indices.empty();
    case SpaceKind::circle:
      return std::none_of(s.as<IntervalSet>().intervals.begin(), s.as<IntervalSet>().intervals.end(),
                          [](const Interval& iv) { return iv.lo < iv.hi; });
    case SpaceKind::product: {
      const auto& fibers = s.as<ProductSet>().fibers;
      return std::all_of(fibers.begin(), fibers.end(), [](const SetClass& f) { return is_null(f); });
    }
  }
  return false;
}

bool is_full(const SetClass& s) { return is_null(complement(s)); }

bool is_subset(const SetClass& a, const SetClass& b) { return is_null(difference(a, b)); }

std::vector<std::uint64_t> indices_at_level(const CylinderSet& s, unsigned base, std::uint32_t level) {
  if (level < s.level) throw UsageError("cannot coarsen a cylinder set");
  std::vector<std::uint64_t> sorted = s.indices;
  std::sort(sorted.begin(), sorted.end());
  if (level == s.level) return sorted;
  const std::uint64_t stride = cylinder_count(base, s.level);
  const std::uint64_t copies = cylinder_count(base, level) / stride;
  std::vector<std::uint64_t> out;
  out.reserve(sorted.size() * copies);
  for (std::uint64_t t = 0; t < copies; ++t) {
    for (std::uint64_t j : sorted) out.push_back(j + t * stride);
  }
  return out;
}

std::string cylinder_word(std::uint64_t index, unsigned base, std::uint32_t level) {
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  out.reserve(level);
  for (std::uint32_t t = 0; t < level; ++t) {
    out.push_back(kDigits[index % base]);
    index /= base;
  }
  return out;
}

}  // namespace ergolab
