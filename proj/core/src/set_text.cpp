#include <string>

#include "ergolab/set_class.hpp"

namespace ergolab {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& part : parts) {
    if (!out.empty()) out += " | ";
    out += part;
  }
  return out;
}

}  // namespace

std::string to_text(const SetClass& raw) {
  const SetClass s = normalize(raw);
  if (is_null(s)) return "empty";
  const Space& space = *s.space();
  std::vector<std::string> parts;
  switch (space.kind()) {
    case SpaceKind::atoms: {
      const auto& mask = s.as<AtomSet>().mask;
      if (mask.all()) return "full";
      std::string out = "atoms{";
      bool first = true;
      for (auto i = mask.find_first(); i != boost::dynamic_bitset<>::npos; i = mask.find_next(i)) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
      }
      return out + "}";
    }
    case SpaceKind::cylinders: {
      const auto& cyl = s.as<CylinderSet>();
      if (cyl.level == 0) return "full";
      for (std::uint64_t index : cyl.indices) {
        parts.push_back("cyl(\"" + cylinder_word(index, space.base(), cyl.level) + "\")");
      }
      return join(parts);
    }
    case SpaceKind::circle: {
      const auto& intervals = s.as<IntervalSet>().intervals;
      if (intervals.size() == 1 && intervals[0].lo.is_zero() && intervals[0].hi == Scalar(1)) return "full";
      for (const Interval& iv : intervals) {
        parts.push_back("interval(" + iv.lo.to_string() + ", " + iv.hi.to_string() + ")");
      }
      return join(parts);
    }
    case SpaceKind::product: {
      const auto& fibers = s.as<ProductSet>().fibers;
      bool all_full = true;
      for (const SetClass& fiber : fibers) all_full = all_full && is_full(fiber);
      if (all_full) return "full";
      for (std::size_t i = 0; i < fibers.size(); ++i) {
        if (is_null(fibers[i])) continue;
        parts.push_back("fiber(" + std::to_string(i) + ", " + to_text(fibers[i]) + ")");
      }
      return join(parts);
    }
  }
  return "empty";
}

}  // namespace ergolab
