#include "ergolab/system.hpp"

#include <algorithm>
#include <numeric>

#include "ergolab/errors.hpp"

namespace ergolab {

struct System::Node {
  SystemKind kind = SystemKind::odometer;
  SpaceRef space;
  // permutation
  std::vector<std::size_t> map;
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> cycle_of;
  std::vector<std::size_t> position;
  // odometer
  unsigned base = 0;
  // rotation
  Scalar alpha;
  // product (finite, fiber) or power (base in `first`)
  std::optional<System> first;
  std::optional<System> second;
  std::uint64_t exponent = 1;
};

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw UsageError("iteration exponent overflows 64 bits");
  return out;
}

std::uint64_t mod_shift(std::int64_t n, std::uint64_t modulus) {
  if (n >= 0) return static_cast<std::uint64_t>(n) % modulus;
  // -(n + 1) cannot overflow, even for the minimum value.
  const auto back = static_cast<std::uint64_t>(-(n + 1)) % modulus;
  return modulus - 1 - back;
}

SetClass translate(const SetClass& s, const Scalar& shift) {
  std::vector<Interval> out;
  const Scalar one(1);
  for (const Interval& iv : s.as<IntervalSet>().intervals) {
    Scalar lo = iv.lo + shift;
    Scalar hi = iv.hi + shift;
    if (one <= lo) {
      out.push_back({lo - one, hi - one});
    } else if (one < hi) {
      out.push_back({lo, one});
      out.push_back({Scalar(0), hi - one});
    } else {
      out.push_back({std::move(lo), std::move(hi)});
    }
  }
  return SetClass::intervals(s.space(), std::move(out));
}

}  // namespace

System System::permutation(std::vector<std::size_t> map, std::vector<Scalar> weights) {
  const std::size_t n = map.size();
  if (weights.size() != n) {
    throw SemanticError("permutation has " + std::to_string(n) + " images but " +
                        std::to_string(weights.size()) + " weights");
  }
  std::vector<bool> hit(n, false);
  for (std::size_t image : map) {
    if (image >= n || hit[image]) throw SemanticError("permutation map is not a bijection");
    hit[image] = true;
  }
  auto node = std::make_shared<Node>();
  node->kind = SystemKind::permutation;
  node->space = Space::atoms(weights);
  node->cycle_of.assign(n, 0);
  node->position.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t i = start; !seen[i]; i = map[i]) {
      seen[i] = true;
      node->cycle_of[i] = node->cycles.size();
      node->position[i] = cycle.size();
      cycle.push_back(i);
      if (weights[i] != weights[start]) {
        throw SemanticError("atom weights differ along the cycle of atom " + std::to_string(start) +
                            ": permutation does not preserve the measure");
      }
    }
    node->cycles.push_back(std::move(cycle));
  }
  node->map = std::move(map);
  return System(std::move(node));
}

System System::permutation(std::vector<std::size_t> map) {
  const std::size_t n = map.size();
  if (n == 0) throw SemanticError("permutation needs at least one atom");
  return permutation(std::move(map), std::vector<Scalar>(n, Scalar::fraction(1, static_cast<unsigned long>(n))));
}

System System::identity(std::size_t n) {
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  return permutation(std::move(map));
}

System System::odometer(unsigned base) {
  auto node = std::make_shared<Node>();
  node->kind = SystemKind::odometer;
  node->space = Space::cylinders(base);
  node->base = base;
  return System(std::move(node));
}

System System::rotation(Scalar alpha) {
  if (alpha.sign() < 0 || !(alpha < Scalar(1))) {
    throw SemanticError("rotation angle " + alpha.to_string() + " outside [0, 1)");
  }
  auto node = std::make_shared<Node>();
  node->kind = SystemKind::rotation;
  node->space = Space::circle(alpha.radicand());
  node->alpha = std::move(alpha);
  return System(std::move(node));
}

System System::product(System finite, System fiber) {
  if (finite.kind() != SystemKind::permutation) {
    throw SemanticError("product needs a finite permutation as its left factor");
  }
  auto node = std::make_shared<Node>();
  node->kind = SystemKind::product;
  node->space = Space::product(finite.space()->weights(), fiber.space());
  node->first = std::move(finite);
  node->second = std::move(fiber);
  return System(std::move(node));
}

System System::power(std::uint64_t k) const {
  if (k == 0) throw UsageError("power exponent must be >= 1");
  if (k == 1) return *this;
  if (kind() == SystemKind::power) {
    std::uint64_t total = 0;
    if (__builtin_mul_overflow(node_->exponent, k, &total)) throw UsageError("power exponent overflows");
    return node_->first->power(total);
  }
  if (k > static_cast<std::uint64_t>(INT64_MAX)) throw UsageError("power exponent overflows");
  auto node = std::make_shared<Node>();
  node->kind = SystemKind::power;
  node->space = space();
  node->first = *this;
  node->exponent = k;
  return System(std::move(node));
}

SystemKind System::kind() const noexcept { return node_->kind; }
const SpaceRef& System::space() const noexcept { return node_->space; }

namespace {
void require_kind(SystemKind actual, SystemKind wanted, const char* what) {
  if (actual != wanted) throw UsageError(std::string("not a ") + what + " system");
}
}  // namespace

const std::vector<std::size_t>& System::map() const {
  require_kind(kind(), SystemKind::permutation, "permutation");
  return node_->map;
}

const std::vector<std::vector<std::size_t>>& System::cycles() const {
  require_kind(kind(), SystemKind::permutation, "permutation");
  return node_->cycles;
}

std::size_t System::permute(std::size_t atom, std::int64_t n) const {
  require_kind(kind(), SystemKind::permutation, "permutation");
  const auto& cycle = node_->cycles[node_->cycle_of[atom]];
  const std::uint64_t shift = mod_shift(n, cycle.size());
  return cycle[(node_->position[atom] + shift) % cycle.size()];
}

unsigned System::base() const {
  require_kind(kind(), SystemKind::odometer, "odometer");
  return node_->base;
}

const Scalar& System::alpha() const {
  require_kind(kind(), SystemKind::rotation, "rotation");
  return node_->alpha;
}

const System& System::finite() const {
  require_kind(kind(), SystemKind::product, "product");
  return *node_->first;
}

const System& System::fiber() const {
  require_kind(kind(), SystemKind::product, "product");
  return *node_->second;
}

const System& System::power_base() const {
  require_kind(kind(), SystemKind::power, "power");
  return *node_->first;
}

std::uint64_t System::exponent() const { return kind() == SystemKind::power ? node_->exponent : 1; }

std::pair<System, std::uint64_t> System::root() const {
  if (kind() == SystemKind::power) return {*node_->first, node_->exponent};
  return {*this, 1};
}

std::string System::describe() const {
  switch (kind()) {
    case SystemKind::permutation:
      return "permutation(n=" + std::to_string(node_->map.size()) + ")";
    case SystemKind::odometer:
      return "odometer(" + std::to_string(node_->base) + ")";
    case SystemKind::rotation:
      return "rotation(" + node_->alpha.to_string() + ")";
    case SystemKind::product:
      return "product(" + node_->first->describe() + ", " + node_->second->describe() + ")";
    case SystemKind::power:
      return "power(" + node_->first->describe() + ", " + std::to_string(node_->exponent) + ")";
  }
  return "?";
}

bool operator==(const System& lhs, const System& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  if (lhs.kind() != rhs.kind()) return false;
  switch (lhs.kind()) {
    case SystemKind::permutation:
      return lhs.node_->map == rhs.node_->map && same_space(lhs.space(), rhs.space());
    case SystemKind::odometer:
      return lhs.node_->base == rhs.node_->base;
    case SystemKind::rotation:
      return lhs.node_->alpha == rhs.node_->alpha;
    case SystemKind::product:
      return *lhs.node_->first == *rhs.node_->first && *lhs.node_->second == *rhs.node_->second;
    case SystemKind::power:
      return lhs.node_->exponent == rhs.node_->exponent && *lhs.node_->first == *rhs.node_->first;
  }
  return false;
}

SetClass apply_power(const System& T, const SetClass& s, std::int64_t n) {
  require_same_space(T.space(), s.space(), "apply");
  if (n == 0) return normalize(s);
  switch (T.kind()) {
    case SystemKind::power:
      return apply_power(T.power_base(), s, checked_mul(n, static_cast<std::int64_t>(T.exponent())));
    case SystemKind::permutation: {
      const auto& mask = s.as<AtomSet>().mask;
      boost::dynamic_bitset<> image(mask.size());
      for (auto i = mask.find_first(); i != boost::dynamic_bitset<>::npos; i = mask.find_next(i)) {
        image.set(T.permute(i, n));
      }
      return SetClass::raw(s.space(), AtomSet{std::move(image)});
    }
    case SystemKind::odometer: {
      const auto& cyl = s.as<CylinderSet>();
      const std::uint64_t count = cylinder_count(T.base(), cyl.level);
      const std::uint64_t shift = mod_shift(n, count);
      std::vector<std::uint64_t> image;
      image.reserve(cyl.indices.size());
      for (std::uint64_t j : cyl.indices) image.push_back((j + shift) % count);
      return SetClass::cylinders(s.space(), cyl.level, std::move(image));
    }
    case SystemKind::rotation: {
      const Scalar shift = (Scalar(static_cast<long long>(n)) * T.alpha()).frac();
      return translate(normalize(s), shift);
    }
    case SystemKind::product: {
      const auto& fibers = s.as<ProductSet>().fibers;
      std::vector<SetClass> image(fibers.size(), SetClass::empty(T.fiber().space()));
      for (std::size_t i = 0; i < fibers.size(); ++i) {
        image[T.finite().permute(i, n)] = apply_power(T.fiber(), fibers[i], n);
      }
      return SetClass::product(s.space(), std::move(image));
    }
  }
  return s;
}

SetClass apply(const System& T, const SetClass& s) { return apply_power(T, s, 1); }

SetClass apply_inverse(const System& T, const SetClass& s) { return apply_power(T, s, -1); }

Saturation forward_saturation(const System& T, const SetClass& A, std::size_t m_max) {
  require_same_space(T.space(), A.space(), "forward saturation");
  SetClass united = normalize(A);
  SetClass current = united;
  for (std::size_t m = 0;; ++m) {
    SetClass next = apply(T, current);
    if (is_subset(next, united)) return {std::move(united), true, m};
    if (m == m_max) return {std::move(united), false, m};
    united = unite(united, next);
    current = std::move(next);
  }
}

Saturation full_saturation(const System& T, const SetClass& A, std::size_t m_max) {
  require_same_space(T.space(), A.space(), "full saturation");
  SetClass united = normalize(A);
  SetClass forward = united;
  SetClass backward = united;
  for (std::size_t m = 0;; ++m) {
    SetClass next_forward = apply(T, forward);
    SetClass next_backward = apply_inverse(T, backward);
    if (is_subset(next_forward, united) && is_subset(next_backward, united)) {
      return {std::move(united), true, m};
    }
    if (m == m_max) return {std::move(united), false, m};
    united = unite(unite(united, next_forward), next_backward);
    forward = std::move(next_forward);
    backward = std::move(next_backward);
  }
}

}  // namespace ergolab
