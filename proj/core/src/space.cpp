#include "ergolab/space.hpp"

#include "ergolab/errors.hpp"

namespace ergolab {
namespace {

void check_weights(const std::vector<Scalar>& weights) {
  if (weights.empty()) throw StructuralError("atom space needs at least one atom");
  Scalar total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].sign() <= 0) {
      throw StructuralError("atom weight " + std::to_string(i) + " is not positive: " +
                            weights[i].to_string());
    }
    total += weights[i];
  }
  if (total != Scalar(1)) {
    throw StructuralError("atom weights sum to " + total.to_string() + ", not 1");
  }
}

}  // namespace

SpaceRef Space::atoms(std::vector<Scalar> weights) {
  check_weights(weights);
  auto space = std::shared_ptr<Space>(new Space());
  space->kind_ = SpaceKind::atoms;
  space->weights_ = std::move(weights);
  return space;
}

SpaceRef Space::uniform_atoms(std::size_t n) {
  if (n == 0) throw StructuralError("atom space needs at least one atom");
  return atoms(std::vector<Scalar>(n, Scalar::fraction(1, static_cast<unsigned long>(n))));
}

SpaceRef Space::cylinders(unsigned base) {
  if (base < 2 || base > 36) {
    throw StructuralError("cylinder base must be in [2, 36], got " + std::to_string(base));
  }
  auto space = std::shared_ptr<Space>(new Space());
  space->kind_ = SpaceKind::cylinders;
  space->base_ = base;
  return space;
}

SpaceRef Space::circle(std::int64_t field) {
  if (field < 0) throw StructuralError("circle field radicand must be >= 0");
  if (field != 0) field = Scalar::sqrt(field).radicand();
  auto space = std::shared_ptr<Space>(new Space());
  space->kind_ = SpaceKind::circle;
  space->field_ = field;
  return space;
}

SpaceRef Space::product(std::vector<Scalar> weights, SpaceRef fiber) {
  check_weights(weights);
  if (!fiber) throw StructuralError("product space needs a fiber");
  auto space = std::shared_ptr<Space>(new Space());
  space->kind_ = SpaceKind::product;
  space->weights_ = std::move(weights);
  space->fiber_ = std::move(fiber);
  return space;
}

std::string Space::describe() const {
  switch (kind_) {
    case SpaceKind::atoms:
      return "atoms(" + std::to_string(weights_.size()) + ")";
    case SpaceKind::cylinders:
      return "cylinders(base " + std::to_string(base_) + ")";
    case SpaceKind::circle:
      return field_ == 0 ? "circle(Q)" : "circle(Q(sqrt(" + std::to_string(field_) + ")))";
    case SpaceKind::product:
      return "atoms(" + std::to_string(weights_.size()) + ") x " + fiber_->describe();
  }
  return "?";
}

bool operator==(const Space& lhs, const Space& rhs) {
  if (&lhs == &rhs) return true;
  if (lhs.kind_ != rhs.kind_) return false;
  switch (lhs.kind_) {
    case SpaceKind::atoms:
      return lhs.weights_ == rhs.weights_;
    case SpaceKind::cylinders:
      return lhs.base_ == rhs.base_;
    case SpaceKind::circle:
      return lhs.field_ == rhs.field_;
    case SpaceKind::product:
      return lhs.weights_ == rhs.weights_ && *lhs.fiber_ == *rhs.fiber_;
  }
  return false;
}

bool same_space(const SpaceRef& lhs, const SpaceRef& rhs) {
  return lhs == rhs || (lhs && rhs && *lhs == *rhs);
}

void require_same_space(const SpaceRef& lhs, const SpaceRef& rhs, const char* what) {
  if (!same_space(lhs, rhs)) {
    throw UsageError(std::string(what) + ": mismatched spaces " + lhs->describe() + " and " +
                     rhs->describe());
  }
}

std::uint64_t cylinder_count(unsigned base, std::uint32_t level) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < level; ++i) {
    if (count > kMaxCylinderCount / base) {
      throw StructuralError("cylinder level " + std::to_string(level) + " too deep for base " +
                            std::to_string(base));
    }
    count *= base;
  }
  return count;
}

}  // namespace ergolab
