#include <cctype>
#include <string>
#include <vector>

#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"

namespace ergolab {
namespace {

class SetParser {
 public:
  SetParser(std::string_view text, SpaceRef space) : text_(text), root_(std::move(space)) {}

  SetClass parse() {
    SetClass result = expr(root_);
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw ParseError(message, 1, at + 1);
  }
  [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t natural() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (value > (static_cast<std::size_t>(-1) - 9) / 10) fail("integer too large", start);
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (start == pos_) fail("expected an integer");
    return value;
  }

  // Raw text of a scalar argument, up to ',' or ')' at depth zero.
  Scalar scalar_argument() {
    skip_ws();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0) break;
        --depth;
      } else if (c == ',' && depth == 0) {
        break;
      }
      ++pos_;
    }
    try {
      return parse_scalar(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      fail(e.what(), start + e.column() - 1);
    }
  }

  SetClass expr(const SpaceRef& space) {
    SetClass value = disjunction(space);
    while (eat('\\')) value = difference(value, disjunction(space));
    return value;
  }

  SetClass disjunction(const SpaceRef& space) {
    SetClass value = exclusive(space);
    while (eat('|')) value = unite(value, exclusive(space));
    return value;
  }

  SetClass exclusive(const SpaceRef& space) {
    SetClass value = conjunction(space);
    while (eat('^')) value = symdiff(value, conjunction(space));
    return value;
  }

  SetClass conjunction(const SpaceRef& space) {
    SetClass value = unary(space);
    while (eat('&')) value = intersect(value, unary(space));
    return value;
  }

  SetClass unary(const SpaceRef& space) {
    if (eat('~')) return complement(unary(space));
    return primary(space);
  }

  // Places `make(fiber space)` over every atom of a product space.
  template <typename Make>
  SetClass lifted(const SpaceRef& space, Make make) {
    std::vector<SetClass> fibers(space->atom_count(), make(space->fiber()));
    return SetClass::product(space, std::move(fibers));
  }

  SetClass cylinder(const SpaceRef& space, const std::string& word, std::size_t at) {
    if (space->kind() == SpaceKind::product) {
      return lifted(space, [&](const SpaceRef& fiber) { return cylinder(fiber, word, at); });
    }
    if (space->kind() != SpaceKind::cylinders) fail("cyl(...) used on " + space->describe(), at);
    try {
      return SetClass::word(space, word);
    } catch (const StructuralError& e) {
      fail(e.what(), at);
    }
  }

  SetClass interval(const SpaceRef& space, const Scalar& lo, const Scalar& hi, std::size_t at) {
    if (space->kind() == SpaceKind::product) {
      return lifted(space, [&](const SpaceRef& fiber) { return interval(fiber, lo, hi, at); });
    }
    if (space->kind() != SpaceKind::circle) fail("interval(...) used on " + space->describe(), at);
    if (lo.sign() < 0 || Scalar(1) < hi || !(lo < hi)) {
      fail("interval endpoints must satisfy 0 <= lo < hi <= 1", at);
    }
    try {
      return SetClass::interval(space, lo, hi);
    } catch (const Error& e) {
      fail(e.what(), at);
    }
  }

  SetClass atoms(const SpaceRef& space, const std::vector<std::size_t>& members, std::size_t at) {
    if (space->kind() != SpaceKind::atoms && space->kind() != SpaceKind::product) {
      fail("atoms{...} used on " + space->describe(), at);
    }
    for (std::size_t m : members) {
      if (m >= space->atom_count()) fail("atom index " + std::to_string(m) + " out of range", at);
    }
    if (space->kind() == SpaceKind::atoms) return SetClass::atoms(space, members);
    std::vector<SetClass> fibers(space->atom_count(), SetClass::empty(space->fiber()));
    for (std::size_t m : members) fibers[m] = SetClass::full(space->fiber());
    return SetClass::product(space, std::move(fibers));
  }

  SetClass primary(const SpaceRef& space) {
    skip_ws();
    const std::size_t at = pos_;
    if (eat('(')) {
      SetClass inner = expr(space);
      expect(')');
      return inner;
    }
    const std::string name = identifier();
    if (name == "empty") return SetClass::empty(space);
    if (name == "full") return SetClass::full(space);
    if (name == "cyl") {
      expect('(');
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected '\"'");
      const std::size_t word_at = ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
      if (pos_ >= text_.size()) fail("unterminated cylinder word", word_at - 1);
      const std::string word(text_.substr(word_at, pos_ - word_at));
      ++pos_;
      expect(')');
      return cylinder(space, word, word_at);
    }
    if (name == "interval") {
      expect('(');
      const Scalar lo = scalar_argument();
      expect(',');
      const Scalar hi = scalar_argument();
      expect(')');
      return interval(space, lo, hi, at);
    }
    if (name == "atoms") {
      expect('{');
      std::vector<std::size_t> members;
      if (!eat('}')) {
        do {
          members.push_back(natural());
        } while (eat(','));
        expect('}');
      }
      return atoms(space, members, at);
    }
    if (name == "fiber") {
      if (space->kind() != SpaceKind::product) fail("fiber(...) used on " + space->describe(), at);
      expect('(');
      const std::size_t index_at = pos_;
      const std::size_t index = natural();
      if (index >= space->atom_count()) fail("atom index " + std::to_string(index) + " out of range", index_at);
      expect(',');
      SetClass inner = expr(space->fiber());
      expect(')');
      std::vector<SetClass> fibers(space->atom_count(), SetClass::empty(space->fiber()));
      fibers[index] = std::move(inner);
      return SetClass::product(space, std::move(fibers));
    }
    if (name.empty()) {
      if (pos_ >= text_.size()) fail("unexpected end of expression");
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    fail("unknown primary '" + name + "'", at);
  }

  std::string_view text_;
  SpaceRef root_;
  std::size_t pos_ = 0;
};

}  // namespace

SetClass parse_set_expr(std::string_view text, const SpaceRef& space) {
  return SetParser(text, space).parse();
}

}  // namespace ergolab
