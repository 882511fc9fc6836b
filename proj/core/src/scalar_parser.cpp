#include <cctype>
#include <string>

#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"

namespace ergolab {
namespace {

std::string normalize_minus(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

class ScalarParser {
 public:
  explicit ScalarParser(std::string text) : text_(std::move(text)) {}

  Scalar parse() {
    Scalar value = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("scalar: " + message, 1, pos_ + 1);
  }

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

  Scalar sum() {
    Scalar value = product();
    for (;;) {
      if (eat('+')) {
        value += product();
      } else if (eat('-')) {
        value -= product();
      } else {
        return value;
      }
    }
  }

  Scalar product() {
    Scalar value = unary();
    for (;;) {
      if (eat('*')) {
        value *= unary();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        Scalar divisor = unary();
        if (divisor.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  mpz_class integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return mpz_class(text_.substr(start, pos_ - start));
  }

  Scalar primary() {
    skip_ws();
    if (eat('(')) {
      Scalar value = sum();
      if (!eat(')')) fail("expected ')'");
      return value;
    }
    if (text_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      const std::size_t at = pos_;
      mpz_class radicand = integer();
      if (!eat(')')) fail("expected ')'");
      if (radicand <= 0 || !radicand.fits_slong_p()) {
        pos_ = at;
        fail("sqrt needs a positive machine-size integer");
      }
      return Scalar::sqrt(radicand.get_si());
    }
    return Scalar(integer());
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text) {
  try {
    return ScalarParser(normalize_minus(text)).parse();
  } catch (const UsageError& e) {
    throw ParseError(std::string("scalar: ") + e.what(), 1, 1);
  } catch (const StructuralError& e) {
    throw ParseError(std::string("scalar: ") + e.what(), 1, 1);
  }
}

}  // namespace ergolab
