#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"

namespace ergolab {
namespace {

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Value;
struct Field;
using Block = std::vector<Field>;
using List = std::vector<Value>;

struct Value {
  Location where;
  std::variant<std::string, List, Block> data;
};

struct Field {
  Location where;
  std::string key;
  Value value;
};

class SpecReader {
 public:
  explicit SpecReader(std::string_view text) : text_(text) {}

  Block document() {
    Block fields = fields_until('\0');
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return fields;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, here_.line, here_.column);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++here_.line;
      here_.column = 1;
    } else {
      ++here_.column;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  bool at(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    advance();
  }

  static bool key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  Block fields_until(char close) {
    Block fields;
    for (;;) {
      skip();
      if (pos_ >= text_.size()) {
        if (close != '\0') fail(std::string("expected '") + close + "' before end of input");
        return fields;
      }
      if (text_[pos_] == close) return fields;
      Field field;
      field.where = here_;
      while (pos_ < text_.size() && key_char(text_[pos_])) {
        field.key.push_back(text_[pos_]);
        advance();
      }
      if (field.key.empty()) fail("expected a key");
      if (field.key == "of") {
        if (!at('{')) fail("expected '{' after 'of'");
      } else {
        expect('=');
      }
      field.value = value();
      fields.push_back(std::move(field));
    }
  }

  Value value() {
    skip();
    Value v;
    v.where = here_;
    if (pos_ >= text_.size()) fail("expected a value");
    const char c = text_[pos_];
    if (c == '{') {
      advance();
      v.data = fields_until('}');
      expect('}');
      return v;
    }
    if (c == '[') {
      advance();
      List items;
      if (!at(']')) {
        for (;;) {
          items.push_back(value());
          if (at(']')) break;
          expect(',');
        }
      }
      expect(']');
      v.data = std::move(items);
      return v;
    }
    // Scalar or bare word. Parenthesised text may contain spaces.
    std::string word;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (d == '(') {
        ++depth;
      } else if (d == ')') {
        if (depth == 0) fail("unbalanced ')'");
        --depth;
      } else if (depth == 0 && (std::isspace(static_cast<unsigned char>(d)) || d == ',' || d == ']' || d == '}' ||
                                d == '#' || d == '{' || d == '[')) {
        break;
      }
      word.push_back(d);
      advance();
    }
    if (depth != 0) fail("unbalanced '('");
    if (word.empty()) fail("expected a value");
    v.data = std::move(word);
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Location here_;
};

std::string where(const Location& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": ";
}

class SpecBuilder {
 public:
  System build(const Block& block, const Location& loc) {
    std::map<std::string, const Field*> fields;
    for (const Field& field : block) {
      if (!fields.emplace(field.key, &field).second) {
        throw ParseError("duplicate key '" + field.key + "'", field.where.line, field.where.column);
      }
    }
    const Field* kind_field = take(fields, "kind");
    if (kind_field == nullptr) throw SemanticError(where(loc) + "missing 'kind'");
    const std::string kind = word(kind_field->value);

    System result = System::identity(1);
    try {
      if (kind == "odometer") {
        result = System::odometer(static_cast<unsigned>(integer(required(fields, "base", loc).value)));
      } else if (kind == "rotation") {
        result = System::rotation(scalar(required(fields, "alpha", loc).value));
      } else if (kind == "identity") {
        result = System::identity(static_cast<std::size_t>(integer(required(fields, "n", loc).value)));
      } else if (kind == "permutation") {
        std::vector<std::size_t> map;
        for (const Value& item : list(required(fields, "perm", loc).value)) {
          map.push_back(static_cast<std::size_t>(integer(item)));
        }
        if (const Field* w = take(fields, "weights")) {
          std::vector<Scalar> weights;
          for (const Value& item : list(w->value)) weights.push_back(scalar(item));
          result = System::permutation(std::move(map), std::move(weights));
        } else {
          result = System::permutation(std::move(map));
        }
      } else if (kind == "product") {
        const Field& finite = required(fields, "finite", loc);
        const Field& fiber = required(fields, "fiber", loc);
        result = System::product(build(block_of(finite.value), finite.value.where),
                                 build(block_of(fiber.value), fiber.value.where));
      } else if (kind == "power") {
        const auto k = integer(required(fields, "k", loc).value);
        if (k <= 0) throw SemanticError("power exponent must be positive");
        const Field& of = required(fields, "of", loc);
        result = build(block_of(of.value), of.value.where).power(static_cast<std::uint64_t>(k));
      } else {
        throw ParseError("unknown kind '" + kind + "'", kind_field->value.where.line, kind_field->value.where.column);
      }
    } catch (const StructuralError& e) {
      throw SemanticError(where(loc) + e.what());
    } catch (const UsageError& e) {
      throw SemanticError(where(loc) + e.what());
    } catch (const SemanticError& e) {
      const std::string message = e.what();
      if (!message.empty() && std::isdigit(static_cast<unsigned char>(message[0]))) throw;
      throw SemanticError(where(loc) + message);
    }
    if (!fields.empty()) {
      const Field& extra = *fields.begin()->second;
      throw ParseError("unknown key '" + extra.key + "' for kind " + kind, extra.where.line, extra.where.column);
    }
    return result;
  }

 private:
  static const Field* take(std::map<std::string, const Field*>& fields, const std::string& key) {
    auto it = fields.find(key);
    if (it == fields.end()) return nullptr;
    const Field* field = it->second;
    fields.erase(it);
    return field;
  }

  static const Field& required(std::map<std::string, const Field*>& fields, const std::string& key,
                               const Location& loc) {
    const Field* field = take(fields, key);
    if (field == nullptr) throw ParseError("missing '" + key + "'", loc.line, loc.column);
    return *field;
  }

  [[noreturn]] static void type_error(const Value& v, const std::string& expected) {
    throw ParseError("expected " + expected, v.where.line, v.where.column);
  }

  static const std::string& word(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
    type_error(v, "a word");
  }

  static const List& list(const Value& v) {
    if (const auto* l = std::get_if<List>(&v.data)) return *l;
    type_error(v, "a list");
  }

  static const Block& block_of(const Value& v) {
    if (const auto* b = std::get_if<Block>(&v.data)) return *b;
    type_error(v, "a '{...}' block");
  }

  static long long integer(const Value& v) {
    const std::string& text = word(v);
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(text, &used);
    } catch (const std::exception&) {
      type_error(v, "an integer");
    }
    if (used != text.size()) type_error(v, "an integer");
    return value;
  }

  static Scalar scalar(const Value& v) {
    try {
      return parse_scalar(word(v));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), v.where.line, v.where.column + e.column() - 1);
    }
  }
};

void write_spec(std::ostringstream& out, const System& system, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (system.kind()) {
    case SystemKind::odometer:
      out << "kind=odometer base=" << system.base();
      return;
    case SystemKind::rotation:
      out << "kind=rotation alpha=" << system.alpha().to_string();
      return;
    case SystemKind::permutation: {
      out << "kind=permutation perm=[";
      const auto& map = system.map();
      for (std::size_t i = 0; i < map.size(); ++i) out << (i ? ", " : "") << map[i];
      out << "] weights=[";
      const auto& weights = system.space()->weights();
      for (std::size_t i = 0; i < weights.size(); ++i) out << (i ? ", " : "") << weights[i].to_string();
      out << "]";
      return;
    }
    case SystemKind::product:
      out << "kind=product\n" << pad << "finite={ ";
      write_spec(out, system.finite(), indent + 1);
      out << " }\n" << pad << "fiber={ ";
      write_spec(out, system.fiber(), indent + 1);
      out << " }";
      return;
    case SystemKind::power:
      out << "kind=power k=" << system.exponent() << " of { ";
      write_spec(out, system.power_base(), indent + 1);
      out << " }";
      return;
  }
}

}  // namespace

System parse_system_spec(std::string_view text) {
  const Block document = SpecReader(text).document();
  return SpecBuilder().build(document, Location{});
}

std::string to_spec_text(const System& system) {
  std::ostringstream out;
  write_spec(out, system, 0);
  out << "\n";
  return out.str();
}

}  // namespace ergolab
