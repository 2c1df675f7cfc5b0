#include "vertexlab/parse.hpp"

#include <cctype>
#include <functional>
#include <utility>

namespace vertexlab {

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

/// Character cursor tracking line and column.
class Cursor {
public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }
  bool accept_word(const std::string& w) {
    skip_space();
    if (text_.compare(pos_, w.size(), w) != 0) return false;
    for (std::size_t k = 0; k < w.size(); ++k) advance();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  long long integer() {
    skip_space();
    std::string digits;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      digits += text_[pos_];
      advance();
    }
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_];
      advance();
    }
    if (digits.empty() || digits == "-" || digits == "+") fail("expected an integer");
    try {
      return std::stoll(digits);
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }
  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  /// Unsigned rational "p" or "p/q".
  Rational rational() {
    Rational num = rat(integer());
    if (!accept('/')) return num;
    long long den = integer();
    if (den == 0) fail("zero denominator");
    return num / rat(den);
  }
  /// Text up to the next top-level ',' or ')', with balanced parentheses inside.
  std::string name() {
    skip_space();
    std::string out;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (depth == 0 && (c == ',' || c == ')')) break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      out += c;
      advance();
    }
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    if (out.empty()) fail("expected a name");
    return out;
  }
  std::vector<long long> integers(char close) {
    std::vector<long long> v;
    if (accept(close)) return v;
    do v.push_back(integer());
    while (accept(','));
    expect(close);
    return v;
  }
  /// Line and column of the next non-space character.
  std::pair<int, int> position() {
    skip_space();
    return {line_, column_};
  }
  [[noreturn]] void fail(const std::string& message) {
    skip_space();
    throw SyntaxError(message, line_, column_);
  }
  [[noreturn]] static void fail_at(const std::pair<int, int>& at, const std::string& message) {
    throw SyntaxError(message, at.first, at.second);
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

/// Shared sum-of-products driver; `atom` parses one factor that is not 'vac' or 'e[...]'.
template <class Tag>
LinComb<Tag> parse_sum(const std::string& text, const FGAbelianGroup& sectors,
                       const std::function<LinComb<Tag>(Cursor&)>& atom) {
  Cursor cur(text);
  auto sector_of = [&](const std::vector<long long>& ints) {
    if (ints.size() != sectors.size())
      cur.fail("sector needs " + std::to_string(sectors.size()) + " coordinates");
    return sectors.canonical(ints);
  };
  auto unit = [&](const Coords& a) { return LinComb<Tag>(Monomial<Tag>{a, {}, {}}, Rational(1)); };
  auto factor = [&]() -> LinComb<Tag> {
    if (cur.accept_word("vac")) return unit(sectors.zero());
    if (cur.accept_word("e[")) return unit(sector_of(cur.integers(']')));
    return atom(cur);
  };
  auto term = [&]() {
    Rational coef = 1;
    LinComb<Tag> acc;
    if (cur.at_digit()) {
      coef = cur.rational();
      if (!cur.accept('*')) {
        // A bare number is a multiple of the vacuum.
        return unit(sectors.zero()) * coef;
      }
    }
    acc = factor();
    while (cur.accept('*')) acc = multiply(sectors, acc, factor());
    return acc * coef;
  };

  if (cur.done()) cur.fail("empty expression");
  LinComb<Tag> out;
  Rational sign = 1;
  if (cur.accept('-')) sign = -1;
  out += term() * sign;
  while (!cur.done()) {
    if (cur.accept('+'))
      sign = 1;
    else if (cur.accept('-'))
      sign = -1;
    else
      cur.fail("expected '+', '-' or end of input");
    out += term() * sign;
  }
  return out;
}

/// Reads a generator name and resolves it, reporting unknown names at their first character.
int generator(Cursor& cur, const std::vector<std::string>& names) {
  const auto at = cur.position();
  const std::string name = cur.name();
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<int>(k);
  Cursor::fail_at(at, "unknown generator '" + name + "'");
}

int positive_depth(Cursor& cur) {
  const auto at = cur.position();
  long long i = cur.integer();
  if (i < 1) Cursor::fail_at(at, "depth must be at least 1");
  return static_cast<int>(i);
}

} // namespace

FockState parse_state(const FockSpace& space, const std::string& text) {
  const auto& lat = space.lattice();
  return parse_sum<FockTag>(text, space.sectors(), [&](Cursor& cur) {
    bool odd = false;
    if (cur.accept_word("b("))
      odd = false;
    else if (cur.accept_word("f("))
      odd = true;
    else
      cur.fail("expected 'vac', 'e[', 'b(' or 'f('");
    const int gen = generator(cur, odd ? lat.odd_names : lat.even_names);
    cur.expect(',');
    const int depth = positive_depth(cur);
    cur.expect(')');
    BasisMonomial m;
    m.sector = space.sectors().zero();
    if (odd)
      m.odd.push_back(Mode{gen, depth});
    else
      m.even.emplace_back(Mode{gen, depth}, 1);
    return FockState(m, Rational(1));
  });
}

HClass parse_class(const VarietyModel& model, const std::string& text) {
  const FGAbelianGroup sectors = model.bplus();
  std::vector<std::string> names;
  for (const auto& k : model.kbasis) names.push_back(k.name);
  return parse_sum<HomologyTag>(text, sectors, [&](Cursor& cur) {
    if (!cur.accept_word("u(")) cur.fail("expected 'vac', 'e[' or 'u('");
    auto ints = cur.integers(';');
    if (ints.size() != sectors.size()) cur.fail("sector needs " + std::to_string(sectors.size()) + " coordinates");
    const int v = generator(cur, names);
    cur.expect(',');
    const int depth = positive_depth(cur);
    cur.expect(')');
    return u_generator(model, sectors.canonical(ints), v, depth);
  });
}

} // namespace vertexlab
