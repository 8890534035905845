#pragma once

// Polynomial expressions over Q. Multiplication is always written out;
// "2x" is rejected. '/' only joins two integer literals, so rational
// constants parse but there is no division of polynomials. Exponents are
// nonnegative integer literals.

#include <cctype>
#include <string>
#include <vector>

#include "wittres/multipoly.hpp"
#include "wittres/rational.hpp"

namespace wittres {

namespace detail {

struct PolyParser {
  const std::string& src;
  const QPoly::Ring& ring;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  PolyParser(const std::string& s, const QPoly::Ring& r) : src(s), ring(r) {}

  [[noreturn]] void error(const std::string& msg) const {
    fail(errc::parse_error, "line " + std::to_string(line) + " column " +
                                std::to_string(col) + ": " + msg);
  }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      advance();
  }

  bool at_end() {
    skip_space();
    return pos == src.size();
  }

  char peek() {
    skip_space();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  BigInt integer() {
    skip_space();
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      error("expected a number");
    std::string digits;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      digits += src[pos];
      advance();
    }
    return BigInt(digits);
  }

  QPoly expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    QPoly acc = term();
    if (neg) acc = acc.scale(Rational(-1));
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  QPoly term() {
    QPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  QPoly factor() {
    QPoly b = base();
    if (!eat('^')) return b;
    if (peek() == '-') error("negative exponents are not allowed");
    BigInt e = integer();
    if (e > 4096) error("exponent is too large");
    return b.pow(e.get_ui());
  }

  QPoly base() {
    const char c = peek();
    if (c == '(') {
      advance();
      QPoly inner = expr();
      if (!eat(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt num = integer();
      if (eat('/')) {
        BigInt den = integer();
        if (den == 0) error("zero denominator");
        return QPoly::from_rational(ring, Rational(num, den));
      }
      return QPoly::from_rational(ring, Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      skip_space();
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])))) {
        name += src[pos];
        advance();
      }
      for (size_t i = 0; i < ring.names.size(); ++i)
        if (ring.names[i] == name)
          return QPoly::variable(ring, static_cast<int>(i));
      error("unknown variable '" + name + "'");
    }
    if (c == '\0') error("unexpected end of input");
    error(std::string("unexpected character '") + c + "'");
  }

  QPoly run() {
    QPoly p = expr();
    if (!at_end()) error(std::string("unexpected character '") + peek() + "'");
    return p;
  }
};

}  // namespace detail

inline QPoly parse_poly(const std::string& src, const QPoly::Ring& ring) {
  return detail::PolyParser(src, ring).run();
}

// n <= 3 gets x, y, z; larger arities get x1..x9.
inline std::vector<std::string> standard_names(size_t n) {
  if (n == 0 || n > 9) fail(errc::unsupported, "between 1 and 9 variables");
  if (n <= 3) {
    std::vector<std::string> xyz = {"x", "y", "z"};
    xyz.resize(n);
    return xyz;
  }
  std::vector<std::string> names;
  for (size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

inline std::vector<Rational> parse_weights(const std::string& src) {
  std::vector<Rational> w;
  std::string cur;
  for (size_t i = 0; i <= src.size(); ++i) {
    if (i == src.size() || src[i] == ',') {
      if (cur.empty()) fail(errc::parse_error, "empty weight entry");
      w.push_back(Rational::parse(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(src[i]))) {
      cur += src[i];
    }
  }
  return w;
}

inline std::vector<BigInt> parse_integers(const std::string& src) {
  std::vector<BigInt> out;
  std::string cur;
  for (size_t i = 0; i <= src.size(); ++i) {
    if (i == src.size() || src[i] == ',') {
      if (cur.empty()) fail(errc::parse_error, "empty entry in integer list");
      for (size_t j = 0; j < cur.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(cur[j])) &&
            !(j == 0 && cur[j] == '-'))
          fail(errc::parse_error, "not an integer: '" + cur + "'");
      out.push_back(BigInt(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(src[i]))) {
      cur += src[i];
    }
  }
  return out;
}

}  // namespace wittres
