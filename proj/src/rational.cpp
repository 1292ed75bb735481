#include "splitnash/rational.hpp"

#include <stdexcept>

namespace splitnash {

Rat rat_pow(const Rat& base, unsigned long exp) {
  if (exp == 0) return Rat(1);
  return Rat(pow(numerator(base), static_cast<unsigned>(exp)),
             pow(denominator(base), static_cast<unsigned>(exp)));
}

namespace {

BigInt parse_integer(const std::string& text, const std::string& whole) {
  std::size_t i = 0;
  std::size_t end = text.size();
  while (i < end && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (i == end) throw std::invalid_argument("empty numeric field in '" + whole + "'");
  std::size_t j = i;
  if (text[j] == '+' || text[j] == '-') ++j;
  if (j == end) throw std::invalid_argument("bare sign in '" + whole + "'");
  for (std::size_t k = j; k < end; ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw std::invalid_argument("malformed rational '" + whole + "'");
    }
  }
  return BigInt(text.substr(i, end - i));
}

}  // namespace

Rat parse_rational(const std::string& text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    return Rat(parse_integer(text, text));
  }
  if (text.find('/', slash + 1) != std::string::npos) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  BigInt num = parse_integer(text.substr(0, slash), text);
  BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(num, den);
}

std::string format_rational(const Rat& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace splitnash
