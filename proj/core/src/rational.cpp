#include "lattrace/rational.hpp"

#include "lattrace/error.hpp"

namespace lattrace {

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& part) {
    if (part.empty()) throw Error(ErrorCode::InvalidArgument, "bad rational '" + text + "'");
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) throw Error(ErrorCode::InvalidArgument, "bad rational '" + text + "'");
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        throw Error(ErrorCode::InvalidArgument, "bad rational '" + text + "'");
      }
    }
    BigInt v(part[0] == '+' ? part.substr(1) : part);
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
  return Rational(num, den);
}

}  // namespace lattrace
