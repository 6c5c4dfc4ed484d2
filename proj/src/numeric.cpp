#include "numeric.hpp"

namespace orderlab {

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find('.') != std::string::npos)
    throw std::invalid_argument("rational literals are decimal-free, got: " + s);
  auto slash = s.find('/');
  auto parse_int = [](const std::string& t) -> BigInt {
    if (t.empty()) throw std::invalid_argument("empty integer literal");
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw std::invalid_argument("bad integer literal: " + t);
    for (; i < t.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(t[i])))
        throw std::invalid_argument("bad integer literal: " + t);
    return BigInt(t);
  };
  if (slash == std::string::npos) return Rat(parse_int(s));
  BigInt num = parse_int(s.substr(0, slash));
  BigInt den = parse_int(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rat(num, den);
}

std::string rat_str(const Rat& r) {
  std::string n = numerator(r).str();
  if (denominator(r) == 1) return n;
  return n + "/" + denominator(r).str();
}

std::string Quad::str() const {
  if (b == 0) return rat_str(a);
  std::string s = rat_str(a);
  s += (b.sign() < 0) ? "-" : "+";
  Rat ab = b.sign() < 0 ? Rat(-b) : b;
  if (ab != 1) s += rat_str(ab) + "*";
  s += "sqrt2";
  return s;
}

}  // namespace orderlab
