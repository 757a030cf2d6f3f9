#include "alphagamma/numeric.hpp"

#include <stdexcept>

namespace ag {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      mpz_class num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
      if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string intpart = s.substr(0, dot), frac = s.substr(dot + 1);
      bool neg = !intpart.empty() && intpart[0] == '-';
      if (neg || (!intpart.empty() && intpart[0] == '+')) intpart = intpart.substr(1);
      if (intpart.empty()) intpart = "0";
      if (frac.empty()) frac = "0";
      mpz_class num(intpart + frac, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      Rational q(neg ? mpz_class(-num) : num, den);
      q.canonicalize();
      return q;
    }
    return Rational(mpz_class(s, 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

template <class R>
void validate(const Params<R>& p) {
  if (!(p.gamma >= 0 && p.gamma <= p.alpha && p.alpha <= 1)) {
    throw std::invalid_argument("parameters must satisfy 0 <= gamma <= alpha <= 1");
  }
}

template void validate(const Params<Rational>&);
template void validate(const Params<double>&);

Params<Rational> parse_params(std::string_view alpha, std::string_view gamma) {
  Params<Rational> p{parse_rational(alpha), parse_rational(gamma)};
  validate(p);
  return p;
}

}  // namespace ag
