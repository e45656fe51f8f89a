#include "loopfock/rational.hpp"

#include "loopfock/errors.hpp"

namespace loopfock {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw InvalidArgument("cannot parse rational '" + text + "'");
  }
  if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational pow_rational(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw InvalidArgument("zero to a negative power");
    return pow_rational(Rational(1) / q, -e);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace loopfock
