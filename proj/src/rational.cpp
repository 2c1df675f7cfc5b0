#include "vertexlab/rational.hpp"

#include <stdexcept>

namespace vertexlab {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Rational factorial(long long n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational binomial(long long n, long long k) {
  if (k < 0) return 0;
  // n (n-1) ... (n-k+1) / k!, valid for negative n as well
  mpz_class num = 1;
  for (long long j = 0; j < k; ++j) num *= static_cast<long>(n - j);
  Rational r(num);
  r /= factorial(k);
  r.canonicalize();
  return r;
}

} // namespace vertexlab
