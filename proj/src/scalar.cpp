#include "hopt/scalar.hpp"

#include <cctype>

#include "hopt/errors.hpp"

namespace hopt {

Rational parse_rational(const std::string& text) {
  auto digits_ok = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && s[i] == '-') ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!digits_ok(text, true)) throw Error("malformed rational '" + text + "'");
    return Rational(mpz_class(text, 10));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw Error("malformed rational '" + text + "'");
  mpz_class d(den, 10);
  if (d == 0) throw Error("zero denominator in '" + text + "'");
  Rational q(mpz_class(num, 10), d);
  q.canonicalize();
  return q;
}

}  // namespace hopt
