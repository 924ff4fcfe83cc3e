#include "qlab/scalar.hpp"

#include "qlab/errors.hpp"

#include <cctype>
#include <string>

namespace qlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw ParseError("invalid scalar '" + std::string(whole) + "'");
  std::string digits(s.front() == '+' ? s.substr(1) : s);
  return Integer(digits);
}

} // namespace

Scalar parse_scalar(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty scalar");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("invalid scalar '" + std::string(text) + "'");
    Integer den(std::string{den_text});
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Scalar r(num, den);
    r.canonicalize();
    return r;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw ParseError("invalid scalar '" + std::string(text) + "'");
    Integer whole = int_part.empty() ? Integer(0) : Integer(std::string{int_part});
    Integer frac = frac_part.empty() ? Integer(0) : Integer(std::string{frac_part});
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Scalar r(whole * scale + frac, scale);
    r.canonicalize();
    return negative ? Scalar(-r) : r;
  }

  return Scalar(parse_integer(text, text));
}

std::string to_string(const Scalar& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Scalar& value) { return value.get_d(); }

Scalar abs(const Scalar& value) { return value < 0 ? Scalar(-value) : value; }

Integer floor(const Scalar& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil(const Scalar& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Scalar pow2(int k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return Scalar(p);
  return Scalar(Integer(1), p);
}

} // namespace qlab
