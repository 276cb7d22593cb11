#include "pnts/rational.hpp"

#include <cctype>
#include <ostream>

#include "pnts/error.hpp"

namespace pnts {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i)
    h = h * 1000003u ^ static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i));
  return h;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw ModelError("rational with zero denominator");
  q_ = mpq_class(num, 1);
  q_ /= den;
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw ModelError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  const auto fail = [&] { return ModelError("not a rational literal: '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  mpq_class value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    mpz_class d{std::string(den)};
    if (d == 0) throw ModelError("rational with zero denominator: '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(num)), d);
  } else {
    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) throw fail();
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      const auto ip = mantissa.substr(0, dot);
      const auto fp = mantissa.substr(dot + 1);
      if (ip.empty() && fp.empty()) throw fail();
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) throw fail();
      digits = std::string(ip) + std::string(fp);
      fraction_digits = static_cast<long>(fp.size());
    } else {
      if (!all_digits(mantissa)) throw fail();
      digits = std::string(mantissa);
    }
    const long shift = exponent - fraction_digits;
    mpz_class n(digits);
    if (shift >= 0)
      value = mpq_class(n * pow10(static_cast<unsigned long>(shift)));
    else
      value = mpq_class(n, pow10(static_cast<unsigned long>(-shift)));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(std::move(value));
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t Rational::hash() const {
  return hash_mpz(q_.get_num()) * 31u ^ hash_mpz(q_.get_den());
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace pnts
