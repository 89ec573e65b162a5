#pragma once

// Scalar backends.
//
// Two backends are supported throughout the library:
//   - exact: GaussianRational, a complex number whose real and imaginary
//     parts are arbitrary precision rationals (GMP mpq_class);
//   - float: std::complex<double>.
// Everything that is generic over the backend goes through scalar_traits.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace seplen {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT implicit
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r) {}  // NOLINT implicit
  GaussianRational(int r) : re(r) {}   // NOLINT implicit

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    const Rational n = o.re * o.re + o.im * o.im;
    if (n == 0) throw std::domain_error("GaussianRational: division by zero");
    Rational r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = std::move(r);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re), Rational(-a.im)}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  [[nodiscard]] GaussianRational conj() const { return {re, Rational(-im)}; }
  [[nodiscard]] Rational norm() const { return re * re + im * im; }
  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

/// Canonical rational text: "p" for integers, otherwise "p/q" in lowest terms.
inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

/// Parses "p", "p/q" or a decimal like "-1.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  const std::size_t frac_len = s.size() - dot - 1;
  Integer num;
  if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0) {
    throw std::invalid_argument("malformed decimal literal: " + s);
  }
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const GaussianRational& z) {
  if (sgn(z.im) == 0) return to_string(z.re);
  std::string out = sgn(z.re) == 0 ? std::string() : to_string(z.re);
  const bool neg = sgn(z.im) < 0;
  const Rational mag = neg ? Rational(-z.im) : z.im;
  if (!out.empty()) out += neg ? "-" : "+";
  else if (neg) out += "-";
  if (mag != 1) out += to_string(mag) + "*";
  out += "i";
  return out;
}

enum class Backend { automatic, exact, floating };

inline std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::automatic: return "auto";
    case Backend::exact: return "exact";
    case Backend::floating: return "float";
  }
  return "auto";
}

inline Backend parse_backend(std::string_view s) {
  if (s == "auto") return Backend::automatic;
  if (s == "exact") return Backend::exact;
  if (s == "float") return Backend::floating;
  throw std::invalid_argument("unknown backend: " + std::string(s));
}

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
  using real_type = double;
  static constexpr bool exact = false;
  static Complex i() { return {0.0, 1.0}; }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static double real(const Complex& z) { return z.real(); }
  static double imag(const Complex& z) { return z.imag(); }
  static Complex from_parts(double re, double im) { return {re, im}; }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  static double magnitude(const Complex& z) { return std::abs(z); }
};

template <>
struct scalar_traits<GaussianRational> {
  using real_type = Rational;
  static constexpr bool exact = true;
  static GaussianRational i() { return GaussianRational::i(); }
  static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
  static Rational real(const GaussianRational& z) { return z.re; }
  static Rational imag(const GaussianRational& z) { return z.im; }
  static GaussianRational from_parts(Rational re, Rational im) { return {std::move(re), std::move(im)}; }
  static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
  static double magnitude(const GaussianRational& z) { return std::abs(Complex(z.re.get_d(), z.im.get_d())); }
};

template <class T>
concept ExactScalar = scalar_traits<T>::exact;

inline Complex to_complex(const GaussianRational& z) { return {z.re.get_d(), z.im.get_d()}; }

}  // namespace seplen
