#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>

namespace octoroot {

using BigReal = boost::multiprecision::mpfr_float;

/// Raised when values created under different precision contexts meet.
class ContextError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an elementary function is evaluated at a branch point or pole.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, std::string offending_value)
      : std::domain_error(what), value_(std::move(offending_value)) {}

  const std::string& offending_value() const noexcept { return value_; }

 private:
  std::string value_;
};

/// Working precision expressed in significant decimal digits.
class PrecisionContext {
 public:
  static constexpr unsigned kMinDigits = 16;

  explicit PrecisionContext(unsigned decimal_digits);

  unsigned digits() const noexcept { return digits_; }

  BigReal real(long value) const;
  BigReal real(double value) const;
  /// Decimal literal such as "0.35" or "1e-3", rounded once at this precision.
  BigReal parse(std::string_view literal) const;
  BigReal pi() const;
  /// 10^exponent at this precision.
  BigReal power_of_ten(long exponent) const;
  /// 10^-(digits - 10): the magnitude below which a residual or error is noise.
  BigReal noise_floor() const;

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  unsigned digits_;
};

class BigComplex {
 public:
  BigComplex(const PrecisionContext& ctx, BigReal re, BigReal im);
  BigComplex(const PrecisionContext& ctx, long re, long im = 0);
  BigComplex(const PrecisionContext& ctx, double re, double im);

  static BigComplex nan(const PrecisionContext& ctx);
  static BigComplex parse(const PrecisionContext& ctx, std::string_view re,
                          std::string_view im = "0");

  const BigReal& re() const noexcept { return re_; }
  const BigReal& im() const noexcept { return im_; }
  const PrecisionContext& context() const noexcept { return ctx_; }

  bool is_finite() const;
  bool is_zero() const;
  bool is_real() const { return im_.is_zero(); }

  BigReal abs() const;
  BigReal arg() const;
  BigComplex conj() const;

  BigComplex operator-() const;
  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }

  // Mixed arithmetic with small exact constants; the constant adopts the
  // context of the BigComplex operand.
  friend BigComplex operator+(const BigComplex& a, double b) { return a + a.lift(b); }
  friend BigComplex operator+(double a, const BigComplex& b) { return b.lift(a) + b; }
  friend BigComplex operator-(const BigComplex& a, double b) { return a - a.lift(b); }
  friend BigComplex operator-(double a, const BigComplex& b) { return b.lift(a) - b; }
  friend BigComplex operator*(const BigComplex& a, double b) { return a * a.lift(b); }
  friend BigComplex operator*(double a, const BigComplex& b) { return b.lift(a) * b; }
  friend BigComplex operator/(const BigComplex& a, double b) { return a / a.lift(b); }
  friend BigComplex operator/(double a, const BigComplex& b) { return b.lift(a) / b; }

  /// Exact equality of both components; contexts must match.
  friend bool operator==(const BigComplex& a, const BigComplex& b);

  std::string to_string(int significant_digits = 20) const;

 private:
  BigComplex lift(double v) const { return {ctx_, v, 0.0}; }
  void require_same_context(const BigComplex& other) const;
  bool any_nonfinite(const BigComplex& other) const;
  void make_nan();

  PrecisionContext ctx_;
  BigReal re_;
  BigReal im_;
};

// Principal-branch elementary functions.
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);  // DomainError at 0
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);
BigComplex pow(const BigComplex& z, long n);  // DomainError for 0 with n < 0
BigComplex pow(const BigComplex& z, const BigComplex& w);  // DomainError at z = 0 unless Re w > 0

std::complex<double> to_complex_double(const BigComplex& z);
BigComplex from_complex_double(const PrecisionContext& ctx, std::complex<double> z);

enum class MantissaRounding { nearest, truncate };

/// Render as "0.XXXe±EEE" with the given number of significant digits.
/// The mantissa is rounded to nearest unless truncation is asked for.
std::string format_scientific(const BigReal& value, int significant_digits,
                              MantissaRounding mode = MantissaRounding::nearest);

}  // namespace octoroot
