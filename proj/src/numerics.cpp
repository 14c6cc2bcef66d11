#include "octoroot/numerics.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace octoroot {

namespace {

BigReal make_real(unsigned digits) { return BigReal(0, digits); }

BigReal real_from_string(unsigned digits, std::string_view literal) {
  BigReal r = make_real(digits);
  const std::string text(literal);
  if (mpfr_set_str(r.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal literal: '" + text + "'");
  }
  return r;
}

}  // namespace

PrecisionContext::PrecisionContext(unsigned decimal_digits) : digits_(decimal_digits) {
  if (decimal_digits < kMinDigits) {
    throw std::invalid_argument(
        fmt::format("precision must be at least {} decimal digits, got {}", kMinDigits,
                    decimal_digits));
  }
}

BigReal PrecisionContext::real(long value) const { return BigReal(value, digits_); }

BigReal PrecisionContext::real(double value) const { return BigReal(value, digits_); }

BigReal PrecisionContext::parse(std::string_view literal) const {
  return real_from_string(digits_, literal);
}

BigReal PrecisionContext::pi() const {
  BigReal r = make_real(digits_);
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

BigReal PrecisionContext::power_of_ten(long exponent) const {
  BigReal ten = real(10L);
  BigReal r = make_real(digits_);
  mpfr_pow_si(r.backend().data(), ten.backend().data(), exponent, MPFR_RNDN);
  return r;
}

BigReal PrecisionContext::noise_floor() const {
  return power_of_ten(-static_cast<long>(digits_) + 10);
}

BigComplex::BigComplex(const PrecisionContext& ctx, BigReal re, BigReal im)
    : ctx_(ctx), re_(std::move(re)), im_(std::move(im)) {
  if (re_.precision() != ctx.digits()) re_.precision(ctx.digits());
  if (im_.precision() != ctx.digits()) im_.precision(ctx.digits());
}

BigComplex::BigComplex(const PrecisionContext& ctx, long re, long im)
    : ctx_(ctx), re_(ctx.real(re)), im_(ctx.real(im)) {}

BigComplex::BigComplex(const PrecisionContext& ctx, double re, double im)
    : ctx_(ctx), re_(ctx.real(re)), im_(ctx.real(im)) {}

BigComplex BigComplex::nan(const PrecisionContext& ctx) {
  BigComplex z(ctx, 0L, 0L);
  z.make_nan();
  return z;
}

BigComplex BigComplex::parse(const PrecisionContext& ctx, std::string_view re,
                             std::string_view im) {
  return {ctx, ctx.parse(re), ctx.parse(im)};
}

bool BigComplex::is_finite() const {
  return mpfr_number_p(re_.backend().data()) && mpfr_number_p(im_.backend().data());
}

bool BigComplex::is_zero() const { return re_.is_zero() && im_.is_zero(); }

BigReal BigComplex::abs() const { return boost::multiprecision::hypot(re_, im_); }

BigReal BigComplex::arg() const { return boost::multiprecision::atan2(im_, re_); }

BigComplex BigComplex::conj() const { return {ctx_, re_, -im_}; }

BigComplex BigComplex::operator-() const { return {ctx_, -re_, -im_}; }

void BigComplex::require_same_context(const BigComplex& other) const {
  if (!(ctx_ == other.ctx_)) {
    throw ContextError(fmt::format("precision mismatch: {} vs {} digits", ctx_.digits(),
                                   other.ctx_.digits()));
  }
}

bool BigComplex::any_nonfinite(const BigComplex& other) const {
  return !is_finite() || !other.is_finite();
}

void BigComplex::make_nan() {
  mpfr_set_nan(re_.backend().data());
  mpfr_set_nan(im_.backend().data());
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  require_same_context(rhs);
  if (any_nonfinite(rhs)) {
    make_nan();
    return *this;
  }
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  require_same_context(rhs);
  if (any_nonfinite(rhs)) {
    make_nan();
    return *this;
  }
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  require_same_context(rhs);
  if (any_nonfinite(rhs)) {
    make_nan();
    return *this;
  }
  if (im_.is_zero() && rhs.im_.is_zero()) {
    re_ *= rhs.re_;
    return *this;
  }
  BigReal re = re_ * rhs.re_ - im_ * rhs.im_;
  BigReal im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  require_same_context(rhs);
  if (any_nonfinite(rhs) || rhs.is_zero()) {
    make_nan();
    return *this;
  }
  if (rhs.im_.is_zero()) {
    re_ /= rhs.re_;
    im_ /= rhs.re_;
    return *this;
  }
  BigReal denom = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
  BigReal re = (re_ * rhs.re_ + im_ * rhs.im_) / denom;
  BigReal im = (im_ * rhs.re_ - re_ * rhs.im_) / denom;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

bool operator==(const BigComplex& a, const BigComplex& b) {
  a.require_same_context(b);
  return a.re_ == b.re_ && a.im_ == b.im_;
}

std::string BigComplex::to_string(int significant_digits) const {
  const auto part = [&](const BigReal& v) {
    return v.str(significant_digits, std::ios_base::scientific);
  };
  if (im_.is_zero()) return part(re_);
  return fmt::format("{}{}{}i", part(re_), im_.sign() < 0 ? "" : "+", part(im_));
}

BigComplex exp(const BigComplex& z) {
  if (!z.is_finite()) return BigComplex::nan(z.context());
  BigReal scale = boost::multiprecision::exp(z.re());
  if (z.im().is_zero()) return {z.context(), scale, z.im()};
  return {z.context(), scale * boost::multiprecision::cos(z.im()),
          scale * boost::multiprecision::sin(z.im())};
}

BigComplex log(const BigComplex& z) {
  if (!z.is_finite()) return BigComplex::nan(z.context());
  if (z.is_zero()) throw DomainError("logarithm of zero", z.to_string());
  if (z.im().is_zero() && z.re().sign() > 0) {
    return {z.context(), boost::multiprecision::log(z.re()), z.im()};
  }
  return {z.context(), boost::multiprecision::log(z.abs()), z.arg()};
}

BigComplex sin(const BigComplex& z) {
  if (!z.is_finite()) return BigComplex::nan(z.context());
  if (z.im().is_zero()) return {z.context(), boost::multiprecision::sin(z.re()), z.im()};
  return {z.context(), boost::multiprecision::sin(z.re()) * boost::multiprecision::cosh(z.im()),
          boost::multiprecision::cos(z.re()) * boost::multiprecision::sinh(z.im())};
}

BigComplex cos(const BigComplex& z) {
  if (!z.is_finite()) return BigComplex::nan(z.context());
  if (z.im().is_zero()) {
    return {z.context(), boost::multiprecision::cos(z.re()), BigReal(z.im())};
  }
  return {z.context(), boost::multiprecision::cos(z.re()) * boost::multiprecision::cosh(z.im()),
          -(boost::multiprecision::sin(z.re()) * boost::multiprecision::sinh(z.im()))};
}

BigComplex sqrt(const BigComplex& z) {
  if (!z.is_finite()) return BigComplex::nan(z.context());
  if (z.is_zero()) return z;
  if (z.im().is_zero() && z.re().sign() > 0) {
    return {z.context(), boost::multiprecision::sqrt(z.re()), z.im()};
  }
  // Principal root: sqrt((|z| + re)/2) + i sign(im) sqrt((|z| - re)/2).
  const BigReal modulus = z.abs();
  BigReal re = boost::multiprecision::sqrt((modulus + z.re()) / 2);
  BigReal im = boost::multiprecision::sqrt((modulus - z.re()) / 2);
  if (z.im().sign() < 0) im = -im;
  return {z.context(), std::move(re), std::move(im)};
}

BigComplex pow(const BigComplex& z, long n) {
  if (n < 0) {
    if (z.is_zero()) throw DomainError("negative power of zero", z.to_string());
    return 1.0 / pow(z, -n);
  }
  BigComplex result(z.context(), 1L);
  BigComplex base = z;
  auto e = static_cast<unsigned long>(n);
  while (e != 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

BigComplex pow(const BigComplex& z, const BigComplex& w) {
  if (z.is_zero()) {
    if (w.re().sign() > 0) return z;
    throw DomainError("non-positive power of zero", z.to_string());
  }
  return exp(w * log(z));
}

std::complex<double> to_complex_double(const BigComplex& z) {
  return {z.re().convert_to<double>(), z.im().convert_to<double>()};
}

BigComplex from_complex_double(const PrecisionContext& ctx, std::complex<double> z) {
  return {ctx, z.real(), z.imag()};
}

std::string format_scientific(const BigReal& value, int significant_digits, MantissaRounding mode) {
  if (value.is_zero()) return "0";
  if (!mpfr_number_p(value.backend().data())) return "nan";
  // Truncation works on the correctly rounded decimal expansion with a few
  // guard digits, so exact decimals such as 0.35 are not cut to 0.349.
  const int guard = mode == MantissaRounding::truncate ? 6 : 0;
  // mpfr yields d.ddd with a decimal exponent; shift to the 0.dddd form.
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10,
                           static_cast<size_t>(significant_digits + guard),
                           value.backend().data(), MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!digits.empty() && digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  digits.resize(static_cast<std::size_t>(significant_digits));
  return fmt::format("{}0.{}e{}{}", sign, digits, exponent < 0 ? "-" : "+",
                     exponent < 0 ? -exponent : exponent);
}

}  // namespace octoroot
