#pragma once

// Uniform access to the two scalar types the iteration code runs on:
// BigComplex for high-precision convergence studies and std::complex<double>
// for basin rendering.

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

#include "octoroot/numerics.hpp"

namespace octoroot {

using Complex = std::complex<double>;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<BigComplex> {
  using Real = BigReal;

  static BigComplex constant(const BigComplex& like, double re, double im = 0.0) {
    return {like.context(), re, im};
  }
  static BigComplex from_literal(const BigComplex& like, std::string_view literal) {
    return {like.context(), like.context().parse(literal), like.context().real(0L)};
  }
  static BigComplex pi(const BigComplex& like) {
    return {like.context(), like.context().pi(), like.context().real(0L)};
  }
  static BigComplex nan(const BigComplex& like) { return BigComplex::nan(like.context()); }
  static Real abs(const BigComplex& z) { return z.abs(); }
  static bool is_zero(const BigComplex& z) { return z.is_zero(); }
  static bool is_finite(const BigComplex& z) { return z.is_finite(); }
  static std::string describe(const BigComplex& z) { return z.to_string(); }
  static BigComplex exp(const BigComplex& z) { return octoroot::exp(z); }
  static BigComplex log(const BigComplex& z) { return octoroot::log(z); }
  static BigComplex sin(const BigComplex& z) { return octoroot::sin(z); }
  static BigComplex cos(const BigComplex& z) { return octoroot::cos(z); }
  static BigComplex sqrt(const BigComplex& z) { return octoroot::sqrt(z); }
  static BigComplex pow(const BigComplex& z, long n) { return octoroot::pow(z, n); }
  static BigComplex pow(const BigComplex& z, const BigComplex& w) { return octoroot::pow(z, w); }
  static Real noise_floor(const BigComplex& like) { return like.context().noise_floor(); }
  static double to_double(const Real& r) { return r.convert_to<double>(); }
};

template <>
struct ScalarTraits<Complex> {
  using Real = double;

  static Complex constant(const Complex&, double re, double im = 0.0) { return {re, im}; }
  static Complex from_literal(const Complex&, std::string_view literal) {
    return {std::strtod(std::string(literal).c_str(), nullptr), 0.0};
  }
  static Complex pi(const Complex&) { return {std::numbers::pi, 0.0}; }
  static Complex nan(const Complex&) {
    constexpr double q = std::numeric_limits<double>::quiet_NaN();
    return {q, q};
  }
  static Real abs(const Complex& z) { return std::abs(z); }
  static bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
  static bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  }
  static std::string describe(const Complex& z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
  }
  static Complex exp(const Complex& z) { return std::exp(z); }
  static Complex log(const Complex& z) {
    if (is_zero(z)) throw DomainError("logarithm of zero", describe(z));
    return std::log(z);
  }
  static Complex sin(const Complex& z) { return std::sin(z); }
  static Complex cos(const Complex& z) { return std::cos(z); }
  static Complex sqrt(const Complex& z) { return std::sqrt(z); }
  static Complex pow(const Complex& z, long n) {
    if (n < 0) {
      if (is_zero(z)) throw DomainError("negative power of zero", describe(z));
      return 1.0 / pow(z, -n);
    }
    Complex result{1.0, 0.0};
    Complex base = z;
    auto e = static_cast<unsigned long>(n);
    while (e != 0) {
      if (e & 1UL) result *= base;
      e >>= 1;
      if (e != 0) base *= base;
    }
    return result;
  }
  static Complex pow(const Complex& z, const Complex& w) {
    if (is_zero(z)) {
      if (w.real() > 0.0) return z;
      throw DomainError("non-positive power of zero", describe(z));
    }
    return std::exp(w * std::log(z));
  }
  static Real noise_floor(const Complex&) { return 1e-14; }
  static double to_double(Real r) { return r; }
};

template <class T>
concept Scalar = requires { typename ScalarTraits<T>::Real; } &&
                 requires(const T& a, const T& b, double c) {
                   { a + b } -> std::convertible_to<T>;
                   { a - b } -> std::convertible_to<T>;
                   { a * b } -> std::convertible_to<T>;
                   { a / b } -> std::convertible_to<T>;
                   { -a } -> std::convertible_to<T>;
                   { a * c } -> std::convertible_to<T>;
                   { c + a } -> std::convertible_to<T>;
                 };

template <Scalar T>
using RealOf = typename ScalarTraits<T>::Real;

template <Scalar T>
RealOf<T> magnitude(const T& z) {
  return ScalarTraits<T>::abs(z);
}

template <Scalar T>
bool is_exact_zero(const T& z) {
  return ScalarTraits<T>::is_zero(z);
}

template <Scalar T>
bool is_finite_value(const T& z) {
  return ScalarTraits<T>::is_finite(z);
}

}  // namespace octoroot
