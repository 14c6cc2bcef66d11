#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "octoroot/scalar.hpp"

namespace octoroot {

/// Division by a jet whose constant term is zero.
class SingularJetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Truncated Taylor series c0 + c1 h + ... + c_{N-1} h^{N-1} in a formal
/// increment h. A jet seeded as (x, 1, 0, ...) and pushed through an analytic
/// expression carries f^(k)(x)/k! in coefficient k.
template <Scalar T, std::size_t N = 5>
class Jet {
  static_assert(N >= 1);

 public:
  using Coeffs = std::array<T, N>;
  static constexpr std::size_t kSize = N;

  explicit Jet(Coeffs coeffs) : c_(std::move(coeffs)) {}

  static Jet constant(const T& value) {
    return Jet(filled(value, [&](std::size_t k) {
      return k == 0 ? value : ScalarTraits<T>::constant(value, 0.0);
    }));
  }

  static Jet variable(const T& at) {
    return Jet(filled(at, [&](std::size_t k) {
      if (k == 0) return at;
      return ScalarTraits<T>::constant(at, k == 1 ? 1.0 : 0.0);
    }));
  }

  const T& operator[](std::size_t k) const { return c_[k]; }
  const Coeffs& coeffs() const noexcept { return c_; }
  const T& value() const { return c_[0]; }

  bool is_finite() const {
    for (const auto& v : c_) {
      if (!is_finite_value(v)) return false;
    }
    return true;
  }

  Jet operator-() const {
    Coeffs out = c_;
    for (auto& v : out) v = -v;
    return Jet(std::move(out));
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Coeffs out = a.c_;
    for (std::size_t k = 0; k < N; ++k) out[k] = out[k] + b.c_[k];
    return Jet(std::move(out));
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    Coeffs out = a.c_;
    for (std::size_t k = 0; k < N; ++k) out[k] = out[k] - b.c_[k];
    return Jet(std::move(out));
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Coeffs out = a.c_;
    for (std::size_t k = 0; k < N; ++k) {
      T sum = a.c_[0] * b.c_[k];
      for (std::size_t i = 1; i <= k; ++i) sum = sum + a.c_[i] * b.c_[k - i];
      out[k] = std::move(sum);
    }
    return Jet(std::move(out));
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (is_exact_zero(b.c_[0])) {
      throw SingularJetError("division by a jet with zero constant term");
    }
    Coeffs q = a.c_;
    for (std::size_t k = 0; k < N; ++k) {
      T acc = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) acc = acc - b.c_[j] * q[k - j];
      q[k] = acc / b.c_[0];
    }
    return Jet(std::move(q));
  }

  friend Jet operator*(const Jet& a, const T& s) {
    Coeffs out = a.c_;
    for (auto& v : out) v = v * s;
    return Jet(std::move(out));
  }

 private:
  template <class Fn>
  static Coeffs filled(const T& like, Fn&& fn) {
    return make(like, std::forward<Fn>(fn), std::make_index_sequence<N>{});
  }

  template <class Fn, std::size_t... I>
  static Coeffs make(const T&, Fn&& fn, std::index_sequence<I...>) {
    return Coeffs{fn(I)...};
  }

  Coeffs c_;
};

namespace jet_detail {

// Evaluates sum_k series[k] * h^k where h is the jet minus its constant term.
template <Scalar T, std::size_t N>
Jet<T, N> compose(const Jet<T, N>& a, const std::array<T, N>& series) {
  auto h_coeffs = a.coeffs();
  h_coeffs[0] = ScalarTraits<T>::constant(a.value(), 0.0);
  const Jet<T, N> h(h_coeffs);
  Jet<T, N> result = Jet<T, N>::constant(series[0]);
  Jet<T, N> power = h;
  for (std::size_t k = 1; k < N; ++k) {
    result = result + power * series[k];
    if (k + 1 < N) power = power * h;
  }
  return result;
}

// Braced initialisation evaluates term(0), term(1), ... in order, so stateful
// generators are safe.
template <Scalar T, std::size_t N, class Fn>
std::array<T, N> series_of(Fn&& term) {
  return [&]<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<T, N>{term(I)...};
  }(std::make_index_sequence<N>{});
}

// a0^p * sum_k binom(p, k) (h/a0)^k with the constant term supplied.
template <Scalar T, std::size_t N>
Jet<T, N> binomial_series(const Jet<T, N>& a, const T& p, const T& base) {
  using Tr = ScalarTraits<T>;
  const T inv = 1.0 / a.value();
  T binom = Tr::constant(inv, 1.0);
  T power = Tr::constant(inv, 1.0);
  auto series = series_of<T, N>([&](std::size_t k) {
    if (k == 0) return base;
    binom = binom * (p - static_cast<double>(k - 1)) / static_cast<double>(k);
    power = power * inv;
    return base * binom * power;
  });
  return compose(a, series);
}

template <Scalar T>
[[noreturn]] void domain_failure(const char* what, const T& at) {
  throw DomainError(what, ScalarTraits<T>::describe(at));
}

inline double inverse_factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return 1.0 / f;
}

}  // namespace jet_detail

template <Scalar T, std::size_t N>
Jet<T, N> exp(const Jet<T, N>& a) {
  using Tr = ScalarTraits<T>;
  const T e0 = Tr::exp(a.value());
  auto series = jet_detail::series_of<T, N>([&](std::size_t k) {
    return e0 * jet_detail::inverse_factorial(k);
  });
  return jet_detail::compose(a, series);
}

template <Scalar T, std::size_t N>
Jet<T, N> sin(const Jet<T, N>& a) {
  using Tr = ScalarTraits<T>;
  const T s = Tr::sin(a.value());
  const T c = Tr::cos(a.value());
  // d^k/dx^k sin cycles through sin, cos, -sin, -cos.
  auto series = jet_detail::series_of<T, N>([&](std::size_t k) {
    const double w = jet_detail::inverse_factorial(k);
    switch (k % 4) {
      case 0: return s * w;
      case 1: return c * w;
      case 2: return s * -w;
      default: return c * -w;
    }
  });
  return jet_detail::compose(a, series);
}

template <Scalar T, std::size_t N>
Jet<T, N> cos(const Jet<T, N>& a) {
  using Tr = ScalarTraits<T>;
  const T s = Tr::sin(a.value());
  const T c = Tr::cos(a.value());
  auto series = jet_detail::series_of<T, N>([&](std::size_t k) {
    const double w = jet_detail::inverse_factorial(k);
    switch (k % 4) {
      case 0: return c * w;
      case 1: return s * -w;
      case 2: return c * -w;
      default: return s * w;
    }
  });
  return jet_detail::compose(a, series);
}

template <Scalar T, std::size_t N>
Jet<T, N> log(const Jet<T, N>& a) {
  using Tr = ScalarTraits<T>;
  if (is_exact_zero(a.value())) jet_detail::domain_failure("logarithm at zero", a.value());
  const T inv = 1.0 / a.value();
  // ln(a0 + h) = ln a0 + sum_{k>=1} (-1)^{k+1} (h/a0)^k / k
  T power = Tr::constant(inv, 1.0);
  auto series = jet_detail::series_of<T, N>([&](std::size_t k) {
    if (k == 0) return Tr::log(a.value());
    power = power * inv;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    return power * (sign / static_cast<double>(k));
  });
  return jet_detail::compose(a, series);
}

/// Principal power a^p for a scalar exponent p.
template <Scalar T, std::size_t N>
Jet<T, N> pow(const Jet<T, N>& a, const T& p) {
  if (is_exact_zero(a.value())) jet_detail::domain_failure("branch point of power", a.value());
  return jet_detail::binomial_series(a, p, ScalarTraits<T>::pow(a.value(), p));
}

template <Scalar T, std::size_t N>
Jet<T, N> sqrt(const Jet<T, N>& a) {
  if (is_exact_zero(a.value())) jet_detail::domain_failure("square root at zero", a.value());
  using Tr = ScalarTraits<T>;
  return jet_detail::binomial_series(a, Tr::constant(a.value(), 0.5), Tr::sqrt(a.value()));
}

template <Scalar T, std::size_t N>
Jet<T, N> pow(const Jet<T, N>& a, long n) {
  if (n < 0) {
    if (is_exact_zero(a.value())) {
      jet_detail::domain_failure("negative power of zero", a.value());
    }
    return Jet<T, N>::constant(ScalarTraits<T>::constant(a.value(), 1.0)) / pow(a, -n);
  }
  Jet<T, N> result = Jet<T, N>::constant(ScalarTraits<T>::constant(a.value(), 1.0));
  Jet<T, N> base = a;
  auto e = static_cast<unsigned long>(n);
  while (e != 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

/// a^b with both operands jets: exp(b ln a).
template <Scalar T, std::size_t N>
Jet<T, N> pow(const Jet<T, N>& a, const Jet<T, N>& b) {
  return exp(b * log(a));
}

}  // namespace octoroot
