// SPDX-License-Identifier: Apache-2.0
#pragma once

// Template definitions for series.hpp. Not meant to be included directly.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <type_traits>

namespace tsm {

namespace detail {

template <class T>
void add_product(T& acc, const T& a, const T& b) {
  if constexpr (std::is_same_v<T, Integer>) {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  } else {
    acc += a * b;
  }
}

template <class T>
bool is_unit(const T& c) {
  if constexpr (std::is_same_v<T, Integer>) {
    return c == 1 || c == -1;
  } else {
    return sgn(c) != 0;
  }
}

template <class T>
T inverse(const T& c) {
  if constexpr (std::is_same_v<T, Integer>) {
    return c;  // c is +-1
  } else {
    return T(1) / c;
  }
}

// gcd of the indices carrying nonzero coefficients; 0 if only index 0 does.
template <class T>
std::size_t support_stride(std::span<const T> v) {
  std::size_t g = 0;
  for (std::size_t i = 1; i < v.size() && g != 1; ++i)
    if (!is_zero(v[i])) g = std::gcd(g, i);
  return g;
}

}  // namespace detail

template <class T>
void LaurentSeries<T>::add_scaled(const T& c, const LaurentSeries& other) {
  const Exponent p = std::min(prec_, other.prec_);
  if (detail::is_zero(c) || other.is_zero() || other.lead_ >= p) {
    truncate(p);
    return;
  }
  if (is_zero()) {
    *this = c * other.truncated(p);
    return;
  }
  truncate(p);
  if (other.lead_ < lead_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(lead_ - other.lead_),
                   T(0));
    lead_ = other.lead_;
  }
  const std::size_t offset = static_cast<std::size_t>(other.lead_ - lead_);
  const std::size_t n =
      std::min(other.coeffs_.size(), coeffs_.size() - offset);
  for (std::size_t i = 0; i < n; ++i) {
    if (!detail::is_zero(other.coeffs_[i]))
      detail::add_product(coeffs_[offset + i], c, other.coeffs_[i]);
  }
  canonicalize();
}

template <class T>
LaurentSeries<T> linear_combine(std::span<const Term<T>> terms) {
  if (terms.empty()) fail(ErrorCode::kUsage, "linear_combine: no terms");
  Exponent prec = kNoCap;
  Exponent lead = kNoCap;
  for (const auto& t : terms) {
    prec = std::min(prec, t.series->prec());
    if (!detail::is_zero(t.scale) && !t.series->is_zero())
      lead = std::min(lead, t.series->lead());
  }
  if (lead >= prec) return LaurentSeries<T>::zero(prec);
  std::vector<T> out(static_cast<std::size_t>(prec - lead));
  for (const auto& t : terms) {
    if (detail::is_zero(t.scale) || t.series->is_zero()) continue;
    const auto c = t.series->coeffs();
    const std::size_t offset = static_cast<std::size_t>(t.series->lead() - lead);
    for (std::size_t i = 0; offset + i < out.size() && i < c.size(); ++i)
      if (!detail::is_zero(c[i])) detail::add_product(out[offset + i], t.scale, c[i]);
  }
  return LaurentSeries<T>(lead, std::move(out), prec);
}

template <class T>
LaurentSeries<T> operator+(const LaurentSeries<T>& a, const LaurentSeries<T>& b) {
  const Term<T> terms[] = {{T(1), &a}, {T(1), &b}};
  return linear_combine<T>(terms);
}

template <class T>
LaurentSeries<T> operator-(const LaurentSeries<T>& a, const LaurentSeries<T>& b) {
  const Term<T> terms[] = {{T(1), &a}, {T(-1), &b}};
  return linear_combine<T>(terms);
}

template <class T>
LaurentSeries<T> operator-(const LaurentSeries<T>& a) {
  return a.map_indexed([](Exponent, const T& c) { return T(-c); });
}

template <class T>
LaurentSeries<T> operator*(const T& c, const LaurentSeries<T>& a) {
  if (detail::is_zero(c)) return LaurentSeries<T>::zero(a.prec());
  return a.map_indexed([&c](Exponent, const T& v) { return T(c * v); });
}

template <class T>
LaurentSeries<T> mul(const LaurentSeries<T>& x, const LaurentSeries<T>& y,
                     Exponent max_prec, detail::MulAlgorithm algo) {
  Exponent prec = std::min(x.prec() + y.lead(), y.prec() + x.lead());
  prec = std::min(prec, max_prec);
  const Exponent lead = x.lead() + y.lead();
  if (x.is_zero() || y.is_zero() || prec <= lead)
    return LaurentSeries<T>::zero(prec);
  const auto count = static_cast<std::size_t>(prec - lead);
  auto v = detail::convolve<T>(x.coeffs(), y.coeffs(), count, algo);
  return LaurentSeries<T>(lead, std::move(v), prec);
}

template <class T>
LaurentSeries<T> recip(const LaurentSeries<T>& x) {
  if (x.is_zero() || !detail::is_unit(x.coeffs()[0]))
    fail(ErrorCode::kNonUnit, "recip: leading coefficient is not a unit");
  const auto c = x.coeffs();
  const std::size_t n = static_cast<std::size_t>(x.prec() - x.lead());

  const std::size_t stride = detail::support_stride(c);
  if (stride > 1) {
    // x = q^lead X(q^s): invert X and substitute back.
    std::vector<T> compressed;
    for (std::size_t i = 0; i < c.size(); i += stride) compressed.push_back(c[i]);
    const std::size_t m = (n + stride - 1) / stride;
    compressed.resize(m);
    auto inv = recip(LaurentSeries<T>(0, std::move(compressed)));
    auto expanded = subst_power(inv, static_cast<Exponent>(stride));
    return expanded.truncated(static_cast<Exponent>(n)).shifted(-x.lead());
  }

  std::vector<std::size_t> support;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (!detail::is_zero(c[i])) support.push_back(i);

  const T inv0 = detail::inverse(c[0]);
  std::vector<T> y(n);
  y[0] = inv0;
  T acc;
  for (std::size_t k = 1; k < n; ++k) {
    acc = 0;
    for (std::size_t i : support) {
      if (i > k) break;
      detail::add_product(acc, c[i], y[k - i]);
    }
    y[k] = -inv0 * acc;
  }
  return LaurentSeries<T>(-x.lead(), std::move(y));
}

template <class T>
LaurentSeries<T> pow(const LaurentSeries<T>& x, long n) {
  if (n < 0) return recip(pow(x, -n));
  const Exponent rel = x.prec() - x.lead();
  LaurentSeries<T> result = LaurentSeries<T>::monomial(T(1), 0, rel);
  LaurentSeries<T> base = x;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      result = first ? base : mul(result, base);
      first = false;
    }
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

template <class T>
LaurentSeries<T> subst_power(const LaurentSeries<T>& x, Exponent m) {
  if (m < 1) fail(ErrorCode::kUsage, "subst_power: m must be >= 1");
  if (m == 1) return x;
  if (x.is_zero()) return LaurentSeries<T>::zero(x.prec() * m);
  const auto c = x.coeffs();
  std::vector<T> v(c.size() * static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < c.size(); ++i) v[i * static_cast<std::size_t>(m)] = c[i];
  return LaurentSeries<T>(x.lead() * m, std::move(v), x.prec() * m);
}

template <class T>
std::string to_string(const LaurentSeries<T>& x, std::size_t max_terms) {
  std::ostringstream out;
  std::size_t shown = 0;
  const auto c = x.coeffs();
  for (std::size_t i = 0; i < c.size() && shown < max_terms; ++i) {
    if (detail::is_zero(c[i])) continue;
    const Exponent e = x.lead() + static_cast<Exponent>(i);
    T mag = c[i];
    const bool neg = sgn(mag) < 0;
    if (neg) mag = -mag;
    if (shown == 0) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    const bool unit = (mag == 1);
    if (e == 0) {
      out << mag;
    } else {
      if (!unit) out << mag << "*";
      out << "q";
      if (e != 1) out << "^" << e;
    }
    ++shown;
  }
  if (shown == 0) out << "0";
  out << " + O(q^" << x.prec() << ")";
  return out.str();
}

}  // namespace tsm
