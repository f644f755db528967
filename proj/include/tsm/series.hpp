// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact Laurent series in q with explicit truncation.
//
// A series is q^lead * (c_0 + c_1 q + ... ) + O(q^prec). Coefficients below
// `lead` are exactly zero; coefficients at exponents >= prec are unknown and
// reading one is an error. Every operation propagates precision
// pessimistically, so a result never claims more than its inputs justify.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tsm/errors.hpp"

namespace tsm {

using Integer = mpz_class;
using Rational = mpq_class;
using Exponent = std::int64_t;

inline constexpr Exponent kNoCap = std::numeric_limits<Exponent>::max();

namespace detail {

// Dense sub-products at or above this length in both operands go through
// Karatsuba; below it (or when sparse) the zero-skipping schoolbook is used.
inline constexpr std::size_t kKaratsubaThreshold = 40;

enum class MulAlgorithm { kAuto, kSchoolbook, kKaratsuba };

// First `count` coefficients of x*y. Detects a common stride (support on
// multiples of s) in either operand and splits into dense sub-products.
template <class T>
std::vector<T> convolve(std::span<const T> x, std::span<const T> y,
                        std::size_t count,
                        MulAlgorithm algo = MulAlgorithm::kAuto);

extern template std::vector<Integer> convolve<Integer>(
    std::span<const Integer>, std::span<const Integer>, std::size_t,
    MulAlgorithm);
extern template std::vector<Rational> convolve<Rational>(
    std::span<const Rational>, std::span<const Rational>, std::size_t,
    MulAlgorithm);

template <class T>
bool is_zero(const T& v) {
  return sgn(v) == 0;
}

}  // namespace detail

template <class T>
class LaurentSeries {
 public:
  using value_type = T;

  /// The zero series O(q^0).
  LaurentSeries() = default;

  /// q^lead * (coeffs[0] + coeffs[1] q + ...) + O(q^(lead + coeffs.size())).
  LaurentSeries(Exponent lead, std::vector<T> coeffs)
      : lead_(lead),
        prec_(lead + static_cast<Exponent>(coeffs.size())),
        coeffs_(std::move(coeffs)) {
    canonicalize();
  }

  /// Same, with an explicit precision; coeffs are zero-padded or cut to fit.
  LaurentSeries(Exponent lead, std::vector<T> coeffs, Exponent prec)
      : lead_(lead), prec_(prec), coeffs_(std::move(coeffs)) {
    if (prec_ < lead_) {
      coeffs_.clear();
      lead_ = prec_;
      return;
    }
    coeffs_.resize(static_cast<std::size_t>(prec_ - lead_));
    canonicalize();
  }

  static LaurentSeries zero(Exponent prec) {
    LaurentSeries s;
    s.lead_ = prec;
    s.prec_ = prec;
    return s;
  }

  static LaurentSeries monomial(const T& c, Exponent e, Exponent prec) {
    if (e >= prec || detail::is_zero(c)) return zero(prec);
    std::vector<T> v(static_cast<std::size_t>(prec - e));
    v[0] = c;
    return LaurentSeries(e, std::move(v));
  }

  Exponent lead() const noexcept { return lead_; }
  Exponent prec() const noexcept { return prec_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const T> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of q^e; throws kPrecision for e >= prec.
  const T& coeff(Exponent e) const {
    if (e >= prec_) {
      fail(ErrorCode::kPrecision,
           "coefficient of q^" + std::to_string(e) +
               " requested beyond precision O(q^" + std::to_string(prec_) +
               ")");
    }
    if (e < lead_) return zero_value();
    return coeffs_[static_cast<std::size_t>(e - lead_)];
  }
  const T& operator[](Exponent e) const { return coeff(e); }

  /// Lowers the precision to `prec` (no-op if already lower).
  LaurentSeries truncated(Exponent prec) const {
    if (prec >= prec_) return *this;
    if (prec <= lead_) return zero(prec);
    std::vector<T> v(coeffs_.begin(),
                     coeffs_.begin() + static_cast<std::ptrdiff_t>(prec - lead_));
    return LaurentSeries(lead_, std::move(v));
  }

  void truncate(Exponent prec) {
    if (prec >= prec_) return;
    if (prec <= lead_) {
      *this = zero(prec);
      return;
    }
    coeffs_.resize(static_cast<std::size_t>(prec - lead_));
    prec_ = prec;
    canonicalize();
  }

  /// q^k * this.
  LaurentSeries shifted(Exponent k) const {
    LaurentSeries s = *this;
    s.lead_ += k;
    s.prec_ += k;
    return s;
  }

  template <class F>
  LaurentSeries map_indexed(F&& f) const {
    std::vector<T> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      v[i] = f(lead_ + static_cast<Exponent>(i), coeffs_[i]);
    return LaurentSeries(lead_, std::move(v), prec_);
  }

  /// In place: this += c * other, over exponents below min(prec, other.prec).
  void add_scaled(const T& c, const LaurentSeries& other);

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.lead_ == b.lead_ && a.prec_ == b.prec_ && a.coeffs_ == b.coeffs_;
  }

 private:
  static const T& zero_value() {
    static const T z(0);
    return z;
  }

  void canonicalize() {
    std::size_t first = 0;
    while (first < coeffs_.size() && detail::is_zero(coeffs_[first])) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      lead_ = prec_;
      return;
    }
    if (first > 0) {
      coeffs_.erase(coeffs_.begin(),
                    coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
      lead_ += static_cast<Exponent>(first);
    }
  }

  Exponent lead_ = 0;
  Exponent prec_ = 0;
  std::vector<T> coeffs_;
};

using ZSeries = LaurentSeries<Integer>;
using QSeries = LaurentSeries<Rational>;

template <class T>
struct Term {
  T scale;
  const LaurentSeries<T>* series;
};

/// Pointwise sum of scale*series; prec is the minimum over the inputs.
template <class T>
LaurentSeries<T> linear_combine(std::span<const Term<T>> terms);

template <class T>
LaurentSeries<T> operator+(const LaurentSeries<T>& a, const LaurentSeries<T>& b);
template <class T>
LaurentSeries<T> operator-(const LaurentSeries<T>& a, const LaurentSeries<T>& b);
template <class T>
LaurentSeries<T> operator-(const LaurentSeries<T>& a);
template <class T>
LaurentSeries<T> operator*(const T& c, const LaurentSeries<T>& a);

/// Product; lead adds, prec = min(prec_x + lead_y, prec_y + lead_x). The
/// optional cap avoids computing coefficients the caller will discard.
template <class T>
LaurentSeries<T> mul(const LaurentSeries<T>& x, const LaurentSeries<T>& y,
                     Exponent max_prec = kNoCap,
                     detail::MulAlgorithm algo = detail::MulAlgorithm::kAuto);

/// Multiplicative inverse; throws kNonUnit when the leading coefficient is
/// not invertible in the scalar ring.
template <class T>
LaurentSeries<T> recip(const LaurentSeries<T>& x);

/// x^n for any integer n (negative n goes through recip).
template <class T>
LaurentSeries<T> pow(const LaurentSeries<T>& x, long n);

/// q -> q^m.
template <class T>
LaurentSeries<T> subst_power(const LaurentSeries<T>& x, Exponent m);

QSeries to_rational(const ZSeries& x);

/// Throws kConstruction if any coefficient is not an integer.
ZSeries to_integer(const QSeries& x);

/// Exact division of every coefficient by `divisor`; throws kConstruction
/// if some coefficient is not divisible.
ZSeries divide_exact(const ZSeries& x, const Integer& divisor);

/// Compact human-readable rendering, e.g. "q^-1 - 2 + 248*q^3 + O(q^5)".
template <class T>
std::string to_string(const LaurentSeries<T>& x, std::size_t max_terms = 12);

// A series multiplied by a rational power of q, q^shift * body. Used for eta
// powers whose natural expansions live in q^(1/24) Z.
struct ShiftedSeries {
  Rational shift;
  ZSeries body;

  /// Coerces to an ordinary Laurent series; throws kFractionalShift unless
  /// the shift is integral.
  ZSeries to_laurent() const;
};

ShiftedSeries operator*(const ShiftedSeries& a, const ShiftedSeries& b);
ShiftedSeries recip(const ShiftedSeries& a);

}  // namespace tsm

#include "tsm/series_impl.hpp"
