// SPDX-License-Identifier: Apache-2.0
#include "tsm/series.hpp"

#include <algorithm>

namespace tsm {

std::string_view error_tag(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kUsage: return "usage";
    case ErrorCode::kPrecision: return "precision";
    case ErrorCode::kNonUnit: return "non-unit";
    case ErrorCode::kFractionalShift: return "fractional-shift";
    case ErrorCode::kNotPlusSupport: return "not-in-plus-support";
    case ErrorCode::kFormulaInapplicable: return "formula-inapplicable";
    case ErrorCode::kInsufficientTable: return "insufficient-table";
    case ErrorCode::kConstruction: return "construction";
    case ErrorCode::kChecksum: return "checksum";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

namespace detail {
namespace {

template <class T>
std::size_t count_nonzero(std::span<const T> v) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [](const T& c) { return !is_zero(c); }));
}

// out[i + j] += a[i] * b[j] for all i + j < out.size().
template <class T>
void schoolbook_acc(std::span<const T> a, std::span<const T> b, std::span<T> out) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> nz;
  nz.reserve(b.size());
  for (std::size_t j = 0; j < b.size(); ++j)
    if (!is_zero(b[j])) nz.push_back(j);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j : nz) {
      if (i + j >= n) break;
      add_product(out[i + j], a[i], b[j]);
    }
  }
}

template <class T>
std::vector<T> add_spans(std::span<const T> a, std::span<const T> b) {
  std::vector<T> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

// out (length >= a.size() + b.size() - 1) += a * b, full product.
template <class T>
void karatsuba_acc(std::span<const T> a, std::span<const T> b, std::span<T> out) {
  if (a.empty() || b.empty()) return;
  if (a.size() < b.size()) std::swap(a, b);
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (nb < kKaratsubaThreshold) {
    schoolbook_acc(a, b, out.first(na + nb - 1));
    return;
  }
  const std::size_t m = (na + 1) / 2;
  if (nb <= m) {
    // Unbalanced: split only the long operand.
    for (std::size_t off = 0; off < na; off += nb) {
      const std::size_t len = std::min(nb, na - off);
      karatsuba_acc(a.subspan(off, len), b, out.subspan(off));
    }
    return;
  }
  const auto a0 = a.first(m);
  const auto a1 = a.subspan(m);
  const auto b0 = b.first(m);
  const auto b1 = b.subspan(m);

  std::vector<T> z0(2 * m - 1);
  std::vector<T> z2(a1.size() + b1.size() - 1);
  karatsuba_acc<T>(a0, b0, z0);
  karatsuba_acc<T>(a1, b1, z2);

  const auto sa = add_spans<T>(a0, a1);
  const auto sb = add_spans<T>(b0, b1);
  std::vector<T> z1(sa.size() + sb.size() - 1);
  karatsuba_acc<T>(sa, sb, z1);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];

  for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
  for (std::size_t i = 0; i < z1.size() && m + i < out.size(); ++i) out[m + i] += z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * m + i] += z2[i];
}

template <class T>
std::vector<T> every_nth(std::span<const T> v, std::size_t start, std::size_t step) {
  std::vector<T> r;
  r.reserve(v.size() / step + 1);
  for (std::size_t i = start; i < v.size(); i += step) r.push_back(v[i]);
  return r;
}

}  // namespace

template <class T>
std::vector<T> convolve(std::span<const T> x, std::span<const T> y,
                        std::size_t count, MulAlgorithm algo) {
  std::vector<T> out(count);
  x = x.first(std::min(x.size(), count));
  y = y.first(std::min(y.size(), count));
  if (x.empty() || y.empty() || count == 0) return out;

  if (algo == MulAlgorithm::kSchoolbook) {
    schoolbook_acc<T>(x, y, out);
    return out;
  }
  if (algo == MulAlgorithm::kKaratsuba) {
    std::vector<T> full(x.size() + y.size() - 1);
    karatsuba_acc<T>(x, y, full);
    for (std::size_t i = 0; i < count && i < full.size(); ++i) out[i] = std::move(full[i]);
    return out;
  }

  std::size_t sx = support_stride(x);
  std::size_t sy = support_stride(y);
  if (sx == 0 || sy == 0) {
    // Only index 0 can be nonzero in one operand: a scalar multiple.
    if (sx == 0) {
      std::swap(x, y);
      std::swap(sx, sy);
    }
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!is_zero(x[i])) out[i] = x[i] * y[0];
    return out;
  }
  if (sx > 1 || sy > 1) {
    if (sx > sy) {
      std::swap(x, y);
      std::swap(sx, sy);
    }
    if (sy > 1) {
      // y(q) = Y(q^s); split x by residue class mod s.
      const std::size_t s = sy;
      const auto compressed_y = every_nth(y, 0, s);
      for (std::size_t r = 0; r < s && r < count; ++r) {
        const auto xr = every_nth(x, r, s);
        if (xr.empty() || count_nonzero<T>(xr) == 0) continue;
        const std::size_t cnt = (count - r + s - 1) / s;
        auto part = convolve<T>(xr, compressed_y, cnt, algo);
        for (std::size_t k = 0; k < part.size(); ++k) {
          if (!is_zero(part[k])) out[r + s * k] = std::move(part[k]);
        }
      }
      return out;
    }
  }

  const std::size_t shorter = std::min(x.size(), y.size());
  const bool dense = 2 * count_nonzero(x) > x.size() && 2 * count_nonzero(y) > y.size();
  if (dense && shorter >= kKaratsubaThreshold) {
    std::vector<T> full(x.size() + y.size() - 1);
    karatsuba_acc<T>(x, y, full);
    for (std::size_t i = 0; i < count && i < full.size(); ++i) out[i] = std::move(full[i]);
    return out;
  }
  schoolbook_acc<T>(x, y, out);
  return out;
}

template std::vector<Integer> convolve<Integer>(std::span<const Integer>,
                                                std::span<const Integer>,
                                                std::size_t, MulAlgorithm);
template std::vector<Rational> convolve<Rational>(std::span<const Rational>,
                                                  std::span<const Rational>,
                                                  std::size_t, MulAlgorithm);

}  // namespace detail

QSeries to_rational(const ZSeries& x) {
  std::vector<Rational> v(x.coeffs().begin(), x.coeffs().end());
  return QSeries(x.lead(), std::move(v), x.prec());
}

ZSeries to_integer(const QSeries& x) {
  std::vector<Integer> v;
  v.reserve(x.coeffs().size());
  for (const auto& c : x.coeffs()) {
    if (c.get_den() != 1)
      fail(ErrorCode::kConstruction, "non-integral coefficient " + c.get_str());
    v.push_back(c.get_num());
  }
  return ZSeries(x.lead(), std::move(v), x.prec());
}

ZSeries divide_exact(const ZSeries& x, const Integer& divisor) {
  std::vector<Integer> v(x.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& c = x.coeffs()[i];
    if (!mpz_divisible_p(c.get_mpz_t(), divisor.get_mpz_t()))
      fail(ErrorCode::kConstruction, "coefficient not divisible by " + divisor.get_str());
    mpz_divexact(v[i].get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
  }
  return ZSeries(x.lead(), std::move(v), x.prec());
}

ZSeries ShiftedSeries::to_laurent() const {
  if (shift.get_den() != 1)
    fail(ErrorCode::kFractionalShift,
         "cannot coerce q^(" + shift.get_str() + ") * series to a Laurent series");
  return body.shifted(shift.get_num().get_si());
}

ShiftedSeries operator*(const ShiftedSeries& a, const ShiftedSeries& b) {
  return {Rational(a.shift + b.shift), mul(a.body, b.body)};
}

ShiftedSeries recip(const ShiftedSeries& a) {
  return {Rational(-a.shift), recip(a.body)};
}

}  // namespace tsm
