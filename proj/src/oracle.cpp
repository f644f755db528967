// SPDX-License-Identifier: Apache-2.0
#include "tsm/oracle.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

#include "tsm/classical.hpp"
#include "tsm/hecke.hpp"

namespace tsm::oracle {

namespace {

// Sets the default mpfr_float precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// c(n) of j for -1 <= n <= N, index n + 1.
std::vector<Integer> j_coefficients(std::size_t N) {
  static std::mutex mu;
  static std::vector<Integer> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() < N + 2) {
    const auto j = classical::j_invariant(static_cast<Exponent>(std::max<std::size_t>(N + 1, 2 * cache.size())));
    cache.assign(j.coeffs().begin(), j.coeffs().end());
  }
  return {cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(N + 2)};
}

Real from_integer(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Integer round_to_integer(const Real& x) {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDN);
  return z;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

// Terms needed so that sum_{n > N} e^(4 pi sqrt n) |q|^n < 2^-guard, where
// |q| = e^(-2 pi y). Uses c(n) <= e^(4 pi sqrt n) and a geometric bound on
// the ratio of consecutive terms.
std::size_t term_count(double y, unsigned guard, double& tail) {
  const double target = -static_cast<double>(guard) * std::log(2.0);
  for (std::size_t N = 1;; ++N) {
    const double sn = std::sqrt(static_cast<double>(N));
    if (sn < 2.0 / y) continue;
    const double log_ratio = 2 * M_PI / sn - 2 * M_PI * y;
    const double next = static_cast<double>(N + 1);
    const double log_tail = 4 * M_PI * std::sqrt(next) - 2 * M_PI * y * next - std::log1p(-std::exp(log_ratio));
    if (log_tail < target) {
      tail = std::exp(log_tail);
      return N;
    }
    if (N > 100000) fail(ErrorCode::kPrecision, "j_eval: too many terms required");
  }
}

std::int64_t gcd4(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return std::gcd(std::gcd(std::gcd(a, b), c), d);
}

}  // namespace

bool QuadForm::is_reduced() const noexcept {
  if (a <= 0 || disc() >= 0) return false;
  if (std::abs(b) > a || a > c) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

QuadForm reduce(QuadForm q) {
  if (q.a <= 0 || q.disc() >= 0) fail(ErrorCode::kUsage, "reduce: form must be positive definite");
  const std::int64_t disc = q.disc();
  for (;;) {
    // Translate b into (-a, a].
    const std::int64_t two_a = 2 * q.a;
    std::int64_t k = (q.a - q.b) / two_a;
    if ((q.a - q.b) % two_a != 0 && (q.a - q.b) < 0) --k;
    q.b += two_a * k;
    q.c = (q.b * q.b - disc) / (4 * q.a);
    if (q.a > q.c) {
      q = {q.c, -q.b, q.a};
      continue;
    }
    if (q.a == q.c && q.b < 0) q.b = -q.b;
    return q;
  }
}

std::vector<QuadForm> reduced_forms(std::int64_t d) {
  if (d <= 0 || (d % 4 != 0 && d % 4 != 3))
    fail(ErrorCode::kUsage, "reduced_forms needs d > 0 with d = 0, 3 mod 4");
  std::vector<QuadForm> out;
  for (std::int64_t a = 1; 3 * a * a <= d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b + d;
      if (num % (4 * a) != 0) continue;
      const QuadForm q{a, b, num / (4 * a)};
      if (q.is_reduced()) out.push_back(q);
    }
  }
  return out;
}

Rational weight(const QuadForm& q) {
  if (q.a == q.b && q.b == q.c) return Rational(1, 3);
  if (q.b == 0 && q.a == q.c) return Rational(1, 2);
  return Rational(1);
}

unsigned working_bits(std::int64_t d, const OracleOptions& opt) {
  return static_cast<unsigned>(std::ceil(M_PI * std::sqrt(static_cast<double>(d)) * M_LOG2E)) +
         std::max(opt.guard_bits, 64U);
}

JValue j_eval(const QuadForm& q, const OracleOptions& opt) {
  const std::int64_t d = -q.disc();
  if (q.a <= 0 || d <= 0) fail(ErrorCode::kUsage, "j_eval: form must be positive definite");
  const double y = std::sqrt(static_cast<double>(d)) / (2.0 * static_cast<double>(q.a));
  if (y < std::sqrt(3.0) / 2 - 1e-12) fail(ErrorCode::kUsage, "j_eval: CM point outside the fundamental domain");

  const unsigned bits = working_bits(d, opt);
  PrecisionScope scope(bits);
  double tail = 0;
  const std::size_t N = term_count(y, bits - static_cast<unsigned>(std::ceil(2 * M_PI * y * M_LOG2E)), tail);
  const auto c = j_coefficients(N);

  // q = exp(-pi sqrt(d) / a) * exp(-i pi b / a).
  const Real p = pi();
  const Real modulus = exp(-p * sqrt(Real(d)) / Real(q.a));
  const Real angle = -p * Real(q.b) / Real(q.a);
  const Complex z{modulus * cos(angle), modulus * sin(angle)};

  // q^-1 = conj(q) / |q|^2.
  const Real norm = z.re * z.re + z.im * z.im;
  Complex sum{z.re / norm, -z.im / norm};
  sum.re += from_integer(c[1]);
  Complex power = z;
  for (std::size_t n = 1; n <= N; ++n) {
    const Real cn = from_integer(c[n + 1]);
    sum.re += cn * power.re;
    sum.im += cn * power.im;
    const Real re = power.re * z.re - power.im * z.im;
    power.im = power.re * z.im + power.im * z.re;
    power.re = re;
  }

  // Largest term: e^(2 pi y) from q^-1, or e^(4 pi sqrt n - 2 pi y n) <= e^(2 pi / y).
  const double big = std::max({std::exp(2 * M_PI * y), std::exp(2 * M_PI / y), 744.0});
  const double rounding = 16.0 * static_cast<double>(N + 2) * big * std::ldexp(1.0, -static_cast<int>(bits));
  return {std::move(sum), tail + rounding, bits, N};
}

Integer trace_untwisted(std::int64_t d, const OracleOptions& opt) {
  const auto forms = reduced_forms(d);
  const unsigned bits = working_bits(d, opt);
  PrecisionScope scope(bits);
  Real total = 0;
  double err = 0;
  for (const auto& q : forms) {
    const auto jv = j_eval(q, opt);
    const Rational w = weight(q);
    total += (jv.value.re - 744) * Real(w.get_num().get_si()) / Real(w.get_den().get_si());
    err += jv.abs_error;
  }
  const Integer n = round_to_integer(total);
  const Real residual = abs(total - from_integer(n));
  const double tol = std::ldexp(1.0, -static_cast<int>(opt.tolerance_log2));
  if (residual > tol || err > tol / 2)
    fail(ErrorCode::kPrecision, "trace for d=" + std::to_string(d) + " is not within tolerance of an integer");
  return n;
}

int genus_character(const QuadForm& q, std::int64_t D) {
  if (D < 1 || (-q.disc()) % D != 0) fail(ErrorCode::kUsage, "genus_character: D must divide the discriminant");
  if (gcd4(q.a, q.b, q.c, D) > 1) return 0;
  int value = 0;
  int found = 0;
  constexpr std::int64_t kBound = 60;
  for (std::int64_t x = 0; x <= kBound && found < 4; ++x) {
    for (std::int64_t y = -kBound; y <= kBound && found < 4; ++y) {
      if (std::gcd(x, y) != 1) continue;
      const std::int64_t r = q.eval(x, y);
      if (r <= 0 || std::gcd(r, D) != 1) continue;
      const int chi = hecke::kronecker(D, r);
      if (found > 0 && chi != value)
        fail(ErrorCode::kConstruction, "genus character is not well defined on this form");
      value = chi;
      ++found;
    }
  }
  if (found == 0) fail(ErrorCode::kConstruction, "no represented value prime to D within the search bound");
  return value;
}

TwistedTrace trace_twisted(std::int64_t D, std::int64_t d, const OracleOptions& opt) {
  if (D <= 1 || !hecke::is_fundamental(D)) fail(ErrorCode::kUsage, "trace_twisted needs D > 1 fundamental");
  if (d <= 0 || !hecke::is_fundamental(-d)) fail(ErrorCode::kUsage, "trace_twisted needs -d fundamental");
  const auto forms = reduced_forms(D * d);
  const unsigned bits = working_bits(D * d, opt);
  PrecisionScope scope(bits);
  Real total = 0;
  double err = 0;
  for (const auto& q : forms) {
    const int chi = genus_character(q, D);
    if (chi == 0) continue;
    const auto jv = j_eval(q, opt);
    const Rational w = weight(q);
    total += Real(chi) * (jv.value.re - 744) * Real(w.get_num().get_si()) / Real(w.get_den().get_si());
    err += jv.abs_error;
  }
  const Real root = sqrt(Real(D));
  const Integer n = round_to_integer(total / root);
  const Real residual = abs(total - from_integer(n) * root);
  const double tol = std::ldexp(1.0, -static_cast<int>(opt.tolerance_log2)) * std::sqrt(static_cast<double>(D));
  if (residual > tol || err > tol / 2)
    fail(ErrorCode::kPrecision, "twisted trace for (D,d)=(" + std::to_string(D) + "," + std::to_string(d) +
                                    ") is not within tolerance of an integer multiple of sqrt(D)");
  return {total, n, residual.convert_to<double>()};
}

}  // namespace tsm::oracle
