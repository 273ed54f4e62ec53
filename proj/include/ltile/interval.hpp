#pragma once

// Closed intervals with exact rational endpoints. Irrational operations
// (sqrt, log2) and divisions round their endpoints outward onto a dyadic
// grid of 2^-precision, so every interval is a certified enclosure of the
// real value it stands for. No floating point is involved in any result;
// to_double() exists for human-readable evidence only.

#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ltile/numtheory.hpp"

namespace ltile {

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt floor_rational(const BigRational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline BigInt ceil_rational(const BigRational& r) {
  return -floor_div(-boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline BigRational round_down(const BigRational& r, int bits) {
  BigInt scale = BigInt(1) << bits;
  return BigRational(floor_rational(r * scale), scale);
}

inline BigRational round_up(const BigRational& r, int bits) {
  BigInt scale = BigInt(1) << bits;
  return BigRational(ceil_rational(r * scale), scale);
}

}  // namespace detail

class Interval {
 public:
  static constexpr int kDefaultPrecision = 64;

  Interval() = default;
  Interval(const BigRational& exact) : lo_(exact), hi_(exact) {}  // NOLINT: implicit by intent
  Interval(long long exact) : lo_(exact), hi_(exact) {}            // NOLINT
  Interval(const BigRational& lo, const BigRational& hi) : lo_(lo), hi_(hi) {
    if (lo_ > hi_) throw std::invalid_argument("Interval: lo > hi");
  }

  const BigRational& lo() const { return lo_; }
  const BigRational& hi() const { return hi_; }
  BigRational width() const { return hi_ - lo_; }
  bool is_exact() const { return lo_ == hi_; }
  bool contains(const BigRational& x) const { return lo_ <= x && x <= hi_; }

  double to_double() const { return static_cast<double>((lo_ + hi_) / 2); }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }
  friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }

  friend Interval operator*(const Interval& a, const Interval& b) {
    BigRational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    BigRational mn = p[0], mx = p[0];
    for (const auto& v : p) {
      if (v < mn) mn = v;
      if (v > mx) mx = v;
    }
    return {mn, mx};
  }

  // Endpoints rounded outward to `bits` fractional bits; keeps rational
  // sizes bounded in long chains.
  Interval rounded(int bits = kDefaultPrecision) const {
    return {detail::round_down(lo_, bits), detail::round_up(hi_, bits)};
  }

  Interval widened(const BigRational& factor) const {
    BigRational mid = (lo_ + hi_) / 2;
    BigRational half = (hi_ - lo_) / 2 * factor;
    return {mid - half, mid + half};
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << "[" << static_cast<double>(x.lo_) << ", " << static_cast<double>(x.hi_) << "]";
  }

 private:
  BigRational lo_{0};
  BigRational hi_{0};
};

inline Interval divide(const Interval& a, const Interval& b, int bits = Interval::kDefaultPrecision) {
  if (b.lo() <= 0 && b.hi() >= 0) throw std::domain_error("Interval division by an interval containing zero");
  // 1/x is decreasing on each sign branch
  Interval inv(BigRational(1) / b.hi(), BigRational(1) / b.lo());
  return (a * inv).rounded(bits);
}

// Certified enclosure of sqrt(r) for an exact r >= 0.
inline Interval sqrt_enclosure(const BigRational& r, int bits = Interval::kDefaultPrecision) {
  if (r < 0) throw std::domain_error("sqrt of a negative value");
  BigInt scale = BigInt(1) << bits;
  BigInt four_p = scale * scale;
  BigInt lo_arg = detail::floor_rational(r * four_p);
  BigInt hi_arg = detail::ceil_rational(r * four_p);
  BigInt lo = boost::multiprecision::sqrt(lo_arg);
  BigInt hi = boost::multiprecision::sqrt(hi_arg);
  if (hi * hi < hi_arg) ++hi;
  return {BigRational(lo, scale), BigRational(hi, scale)};
}

inline Interval sqrt(const Interval& x, int bits = Interval::kDefaultPrecision) {
  if (x.lo() < 0) throw std::domain_error("sqrt of an interval with negative part");
  return {sqrt_enclosure(x.lo(), bits).lo(), sqrt_enclosure(x.hi(), bits).hi()};
}

// Certified enclosure of log2(r) for an exact r > 0, by repeated squaring on
// an outward-rounded enclosure of the mantissa.
inline Interval log2_enclosure(const BigRational& r, int bits = Interval::kDefaultPrecision) {
  if (r <= 0) throw std::domain_error("log2 of a non-positive value");
  // integer part: 2^k <= r < 2^(k+1)
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  long long k = static_cast<long long>(boost::multiprecision::msb(num)) -
                static_cast<long long>(boost::multiprecision::msb(den));
  BigRational y = r;
  if (k >= 0)
    y /= BigRational(BigInt(1) << k);
  else
    y *= BigRational(BigInt(1) << (-k));
  if (y < 1) {
    y *= 2;
    --k;
  }
  // 1 <= y < 2
  if (y == 1) return Interval(BigRational(k));
  const int work = bits + 16;
  BigRational ylo = y, yhi = y;
  BigRational frac = 0;
  BigRational step = 1;
  for (int i = 1; i <= bits; ++i) {
    ylo = detail::round_down(ylo * ylo, work);
    yhi = detail::round_up(yhi * yhi, work);
    if (ylo < 1) ylo = 1;
    step /= 2;
    if (ylo >= 2) {
      frac += step;
      ylo /= 2;
      yhi /= 2;
    } else if (yhi >= 2) {
      // true mantissa^(2^i) lies in [1, 4): log2 of it in [0, 2)
      return {BigRational(k) + frac, BigRational(k) + frac + 2 * step};
    }
  }
  return {BigRational(k) + frac, BigRational(k) + frac + step};
}

inline bool certainly_less(const Interval& a, const Interval& b) { return a.hi() < b.lo(); }
inline bool certainly_less_equal(const Interval& a, const Interval& b) { return a.hi() <= b.lo(); }

}  // namespace ltile
