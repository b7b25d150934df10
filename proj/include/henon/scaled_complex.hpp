#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace henon {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when an evaluation result exceeds the double range and the caller
/// asked for a plain complex value instead of the log-scale form.
class eval_overflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a numerical certificate cannot be decided either way
/// (distinct from a definite pass or fail).
class inconclusive_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complex number stored as mantissa * 2^exponent so that magnitudes far
/// beyond the double range stay exact in the exponent.
struct ScaledComplex {
  Complex mantissa{0.0, 0.0};
  long long exponent = 0;

  static ScaledComplex zero() { return {}; }

  static ScaledComplex from(Complex v) {
    ScaledComplex s{v, 0};
    s.normalize();
    return s;
  }

  /// Build from |v| = 2^log2_mag, arg(v) = phase.
  static ScaledComplex from_log2(double log2_mag, double phase) {
    if (log2_mag == -kInf) return zero();
    double ip = 0.0;
    const double frac = std::modf(log2_mag, &ip);
    const double m = std::exp2(frac);  // in (0.5, 2)
    ScaledComplex s{Complex(m * std::cos(phase), m * std::sin(phase)),
                    static_cast<long long>(ip)};
    s.normalize();
    return s;
  }

  bool is_zero() const { return mantissa == Complex(0.0, 0.0); }

  void normalize() {
    const double a = std::max(std::abs(mantissa.real()), std::abs(mantissa.imag()));
    if (a == 0.0) {
      exponent = 0;
      return;
    }
    const int k = std::ilogb(a);
    if (k != 0) {
      mantissa = Complex(std::ldexp(mantissa.real(), -k), std::ldexp(mantissa.imag(), -k));
      exponent += k;
    }
  }

  ScaledComplex& operator*=(const ScaledComplex& o) {
    mantissa *= o.mantissa;
    exponent += o.exponent;
    normalize();
    return *this;
  }

  ScaledComplex& operator+=(const ScaledComplex& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      return *this;
    }
    const long long d = exponent - o.exponent;
    if (d >= 128) return *this;  // other term below representable resolution
    if (d <= -128) {
      *this = o;
      return *this;
    }
    const int shift = static_cast<int>(-d);
    mantissa += Complex(std::ldexp(o.mantissa.real(), shift), std::ldexp(o.mantissa.imag(), shift));
    normalize();
    return *this;
  }

  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
  friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }

  double log2_abs() const {
    if (is_zero()) return -kInf;
    return static_cast<double>(exponent) + std::log2(std::abs(mantissa));
  }

  double arg() const { return std::arg(mantissa); }

  bool representable() const {
    if (is_zero()) return true;
    const double l2 = log2_abs();
    return l2 < 1023.0 && l2 > -1073.0;
  }

  Complex to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    const int e = static_cast<int>(std::clamp<long long>(exponent, -2100, 2100));
    return Complex(std::ldexp(mantissa.real(), e), std::ldexp(mantissa.imag(), e));
  }
};

/// Result of evaluating an entire function: the plain value when it fits in
/// a double, plus the always-valid log-scale form.
struct EvalValue {
  Complex value{0.0, 0.0};
  double log2_abs = -kInf;
  double arg = 0.0;
  bool representable = true;

  static EvalValue from(const ScaledComplex& s) {
    EvalValue v;
    v.log2_abs = s.log2_abs();
    v.arg = s.arg();
    v.representable = s.representable();
    v.value = v.representable ? s.to_complex() : Complex(0.0, 0.0);
    return v;
  }

  static EvalValue from_complex(Complex z) { return from(ScaledComplex::from(z)); }

  Complex checked() const {
    if (!representable) throw eval_overflow("value exceeds double range; use log-scale form");
    return value;
  }
};

/// Chordal distance on the Riemann sphere, normalized so antipodal points are
/// at distance 1 (unit-diameter sphere). Non-finite inputs are treated as the
/// point at infinity; the identity chi(a,b) = chi(1/a,1/b) keeps the
/// computation overflow-free for large arguments.
inline double chordal_distance(Complex a, Complex b) {
  const bool fa = std::isfinite(a.real()) && std::isfinite(a.imag());
  const bool fb = std::isfinite(b.real()) && std::isfinite(b.imag());
  if (!fa && !fb) return 0.0;
  if (!fa || !fb) {
    const Complex g = fa ? a : b;
    const double m = std::abs(g);
    if (m > 1.0) return std::abs(1.0 / g) == 0.0 ? 0.0 : 1.0 / (m * std::hypot(1.0, 1.0 / m));
    return 1.0 / std::hypot(1.0, m);
  }
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (ma > 1.0 && mb > 1.0) return chordal_distance(1.0 / a, 1.0 / b);
  // here min(ma, mb) <= 1, so 1 + m^2 cannot overflow for the small one
  const double da = std::hypot(1.0, ma);
  if (mb <= 1.0) {
    return std::abs(a - b) / (da * std::hypot(1.0, mb));
  }
  // mb > 1 >= ma: rescale by mb
  return (std::abs(a - b) / mb) / (da * std::hypot(1.0 / mb, 1.0));
}

/// Chordal distance between two evaluation results; values beyond the double
/// range count as the point at infinity.
inline double chordal_distance(const EvalValue& a, const EvalValue& b) {
  const Complex ca = a.representable ? a.value : Complex(kInf, 0.0);
  const Complex cb = b.representable ? b.value : Complex(kInf, 0.0);
  return chordal_distance(ca, cb);
}

}  // namespace henon
