#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "henon/geometry.hpp"
#include "henon/scaled_complex.hpp"

namespace henon {

/// Evaluatable representation of an entire function. Supported kinds:
///   exp       f(z) = e^z
///   poly      f(z) = sum c_k z^k, complex coefficients in ascending order
///   lacunary  f(z) = sum a_j z^{n_j}, a_j given as (log2|a_j|, arg a_j),
///             exponents strictly increasing positive integers
///   product   f(z) = prod (1 - z/a_l) over a finite zero list
///
/// Evaluation is deterministic (fixed accumulation order) and carried out in
/// scaled mantissa/exponent arithmetic, so lacunary series whose terms exceed
/// the double range still produce exact log-magnitude + phase results.
class EntireFunction {
 public:
  enum class Kind { exp, poly, lacunary, product };

  struct LacunaryTerm {
    double log2_coeff = 0.0;
    double phase = 0.0;
    std::int64_t exponent = 1;
  };

  static EntireFunction make_exp() { return EntireFunction(Kind::exp); }

  static EntireFunction make_poly(std::vector<Complex> coeffs) {
    if (coeffs.empty()) coeffs.push_back(Complex(0.0, 0.0));
    EntireFunction f(Kind::poly);
    f.coeffs_ = std::move(coeffs);
    f.dcoeffs_.resize(f.coeffs_.size() > 1 ? f.coeffs_.size() - 1 : 1, Complex(0.0, 0.0));
    for (std::size_t k = 1; k < f.coeffs_.size(); ++k)
      f.dcoeffs_[k - 1] = static_cast<double>(k) * f.coeffs_[k];
    return f;
  }

  static EntireFunction make_constant(Complex c) { return make_poly({c}); }

  static EntireFunction make_lacunary(std::vector<LacunaryTerm> terms) {
    std::int64_t prev = 0;
    for (const auto& t : terms) {
      if (t.exponent <= prev)
        throw std::invalid_argument("lacunary exponents must be strictly increasing positive integers");
      prev = t.exponent;
    }
    EntireFunction f(Kind::lacunary);
    f.terms_ = std::move(terms);
    return f;
  }

  static EntireFunction make_product(std::vector<Complex> zeros) {
    for (const auto& a : zeros)
      if (a == Complex(0.0, 0.0)) throw std::invalid_argument("product factors require nonzero zeros");
    EntireFunction f(Kind::product);
    f.zeros_ = std::move(zeros);
    return f;
  }

  Kind kind() const { return kind_; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  const std::vector<LacunaryTerm>& lacunary_terms() const { return terms_; }
  const std::vector<Complex>& product_zeros() const { return zeros_; }

  /// Term count kept for the series/product kinds (the truncation of the
  /// mathematically infinite object).
  std::size_t truncation() const {
    switch (kind_) {
      case Kind::lacunary: return terms_.size();
      case Kind::product: return zeros_.size();
      default: return 0;
    }
  }

  EvalValue eval(Complex z) const { return EvalValue::from(eval_scaled(z)); }

  EvalValue eval_derivative(Complex z) const { return EvalValue::from(derivative_scaled(z)); }

  /// Plain complex value; throws eval_overflow when out of double range.
  Complex operator()(Complex z) const { return eval(z).checked(); }

  Complex derivative(Complex z) const { return eval_derivative(z).checked(); }

  ScaledComplex eval_scaled(Complex z) const {
    switch (kind_) {
      case Kind::exp: return exp_scaled(z);
      case Kind::poly: return horner(coeffs_, z);
      case Kind::lacunary: {
        ScaledComplex acc = ScaledComplex::zero();
        for (const auto& t : terms_) acc += term_value(t, z, 0);
        return acc;
      }
      case Kind::product: {
        ScaledComplex acc = ScaledComplex::from(Complex(1.0, 0.0));
        for (const auto& a : zeros_) acc *= ScaledComplex::from(Complex(1.0, 0.0) - z / a);
        return acc;
      }
    }
    return ScaledComplex::zero();
  }

  ScaledComplex derivative_scaled(Complex z) const {
    switch (kind_) {
      case Kind::exp: return exp_scaled(z);
      case Kind::poly: return horner(dcoeffs_, z);
      case Kind::lacunary: {
        ScaledComplex acc = ScaledComplex::zero();
        for (const auto& t : terms_) acc += term_value(t, z, 1);
        return acc;
      }
      case Kind::product: {
        // sum over l of (-1/a_l) * prod_{m != l} (1 - z/a_m)
        ScaledComplex acc = ScaledComplex::zero();
        for (std::size_t l = 0; l < zeros_.size(); ++l) {
          ScaledComplex p = ScaledComplex::from(-1.0 / zeros_[l]);
          for (std::size_t m = 0; m < zeros_.size(); ++m) {
            if (m == l) continue;
            p *= ScaledComplex::from(Complex(1.0, 0.0) - z / zeros_[m]);
          }
          acc += p;
        }
        return acc;
      }
    }
    return ScaledComplex::zero();
  }

 private:
  explicit EntireFunction(Kind k) : kind_(k) {}

  static ScaledComplex exp_scaled(Complex z) {
    // |e^z| = 2^(Re z / ln 2), arg = Im z
    constexpr double kLog2E = 1.4426950408889634073599246810018921;
    return ScaledComplex::from_log2(z.real() * kLog2E, z.imag());
  }

  static ScaledComplex horner(const std::vector<Complex>& c, Complex z) {
    const ScaledComplex zs = ScaledComplex::from(z);
    ScaledComplex acc = ScaledComplex::zero();
    for (std::size_t k = c.size(); k-- > 0;) {
      acc *= zs;
      acc += ScaledComplex::from(c[k]);
    }
    return acc;
  }

  /// Value of a_j z^{n_j} (order 0) or its derivative a_j n_j z^{n_j - 1}
  /// (order 1), assembled directly in the log2 domain.
  static ScaledComplex term_value(const LacunaryTerm& t, Complex z, int order) {
    const double mz = std::abs(z);
    const std::int64_t n = t.exponent - order;
    if (mz == 0.0) {
      if (n > 0) return ScaledComplex::zero();
      // n == 0: constant term of the derivative
      double l2 = t.log2_coeff + (order == 1 ? std::log2(static_cast<double>(t.exponent)) : 0.0);
      return ScaledComplex::from_log2(l2, t.phase);
    }
    double l2 = t.log2_coeff + static_cast<double>(n) * std::log2(mz);
    double ph = t.phase + static_cast<double>(n) * std::arg(z);
    if (order == 1) l2 += std::log2(static_cast<double>(t.exponent));
    return ScaledComplex::from_log2(l2, std::remainder(ph, kTwoPi));
  }

  Kind kind_;
  std::vector<Complex> coeffs_;
  std::vector<Complex> dcoeffs_;
  std::vector<LacunaryTerm> terms_;
  std::vector<Complex> zeros_;
};

/// f_n(z) = f(n z) / n, the n-th member of the rescaled family of `base`.
/// Evaluation composes the base evaluation with the two affine maps, nothing
/// else, so rescale(f, n)(z) == f(n z)/n holds bit-for-bit.
template <typename F>
struct Rescaled {
  F base;
  std::int64_t n = 1;

  Rescaled(F b, std::int64_t scale) : base(std::move(b)), n(scale) {
    if (scale < 1) throw std::invalid_argument("rescaling index must be >= 1");
  }

  Complex operator()(Complex z) const { return base(static_cast<double>(n) * z) / static_cast<double>(n); }

  // d/dz [f(nz)/n] = f'(nz)
  Complex derivative(Complex z) const { return base.derivative(static_cast<double>(n) * z); }

  EvalValue eval(Complex z) const {
    ScaledComplex s = base.eval_scaled(static_cast<double>(n) * z);
    s *= ScaledComplex::from(Complex(1.0 / static_cast<double>(n), 0.0));
    return EvalValue::from(s);
  }

  EvalValue eval_derivative(Complex z) const {
    return base.eval_derivative(static_cast<double>(n) * z);
  }
};

inline Rescaled<EntireFunction> rescale(EntireFunction f, std::int64_t n) {
  return Rescaled<EntireFunction>(std::move(f), n);
}

template <typename F>
concept PointEvaluatable = requires(const F& f, Complex z) {
  { f(z) } -> std::convertible_to<Complex>;
};

template <typename F>
concept HolomorphicMap = PointEvaluatable<F> && requires(const F& f, Complex z) {
  { f.derivative(z) } -> std::convertible_to<Complex>;
};

/// Pairs a value callback with its derivative so ad-hoc functions (tests,
/// closures over other data) satisfy HolomorphicMap.
template <typename V, typename D>
struct FnPair {
  V value;
  D deriv;
  Complex operator()(Complex z) const { return value(z); }
  Complex derivative(Complex z) const { return deriv(z); }
};

template <typename V, typename D>
FnPair(V, D) -> FnPair<V, D>;

/// Min/max of |f| over `samples` equispaced boundary points of the circle.
/// The sample set is nested under doubling, so refining never increases the
/// minimum nor decreases the maximum.
template <PointEvaluatable F>
std::pair<double, double> circle_modulus_range(const F& f, const Disk& c, std::size_t samples) {
  if (samples < 64) throw std::invalid_argument("circle_modulus_range needs at least 64 samples");
  double lo = kInf;
  double hi = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double m = std::abs(f(circle_point(c, k, samples)));
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return {lo, hi};
}

template <typename F>
concept LogScaleEvaluatable = requires(const F& f, Complex z) {
  { f.eval(z) } -> std::convertible_to<EvalValue>;
};

/// Same circle statistics in the log2 domain; survives values far outside
/// the double range.
template <LogScaleEvaluatable F>
std::pair<double, double> circle_log2_modulus_range(const F& f, const Disk& c, std::size_t samples) {
  if (samples < 64) throw std::invalid_argument("circle_log2_modulus_range needs at least 64 samples");
  double lo = kInf;
  double hi = -kInf;
  for (std::size_t k = 0; k < samples; ++k) {
    const double m = f.eval(circle_point(c, k, samples)).log2_abs;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return {lo, hi};
}

}  // namespace henon
