#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "henon/function.hpp"
#include "henon/geometry.hpp"

namespace henon {

/// Winding number certificate. `confidence` is the minimum modulus distance
/// of the sampled image curve from the base point; `conclusive` is false when
/// refinement hit its cap without resolving an unambiguous integer.
struct WindingResult {
  int index = 0;
  double confidence = 0.0;
  std::size_t samples_used = 0;
  bool conclusive = false;
};

struct WindingOptions {
  std::size_t initial_samples = 64;
  std::size_t max_samples = std::size_t{1} << 20;
  double integer_tolerance = 0.01;  // |accumulated/2pi - nearest integer|
};

namespace detail {

/// Total argument increment of the (closed) sequence of nonzero complex
/// values, in turns. `aliased` reports a step of at least a quarter turn,
/// which forces refinement before the count can be trusted.
inline double accumulated_turns(const std::vector<Complex>& w, bool& aliased) {
  double total = 0.0;
  aliased = false;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Complex a = w[k];
    const Complex b = w[(k + 1) % w.size()];
    const double dt = std::arg(b / a);
    if (std::abs(dt) > kPi / 2.0) aliased = true;
    total += dt;
  }
  return total / kTwoPi;
}

}  // namespace detail

/// Signed winding of the image curve f(boundary of `circle`) around `base`,
/// by accumulated argument increments over adaptively refined equispaced
/// samples. For f holomorphic on the closed disk with no boundary root this
/// equals the number of solutions of f(z) = base inside, with multiplicity.
template <PointEvaluatable F>
WindingResult winding_number(const F& f, const Disk& circle, Complex base,
                             const WindingOptions& opt = {}) {
  WindingResult res;
  for (std::size_t n = std::max<std::size_t>(opt.initial_samples, 8); n <= opt.max_samples; n *= 2) {
    std::vector<Complex> w(n);
    double conf = kInf;
    bool degenerate = false;
    for (std::size_t k = 0; k < n; ++k) {
      w[k] = f(circle_point(circle, k, n)) - base;
      const double m = std::abs(w[k]);
      conf = std::min(conf, m);
      if (m == 0.0 || !std::isfinite(m)) degenerate = true;
    }
    res.samples_used = n;
    res.confidence = std::isfinite(conf) ? conf : 0.0;
    if (degenerate) continue;  // sampled through the base point; refine
    bool aliased = false;
    const double turns = detail::accumulated_turns(w, aliased);
    const double nearest = std::round(turns);
    if (!aliased && std::abs(turns - nearest) <= opt.integer_tolerance) {
      res.index = static_cast<int>(nearest);
      res.conclusive = true;
      return res;
    }
  }
  res.conclusive = false;
  return res;
}

/// Winding of f along an explicit closed polyline (no refinement; the caller
/// owns the resolution).
template <PointEvaluatable F>
WindingResult winding_along(const F& f, const std::vector<Complex>& polyline, Complex base) {
  WindingResult res;
  res.samples_used = polyline.size();
  std::vector<Complex> w(polyline.size());
  double conf = kInf;
  for (std::size_t k = 0; k < polyline.size(); ++k) {
    w[k] = f(polyline[k]) - base;
    conf = std::min(conf, std::abs(w[k]));
  }
  res.confidence = conf;
  if (conf == 0.0) return res;
  bool aliased = false;
  const double turns = detail::accumulated_turns(w, aliased);
  const double nearest = std::round(turns);
  if (!aliased && std::abs(turns - nearest) <= 0.01) {
    res.index = static_cast<int>(nearest);
    res.conclusive = true;
  }
  return res;
}

/// Winding of the polyline itself around a point (point-in-region test for
/// traced island boundaries).
inline WindingResult polyline_winding(const std::vector<Complex>& polyline, Complex p) {
  struct Identity {
    Complex operator()(Complex z) const { return z; }
  };
  return winding_along(Identity{}, polyline, p);
}

/// Number of solutions of f(z) = target in the disk, with multiplicity, via
/// the argument principle. Throws inconclusive_error when the boundary comes
/// too close to a solution for the winding to certify.
template <PointEvaluatable F>
int count_preimages(const F& f, Complex target, const Disk& region, const WindingOptions& opt = {}) {
  const WindingResult w = winding_number(f, region, target, opt);
  if (!w.conclusive)
    throw inconclusive_error("argument-principle count inconclusive: image curve nears the target");
  return w.index;
}

struct NewtonOptions {
  std::size_t max_iterations = 60;
  double tolerance = 1e-13;  // relative to the working scale
};

/// One-dimensional Newton iteration for f(z) = target. Returns the refined
/// point, or nothing on non-convergence / runaway.
template <HolomorphicMap F>
std::optional<Complex> newton_solve(const F& f, Complex target, Complex seed, double scale,
                                    const NewtonOptions& opt = {}) {
  Complex z = seed;
  const double escape = 1e6 * (1.0 + std::abs(seed)) + 1e3 * scale;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    Complex fz;
    try {
      fz = f(z);
    } catch (const eval_overflow&) {
      return std::nullopt;
    }
    const Complex r = fz - target;
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return std::nullopt;
    const double rscale = std::max(std::abs(target), 1.0);
    if (std::abs(r) <= opt.tolerance * rscale) return z;
    const Complex df = f.derivative(z);
    if (df == Complex(0.0, 0.0) || !std::isfinite(std::abs(df))) return std::nullopt;
    const Complex step = r / df;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > escape)
      return std::nullopt;
  }
  return std::nullopt;
}

/// All solutions of f(z) = target found inside the disk by a deterministic
/// Newton sweep over a lattice of starting points, deduplicated. A sweep, not
/// a proof: it can miss roots, never invents them (residuals are checked).
template <HolomorphicMap F>
std::vector<Complex> preimages_in_disk(const F& f, Complex target, const Disk& region,
                                       std::size_t lattice = 16) {
  std::vector<Complex> roots;
  const double dedupe = 1e-8 * region.radius;
  const double step = 2.0 * region.radius / static_cast<double>(lattice);
  auto seeds = disk_lattice(region, step);
  seeds.push_back(region.center);
  for (const Complex s : seeds) {
    const auto z = newton_solve(f, target, s, region.radius);
    if (!z) continue;
    if (!region.contains(*z, 1e-12 * region.radius)) continue;
    bool dup = false;
    for (const Complex r : roots)
      if (std::abs(r - *z) <= dedupe) {
        dup = true;
        break;
      }
    if (!dup) roots.push_back(*z);
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

/// A connected preimage component of `target` under f, mapped with degree 1
/// (the numerical analogue of a univalent island). The boundary polyline is
/// the traced preimage of the target circle; `center_preimage` solves
/// f(z) = target.center inside the island.
struct Island {
  Disk source;
  Disk target;
  std::vector<Complex> boundary;
  int degree = 1;
  Complex center_preimage{0.0, 0.0};

  bool boundary_contains(Complex p) const {
    const auto w = polyline_winding(boundary, p);
    return w.conclusive && std::abs(w.index) == 1;
  }
};

struct IslandOptions {
  std::size_t seed_lattice = 14;       // Newton sweep density for center preimages
  std::size_t min_trace_steps = 256;   // target-angle resolution of the boundary trace
  std::size_t max_trace_steps = 1 << 17;
  std::size_t max_laps = 8;
  double corrector_tolerance = 1e-11;  // relative to the target radius
};

namespace detail {

enum class TraceStatus { closed, exited, open };

/// Predictor-corrector continuation of f(z) = c + R e^{i theta}, theta
/// increasing from 0, starting at a boundary point `z0`. Appends the traced
/// preimage polyline; stops when the curve closes (within laps), exits the
/// source disk, or exhausts the step budget.
template <HolomorphicMap F>
TraceStatus trace_island_boundary(const F& f, const Disk& source, const Disk& target, Complex z0,
                                  const IslandOptions& opt, std::vector<Complex>& polyline,
                                  int& laps_out) {
  const Complex c = target.center;
  const double R = target.radius;
  auto target_at = [&](double th) { return c + R * Complex(std::cos(th), std::sin(th)); };

  Complex z = z0;
  double theta = 0.0;
  double dtheta = kTwoPi / static_cast<double>(opt.min_trace_steps);
  const double dtheta_min = kTwoPi / static_cast<double>(opt.max_trace_steps);
  const double dtheta_max = kTwoPi / 64.0;
  std::size_t steps = 0;
  polyline.clear();
  polyline.push_back(z);
  double close_scale = 0.0;

  while (steps < opt.max_trace_steps) {
    const double theta_next = theta + dtheta;
    // predictor along the implicit curve, then Newton onto the new target
    const Complex w_next = target_at(theta_next);
    Complex pred = z;
    const Complex df = f.derivative(z);
    if (df != Complex(0.0, 0.0) && std::isfinite(std::abs(df)))
      pred += (w_next - target_at(theta)) / df;
    NewtonOptions nopt;
    nopt.max_iterations = 12;
    nopt.tolerance = opt.corrector_tolerance;
    const auto corrected = newton_solve(f, w_next, pred, source.radius, nopt);
    const bool ok = corrected && std::abs(*corrected - z) < 0.25 * source.radius;
    if (!ok) {
      if (dtheta / 2.0 < dtheta_min) return TraceStatus::open;
      dtheta /= 2.0;
      continue;
    }
    z = *corrected;
    theta = theta_next;
    ++steps;
    close_scale = std::max(close_scale, std::abs(z - polyline.back()));
    polyline.push_back(z);
    if (!source.contains(z)) return TraceStatus::exited;

    if (theta >= kTwoPi - 1e-12) {
      // back at target angle 0 (mod 2pi): did the preimage close?
      const double lap_count = theta / kTwoPi;
      const double gap = std::abs(z - polyline.front());
      if (gap <= std::max(1e-9 * source.radius, 4.0 * close_scale)) {
        laps_out = static_cast<int>(std::round(lap_count));
        return TraceStatus::closed;
      }
      if (lap_count >= static_cast<double>(opt.max_laps)) return TraceStatus::open;
    }
    if (steps % 16 == 0 && dtheta * 2.0 <= dtheta_max) dtheta *= 2.0;  // relax after a calm stretch
  }
  return TraceStatus::open;
}

}  // namespace detail

/// Searches the source disk for a preimage component of the target disk that
/// f maps univalently onto it. Returns the island with its traced boundary
/// and a winding-one certificate, or nothing when no center preimage lies in
/// the source disk or every traced component exits it / has degree >= 2.
/// Throws inconclusive_error when a trace fails to close within the budget.
template <HolomorphicMap F>
std::optional<Island> find_univalent_island(const F& f, const Disk& source, const Disk& target,
                                            const IslandOptions& opt = {}) {
  const auto centers = preimages_in_disk(f, target.center, source, opt.seed_lattice);
  if (centers.empty()) return std::nullopt;

  for (const Complex z0 : centers) {
    // walk from the center preimage out to the boundary preimage along the
    // radial segment s -> c + s R
    Complex zb = z0;
    bool radial_ok = true;
    const int radial_steps = 8;
    for (int s = 1; s <= radial_steps; ++s) {
      const Complex wt = target.center + (static_cast<double>(s) / radial_steps) * target.radius;
      NewtonOptions nopt;
      nopt.tolerance = opt.corrector_tolerance;
      nopt.max_iterations = 20;
      const auto next = newton_solve(f, wt, zb, source.radius, nopt);
      if (!next) {
        radial_ok = false;
        break;
      }
      zb = *next;
    }
    if (!radial_ok || !source.contains(zb)) continue;

    std::vector<Complex> polyline;
    int laps = 0;
    const auto status = detail::trace_island_boundary(f, source, target, zb, opt, polyline, laps);
    if (status == detail::TraceStatus::exited) continue;
    if (status == detail::TraceStatus::open)
      throw inconclusive_error("island boundary trace did not close within the step budget");
    if (laps != 1) continue;  // degree >= 2 component

    Island isl;
    isl.source = source;
    isl.target = target;
    isl.boundary = std::move(polyline);
    isl.degree = 1;
    isl.center_preimage = z0;

    // univalence certificate: f winds exactly once around the target center
    const auto cert = winding_along(f, isl.boundary, target.center);
    if (!cert.conclusive || cert.index != 1) continue;
    if (!isl.boundary_contains(z0)) continue;
    return isl;
  }
  return std::nullopt;
}

}  // namespace henon
