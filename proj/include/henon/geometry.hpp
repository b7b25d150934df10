#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "henon/scaled_complex.hpp"

namespace henon {

/// Euclidean disk in the plane.
struct Disk {
  Complex center{0.0, 0.0};
  double radius = 1.0;

  Disk() = default;
  Disk(Complex c, double r) : center(c), radius(r) {
    if (!(r > 0.0)) throw std::invalid_argument("disk radius must be positive");
  }

  bool contains(Complex z, double slack = 0.0) const {
    return std::abs(z - center) <= radius - slack;
  }
};

/// Product of a horizontal disk (z coordinate) and a vertical disk (w
/// coordinate). The vertical boundary is |z - c1| = r1, the horizontal
/// boundary |w - c2| = r2.
struct Bidisk {
  Disk horizontal;
  Disk vertical;

  bool contains(Complex z, Complex w, double slack = 0.0) const {
    return horizontal.contains(z, slack) && vertical.contains(w, slack);
  }
};

/// k-th of n equispaced points on the boundary circle. Angles are computed as
/// 2*pi*(k/n), so doubling n reproduces the old sample set bit-exactly (the
/// quotient 2k/2n rounds to the same double as k/n).
inline Complex circle_point(const Disk& d, std::size_t k, std::size_t n) {
  const double t = kTwoPi * (static_cast<double>(k) / static_cast<double>(n));
  return d.center + d.radius * Complex(std::cos(t), std::sin(t));
}

inline std::vector<Complex> circle_points(const Disk& d, std::size_t n) {
  std::vector<Complex> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) pts.push_back(circle_point(d, k, n));
  return pts;
}

/// Square-lattice points of pitch `step` inside the closed disk.
inline std::vector<Complex> disk_lattice(const Disk& d, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("lattice step must be positive");
  std::vector<Complex> pts;
  const long n = static_cast<long>(std::floor(d.radius / step + 1e-12));
  for (long a = -n; a <= n; ++a) {
    for (long b = -n; b <= n; ++b) {
      const Complex z = d.center + step * Complex(static_cast<double>(a), static_cast<double>(b));
      if (std::abs(z - d.center) <= d.radius) pts.push_back(z);
    }
  }
  return pts;
}

/// Deterministic interior sample of a disk: concentric rings plus the center.
inline std::vector<Complex> disk_rings(const Disk& d, std::size_t rings, std::size_t per_ring) {
  std::vector<Complex> pts;
  pts.push_back(d.center);
  for (std::size_t q = 1; q <= rings; ++q) {
    const double rho = d.radius * (static_cast<double>(q) / static_cast<double>(rings));
    const Disk ring{d.center, rho};
    for (std::size_t k = 0; k < per_ring; ++k) pts.push_back(circle_point(ring, k, per_ring));
  }
  return pts;
}

/// Axis-aligned rectangle sampled on a fixed lattice.
struct GridSpec {
  Complex lo{0.0, 0.0};
  Complex hi{0.0, 0.0};
  double step = 0.1;

  long nx() const { return static_cast<long>(std::floor((hi.real() - lo.real()) / step + 1e-9)) + 1; }
  long ny() const { return static_cast<long>(std::floor((hi.imag() - lo.imag()) / step + 1e-9)) + 1; }

  Complex point(long a, long b) const {
    return lo + Complex(static_cast<double>(a) * step, static_cast<double>(b) * step);
  }
};

}  // namespace henon
