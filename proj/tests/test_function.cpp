#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "henon/function.hpp"
#include "henon/function_json.hpp"

using henon::Complex;
using henon::EntireFunction;
using Catch::Approx;

namespace {

// Deterministic spiral of test points, kept away from 0 and from large radii.
std::vector<Complex> test_grid(std::size_t count, double rmin, double rmax) {
  std::vector<Complex> pts;
  const double golden = 2.399963229728653;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    const double rho = rmin + (rmax - rmin) * t;
    const double th = golden * static_cast<double>(i);
    pts.emplace_back(rho * std::cos(th), rho * std::sin(th));
  }
  return pts;
}

double rel_err(Complex got, Complex want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

}  // namespace

TEST_CASE("exp evaluates elementary values") {
  const auto f = EntireFunction::make_exp();
  CHECK(f(Complex(0, 0)) == Complex(1.0, 0.0));
  CHECK(rel_err(f(Complex(1, 0)), Complex(std::exp(1.0), 0.0)) < 1e-14);
  CHECK(rel_err(f(Complex(0, henon::kPi)), Complex(-1.0, 0.0)) < 1e-14);
}

TEST_CASE("product kind is 1 at the origin") {
  const auto f = EntireFunction::make_product({Complex(2, 0), Complex(0, -5), Complex(17, 3)});
  CHECK(f(Complex(0, 0)) == Complex(1.0, 0.0));
}

TEST_CASE("single lacunary term evaluates by direct arithmetic") {
  // 0.5 * z^4 at z = 3 -> 40.5
  const auto f = EntireFunction::make_lacunary({{-1.0, 0.0, 4}});
  CHECK(rel_err(f(Complex(3, 0)), Complex(40.5, 0.0)) < 1e-13);
}

TEST_CASE("lacunary exponents must strictly increase") {
  CHECK_THROWS_AS(EntireFunction::make_lacunary({{0.0, 0.0, 3}, {0.0, 0.0, 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(EntireFunction::make_lacunary({{0.0, 0.0, 0}}), std::invalid_argument);
}

TEST_CASE("lacunary overflow is flagged, not silent") {
  const auto f = EntireFunction::make_lacunary({{0.0, 0.0, 600}});
  const auto v = f.eval(Complex(100.0, 0.0));  // |z|^600 = 10^1200
  CHECK_FALSE(v.representable);
  CHECK(v.log2_abs == Approx(600 * std::log2(100.0)).epsilon(1e-14));
  CHECK_THROWS_AS(f(Complex(100.0, 0.0)), henon::eval_overflow);
}

TEST_CASE("rescale composes with affine maps") {
  const auto e = EntireFunction::make_exp();

  SECTION("identity rescale of exp") {
    const auto r1 = henon::rescale(e, 1);
    CHECK(rel_err(r1(Complex(1, 0)), Complex(std::exp(1.0), 0.0)) < 1e-15);
  }
  SECTION("value at the origin is f(0)/n") {
    const auto fs = {EntireFunction::make_exp(),
                     EntireFunction::make_poly({Complex(3, 1), Complex(0, 0), Complex(1, 0)}),
                     EntireFunction::make_product({Complex(1, 1)})};
    for (const auto& f : fs) {
      for (std::int64_t n : {1, 2, 7, 40}) {
        const auto r = henon::rescale(f, n);
        CHECK(r(Complex(0, 0)) == f(Complex(0, 0)) / static_cast<double>(n));
      }
    }
  }
  SECTION("square law") {
    const auto sq = EntireFunction::make_poly({{0, 0}, {0, 0}, {1, 0}});
    const auto r2 = henon::rescale(sq, 2);
    CHECK(r2(Complex(1, 0)) == Complex(2.0, 0.0));
  }
  SECTION("rejects n = 0") {
    CHECK_THROWS_AS(henon::rescale(e, 0), std::invalid_argument);
  }
}

TEST_CASE("rescale conjugacy holds exactly in composition form") {
  const auto fs = {EntireFunction::make_exp(),
                   EntireFunction::make_poly({Complex(1, 2), Complex(-3, 0), Complex(0, 1), Complex(0.5, 0)}),
                   EntireFunction::make_lacunary({{-1.0, 0.3, 4}, {-9.0, 0.0, 11}}),
                   EntireFunction::make_product({Complex(4, 0), Complex(0, 9)})};
  for (const auto& f : fs) {
    for (std::int64_t n : {1, 3, 17}) {
      const auto r = henon::rescale(f, n);
      for (const auto& z : test_grid(25, 0.1, 2.0)) {
        const Complex lhs = r(z);
        const Complex rhs = f(static_cast<double>(n) * z) / static_cast<double>(n);
        CHECK(lhs == rhs);  // same composition, bit for bit
        CHECK(rel_err(static_cast<double>(n) * lhs, f(static_cast<double>(n) * z)) < 1e-15);
      }
    }
  }
}

TEST_CASE("derivatives agree with central finite differences") {
  struct Case {
    EntireFunction f;
    double rmin, rmax;
  };
  const Case cases[] = {
      {EntireFunction::make_exp(), 0.3, 2.5},
      {EntireFunction::make_poly({Complex(1, 0), Complex(0, -2), Complex(3, 0), Complex(0, 0), Complex(0.25, 1)}),
       0.3, 2.5},
      {EntireFunction::make_lacunary({{-1.0, 0.0, 4}, {-21.85, 0.0, 14}}), 0.3, 2.5},
      {EntireFunction::make_product({Complex(5, 0), Complex(0, -7), Complex(10, 10)}), 0.3, 2.5},
  };
  for (const auto& c : cases) {
    for (const auto& z : test_grid(100, c.rmin, c.rmax)) {
      const double h = 1e-6 * (1.0 + std::abs(z));
      const Complex fd = (c.f(z + Complex(h, 0)) - c.f(z - Complex(h, 0))) / (2.0 * h);
      const Complex df = c.f.derivative(z);
      if (std::abs(df) < 1e-12) continue;  // away from critical points only
      CHECK(rel_err(fd, df) < 1e-6);
    }
  }
}

TEST_CASE("plain and log-domain lacunary evaluation agree where both exist") {
  const auto f = EntireFunction::make_lacunary({{-1.0, 0.0, 4}, {-21.85, 0.1, 14}, {-80.0, -0.4, 40}});
  for (const auto& z : test_grid(60, 0.2, 4.0)) {
    const auto v = f.eval(z);
    REQUIRE(v.representable);
    if (std::abs(v.value) == 0.0) continue;
    CHECK(v.log2_abs == Approx(std::log2(std::abs(v.value))).margin(1e-12));
    CHECK(std::abs(std::remainder(v.arg - std::arg(v.value), henon::kTwoPi)) < 1e-12);
  }
}

TEST_CASE("circle modulus range") {
  SECTION("monomial has constant modulus") {
    const auto cube = EntireFunction::make_poly({{0, 0}, {0, 0}, {0, 0}, {1, 0}});
    const auto [lo, hi] = henon::circle_modulus_range(cube, {Complex(0, 0), 2.0}, 256);
    CHECK(lo == Approx(8.0).epsilon(1e-12));
    CHECK(hi == Approx(8.0).epsilon(1e-12));
  }
  SECTION("exp extrema on |z| = 3") {
    const auto e = EntireFunction::make_exp();
    const auto [lo, hi] = henon::circle_modulus_range(e, {Complex(0, 0), 3.0}, 4096);
    CHECK(std::abs(lo - std::exp(-3.0)) < 1e-3);
    CHECK(std::abs(hi - std::exp(3.0)) < 1e-3);
  }
  SECTION("transcendental growth beats r^2 at r = 10") {
    const auto e = EntireFunction::make_exp();
    const auto [lo, hi] = henon::circle_modulus_range(e, {Complex(0, 0), 10.0}, 512);
    CHECK(hi > 100.0);
  }
  SECTION("doubling samples never shrinks the range") {
    const auto fs = {EntireFunction::make_exp(),
                     EntireFunction::make_poly({Complex(1, 1), Complex(0, 0), Complex(2, -1)}),
                     EntireFunction::make_product({Complex(3, 1)})};
    for (const auto& f : fs) {
      const henon::Disk c{Complex(0.3, -0.2), 1.7};
      double prev_lo = -1.0, prev_hi = henon::kInf;
      bool first = true;
      for (std::size_t n = 64; n <= 1024; n *= 2) {
        const auto [lo, hi] = henon::circle_modulus_range(f, c, n);
        if (!first) {
          CHECK(lo <= prev_lo);
          CHECK(hi >= prev_hi);
        }
        prev_lo = lo;
        prev_hi = hi;
        first = false;
      }
    }
  }
  SECTION("rejects undersampling") {
    const auto e = EntireFunction::make_exp();
    CHECK_THROWS_AS(henon::circle_modulus_range(e, {Complex(0, 0), 1.0}, 32), std::invalid_argument);
  }
}

TEST_CASE("function JSON round trip") {
  const auto docs = {
      R"({"kind":"exp"})",
      R"({"kind":"poly","coefficients":[[1.0,2.0],-3.0,[0.0,1.0]]})",
      R"({"kind":"lacunary","terms":[{"log2_coeff":-1.0,"phase":0.0,"exponent":4},{"log2_coeff":-21.85,"exponent":14}]})",
      R"({"kind":"product","factors":[[4.0,0.0],[0.0,9.0]]})",
  };
  for (const auto* doc : docs) {
    const auto f = henon::function_from_json(nlohmann::json::parse(doc));
    const auto j = henon::function_to_json(f);
    const auto g = henon::function_from_json(j);
    CHECK(henon::function_to_json(g) == j);
    for (const auto& z : test_grid(10, 0.2, 1.5)) CHECK(f(z) == g(z));
  }
  CHECK_THROWS_AS(henon::function_from_json(nlohmann::json::parse(R"({"kind":"rational"})")),
                  std::invalid_argument);
}

TEST_CASE("determinism: repeated evaluation is bit-identical") {
  const auto f = EntireFunction::make_lacunary({{-1.0, 0.2, 4}, {-30.0, -1.0, 19}});
  for (const auto& z : test_grid(20, 0.5, 3.0)) {
    const auto a = f.eval(z);
    const auto b = f.eval(z);
    CHECK(a.value == b.value);
    CHECK(a.log2_abs == b.log2_abs);
    CHECK(a.arg == b.arg);
  }
}
