#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "schwinger/continuum.hpp"
#include "schwinger/error.hpp"

namespace schwinger {
namespace {

constexpr double kPi = std::numbers::pi;

// Reference values computed with mpmath at 30 digits.
struct HeatPoint {
  double dx;
  double value;
};
constexpr HeatPoint kHeat[] = {{0.0, 0.398942280401432677939946059934},
                               {0.5, 0.352065326764299477774680441597},
                               {1.0, 0.241970724519143349797830192936},
                               {1.5, 0.129517595665891727614099557955},
                               {2.0, 0.0539909665131880519505642004107}};

struct RealPoint {
  double dx;
  Complex value;
};
// mass 1.5, hbar 0.9, t 0.8
const RealPoint kReal[] = {
    {0.0, {0.407168759919099918331360190662, -0.407168759919099918331360190662}},
    {0.7, {0.554190018274805379340860390733, -0.15635287574165732607419069276}},
    {1.3, {0.323124980049136653011240233042, 0.476616245397028295859198714127}}};

// mass 1, hbar 1, T 0.5, circumference 2 pi, |n| <= 10
constexpr HeatPoint kImage[] = {{0.0, 0.564189583547756295024076275432},
                                {kPi / 2, 0.0478460822292586672626336328808},
                                {kPi, 0.0000583633657681838368772052890967}};

TEST(FreeKernel, HeatKernel) {
  for (const auto& p : kHeat) {
    const Complex k = free_kernel(1.0, 1.0, 1.0, p.dx, PhaseMode::euclidean);
    EXPECT_NEAR(k.real(), p.value, 1e-15);
    EXPECT_EQ(k.imag(), 0.0);
    EXPECT_NEAR(free_kernel(1.0, 1.0, 1.0, -p.dx, PhaseMode::euclidean).real(), p.value, 1e-15);
  }
}

TEST(FreeKernel, RealMode) {
  for (const auto& p : kReal) EXPECT_LE(std::abs(free_kernel(1.5, 0.9, 0.8, p.dx, PhaseMode::real) - p.value), 1e-14);
}

TEST(SliceNormalization, Branch) {
  const Complex r = slice_normalization(1.0, 1.0, 1.0, PhaseMode::real);
  const double mod = 1.0 / std::sqrt(2 * kPi);
  EXPECT_NEAR(r.real(), mod / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.imag(), -mod / std::sqrt(2.0), 1e-15);
  const Complex e = slice_normalization(2.0, 0.5, 0.25, PhaseMode::euclidean);
  EXPECT_NEAR(e.real(), std::sqrt(2.0 / (2 * kPi * 0.5 * 0.25)), 1e-14);
}

TEST(SliceConfig, Validation) {
  SliceConfig cfg;
  EXPECT_NO_THROW(check_slice_config(cfg));
  for (auto mutate : std::initializer_list<void (*)(SliceConfig&)>{
           [](SliceConfig& c) { c.N = 0; }, [](SliceConfig& c) { c.T = 0.0; }, [](SliceConfig& c) { c.mass = -1.0; },
           [](SliceConfig& c) { c.hbar = 0.0; }, [](SliceConfig& c) { c.L = 0.0; }, [](SliceConfig& c) { c.M = 1; }}) {
    SliceConfig bad;
    mutate(bad);
    try {
      check_slice_config(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::range);
    }
  }
}

TEST(LineRecursion, MatchesHeatKernel) {
  for (std::size_t n : {1u, 2u, 5u, 16u}) {
    SliceConfig cfg;
    cfg.N = n;
    for (const auto& p : kHeat) EXPECT_NEAR(sliced_line_recursion(cfg, 0.3, 0.3 + p.dx).real(), p.value, 1e-12 * p.value);
  }
}

TEST(LineRecursion, RealModeMatchesExactKernel) {
  for (std::size_t n = 1; n <= 64; n *= 2) {
    SliceConfig cfg{n, 0.8, 1.5, 0.9, PhaseMode::real};
    for (const auto& p : kReal) {
      const Complex v = sliced_line_recursion(cfg, -0.2, -0.2 + p.dx);
      EXPECT_LE(std::abs(v - p.value), 1e-9 * std::abs(p.value)) << "N=" << n;
    }
  }
}

TEST(LineQuadrature, MatchesHeatKernel) {
  SliceConfig cfg;
  cfg.N = 64;
  for (const auto& p : kHeat) {
    const auto r = sliced_line_quadrature(cfg, 0.0, p.dx);
    EXPECT_LE(std::abs(r.value.real() - p.value), 1e-3 * p.value) << p.dx;
    EXPECT_TRUE(r.warnings.empty());
  }
}

TEST(LineQuadrature, WarnsOnNarrowDomain) {
  SliceConfig cfg;
  cfg.N = 8;
  cfg.L = 2.0;
  EXPECT_FALSE(sliced_line_quadrature(cfg, 0.0, 1.0).warnings.empty());
}

TEST(LineQuadrature, RealModeRejected) {
  SliceConfig cfg;
  cfg.mode = PhaseMode::real;
  EXPECT_THROW(sliced_line_quadrature(cfg, 0.0, 1.0), Error);
}

TEST(ImageSum, ReferenceValues) {
  for (const auto& p : kImage) EXPECT_NEAR(image_sum(1.0, 1.0, 0.5, 2 * kPi, p.dx), p.value, 1e-15 + 1e-13 * p.value);
  // Periodic and even in the angle.
  EXPECT_NEAR(image_sum(1.0, 1.0, 0.5, 2 * kPi, 1.0), image_sum(1.0, 1.0, 0.5, 2 * kPi, -1.0), 1e-15);
  EXPECT_NEAR(image_sum(1.0, 1.0, 0.5, 2 * kPi, 1.0), image_sum(1.0, 1.0, 0.5, 2 * kPi, 1.0 + 2 * kPi), 1e-13);
}

TEST(ImageSum, SmallTimeApproachesLine) {
  for (double t : {1e-2, 1e-3}) {
    const double ratio = image_sum(1.0, 1.0, t, 2 * kPi, 0.1) / free_kernel(1.0, 1.0, t, 0.1, PhaseMode::euclidean).real();
    EXPECT_NEAR(ratio, 1.0, 1e-3);
  }
}

TEST(CirclePropagator, MatchesImageSum) {
  SliceConfig cfg;
  cfg.N = 64;
  cfg.T = 0.5;
  const double lc = 2 * kPi;
  for (double dtheta : {0.0, kPi / 4, kPi / 2}) {
    const auto r = circle_propagator(cfg, lc, 256, 0.0, dtheta);
    const double ref = image_sum(1.0, 1.0, 0.5, lc, dtheta);
    EXPECT_LE(std::abs(r.value.real() - ref), 1e-2 * ref) << dtheta;
    EXPECT_TRUE(r.warnings.empty());
  }
}

TEST(CirclePropagator, WindingSymmetry) {
  SliceConfig cfg;
  cfg.N = 16;
  cfg.T = 0.5;
  const double lc = 2 * kPi, h = lc / 64;
  const double a = circle_propagator(cfg, lc, 64, 0.0, 5 * h).value.real();
  EXPECT_NEAR(circle_propagator(cfg, lc, 64, 0.0, -5 * h).value.real(), a, 1e-14);
  EXPECT_NEAR(circle_propagator(cfg, lc, 64, 10 * h, 15 * h).value.real(), a, 1e-14);
  EXPECT_NEAR(circle_propagator(cfg, lc, 64, 0.0, 5 * h + lc).value.real(), a, 1e-14);
}

TEST(CirclePropagator, WarningsAndErrors) {
  SliceConfig cfg;
  cfg.N = 64;
  cfg.T = 0.5;
  EXPECT_FALSE(circle_propagator(cfg, 2 * kPi, 16, 0.0, 0.0).warnings.empty());
  EXPECT_FALSE(circle_propagator(cfg, 2 * kPi, 64, 0.0, 0.01).warnings.empty());
  cfg.mode = PhaseMode::real;
  EXPECT_THROW(circle_propagator(cfg, 2 * kPi, 64, 0.0, 0.0), Error);
}

TEST(Convergence, Schedule) {
  EXPECT_EQ(doubling_schedule(1, 64), (std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64}));
  EXPECT_EQ(doubling_schedule(3, 20), (std::vector<std::size_t>{3, 6, 12}));
  EXPECT_THROW(doubling_schedule(0, 4), Error);
  EXPECT_THROW(doubling_schedule(8, 4), Error);
}

TEST(Convergence, Monotonicity) {
  ConvergenceTable t;
  std::size_t n = 1;
  for (double e : {0.5, 0.1, 0.2, 1e-3, 1e-13, 1e-14}) {
    t.rows.push_back({n, 1.0 / static_cast<double>(n), {}, {}, e});
    n *= 2;
  }
  EXPECT_FALSE(is_monotone(t, 1));
  EXPECT_TRUE(is_monotone(t, 4));
  // Noise under the floor does not count as growth.
  t.rows.push_back({64, 1.0 / 64, {}, {}, 0.5e-12});
  EXPECT_TRUE(is_monotone(t, 4));
  EXPECT_FALSE(is_monotone(t, 4, 1e-15));
  t.rows.push_back({128, 1.0 / 128, {}, {}, 1e-6});
  EXPECT_FALSE(is_monotone(t, 4));
}

TEST(Convergence, QuadratureSweep) {
  SliceConfig cfg;
  const auto table = converge_line(cfg, 0.0, 1.0, doubling_schedule(1, 64), LineMethod::quadrature);
  ASSERT_EQ(table.rows.size(), 7u);
  EXPECT_TRUE(is_monotone(table, 3));
  EXPECT_LE(table.rows.back().rel_error, 1e-3);
  for (const auto& row : table.rows) EXPECT_NEAR(row.reference.real(), kHeat[2].value, 1e-15);
}

TEST(Convergence, CircleSweep) {
  SliceConfig cfg;
  cfg.T = 0.5;
  const auto table = converge_circle(cfg, 2 * kPi, 128, 0.0, kPi / 2, {8, 16, 32});
  ASSERT_EQ(table.rows.size(), 3u);
  for (const auto& row : table.rows) EXPECT_NEAR(row.reference.real(), kImage[1].value, 1e-15);
  EXPECT_LE(table.rows.back().rel_error, 1e-2);
}

}  // namespace
}  // namespace schwinger
