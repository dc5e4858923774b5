#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "farc/materials.hpp"
#include "farc/measurement.hpp"
#include "farc/reflection.hpp"
#include "test_support.hpp"

using namespace farc;
using farc::test::close;
using farc::test::Gen;
using farc::test::rel_close;

namespace {

const StatFarcParams kGlass = StatFarcParams::non_metallic(-15.45, 3.93, 3.97, 0.06);
const StatFarcParams kAluminium = StatFarcParams::metallic(-15.31, 6.26, 0.002);

LorenzParams random_lorenz(Gen& gen) {
  // Statistical-space draws around the fitted rows, mapped back to rad/ns.
  const double gamma = 2.0 * std::numbers::pi / gen.log_uniform(1e-3, 0.5);
  const double scale = 2.0 * std::numbers::pi * gamma;
  return {std::pow(10.0, gen.uniform(2.0, 6.0)) * scale,
          std::sqrt(std::pow(10.0, gen.uniform(2.0, 6.0)) * scale), gamma};
}

DrudeParams random_drude(Gen& gen) {
  const double gamma = 2.0 * std::numbers::pi / gen.log_uniform(1e-4, 0.5);
  return {std::pow(10.0, gen.uniform(3.0, 8.0)) * 2.0 * std::numbers::pi * gamma, gamma};
}

}  // namespace

TEST_CASE("roughness_factor") {
  CHECK(roughness_factor(0.0, 37.0, 260.0) == 1.0);
  CHECK(roughness_factor(4.8e-6, 89.999999, 300.0) == doctest::Approx(1.0).epsilon(1e-12));
  // exp(-8 (pi 4.8e-6 / (2.998e8 / 300e9))^2), mpmath.
  CHECK(rel_close(roughness_factor(4.8e-6, 0.0, 300.0), 0.99818006462953331522, 1e-14));
  CHECK_THROWS(roughness_factor(-1e-6, 0.0, 300.0));
  CHECK_THROWS_AS(roughness_factor(1e-6, 90.0, 300.0), std::domain_error);
  CHECK_THROWS_AS(roughness_factor(1e-6, 10.0, 0.0), std::domain_error);

  Gen gen(7);
  for (int i = 0; i < 1000; ++i) {
    const double sigma = gen.uniform(0.0, 2e-4);
    const double theta = gen.uniform(0.0, 89.0);
    const double f = gen.uniform(50.0, 1000.0);
    const double r = roughness_factor(sigma, theta, f);
    CHECK(r > 0.0);
    CHECK(r <= 1.0);
    CHECK(roughness_factor(sigma * 1.1, theta, f) <= r);
    CHECK(roughness_factor(sigma, theta, f * 1.1) <= r);
  }
}

TEST_CASE("principal_sqrt branch rule") {
  CHECK(principal_sqrt({-4.0, 0.0}) == Complex(0.0, 2.0));
  CHECK(principal_sqrt({-4.0, -0.0}) == Complex(0.0, 2.0));
  const auto r = principal_sqrt({-3.0, -1e-3});
  CHECK(r.real() >= 0.0);
}

TEST_CASE("fresnel_reflection") {
  for (double theta = 0.0; theta < 90.0; theta += 7.5) {
    const IncidenceGeometry g{theta, 260.0};
    CHECK(fresnel_reflection(MaterialSurface::dielectric(1.0, 0.0), g).value == Complex(0.0, 0.0));
    CHECK(fresnel_reflection(MaterialSurface::perfect_conductor(0.0), g).magnitude() == 1.0);
  }
  // (1 - sqrt 3.5) / (1 + sqrt 3.5), mpmath.
  const auto glass = fresnel_reflection(MaterialSurface::dielectric(3.5, 0.0), {0.0, 260.0});
  CHECK(rel_close(glass.value.real(), -0.30333704529042344577, 1e-14));
  CHECK(glass.value.imag() == 0.0);

  CHECK_THROWS_AS(MaterialSurface::dielectric(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(MaterialSurface::dielectric(2.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(fresnel_reflection(MaterialSurface::dielectric(2.0, 0.0), {90.0, 260.0}),
                  std::domain_error);
}

TEST_CASE("smooth Fresnel magnitude is non-decreasing in angle for real permittivity") {
  for (double eps : {1.01, 1.8, 2.8, 3.5, 5.5, 80.0}) {
    double prev = 0.0;
    for (int theta = 0; theta <= 89; ++theta) {
      const double mag =
          fresnel_reflection(MaterialSurface::dielectric(eps, 0.0), {double(theta), 260.0}).magnitude();
      CHECK(mag >= prev);
      prev = mag;
    }
  }
}

TEST_CASE("passive permittivities never reflect more than they receive") {
  Gen gen(99);
  for (int i = 0; i < 10000; ++i) {
    const Complex eps(gen.log_uniform(1.0, 1e6), gen.uniform(0.0, 1.0) < 0.1 ? 0.0
                                                                              : gen.log_uniform(1e-6, 1e6));
    const double theta = gen.uniform(0.0, 89.0);
    CHECK(std::abs(fresnel_smooth(eps, theta)) <= 1.0);
  }
}

TEST_CASE("bundled Fresnel materials order by reflectivity at 40 degrees and 260 GHz") {
  auto mag = [](const char* name) {
    return fresnel_reflection(find_material(name)->surface(), {40.0, 260.0}).magnitude();
  };
  CHECK(mag("aluminium alloy") > mag("tile"));
  CHECK(mag("tile") > mag("glass"));
  CHECK(mag("glass") > mag("board"));
  CHECK(mag("board") > mag("plasterboard"));
}

TEST_CASE("statfarc_eval against arbitrary-precision reference at 10 degrees") {
  struct Ref {
    const char* material;
    double f;
    double mag, re, im;
  };
  // tests/oracles/compute_oracles.py
  const Ref refs[] = {
      {"glass", 220, 0.21189219202468274885, -0.21183975469690859485, -0.004713742778156275857},
      {"glass", 260, 0.23998010845364344141, -0.23987081659679765743, -0.0072418090701101630051},
      {"glass", 320, 0.31853301619107771422, -0.31810694905641641237, -0.016469710556165539744},
      {"tile", 260, 0.29742261640098031251, -0.29722890522408143893, -0.01073269053400388903},
      {"board", 260, 0.15849856031136124789, -0.15846318777313312537, -0.0033483938763191099877},
      {"plasterboard", 220, 0.052031305953010631232, -0.052027569103211069054,
       -0.00062358029667117271305},
      {"plasterboard", 320, 0.073736068345918008324, -0.073713440783993457421,
       -0.0018265877746721358842},
      {"aluminium alloy", 220, 0.98770558175208718341, -0.98752810451911701085,
       -0.018723221120012636041},
      {"aluminium alloy", 320, 0.98642913993755475705, -0.98612174250429434739,
       -0.024624318838054799795},
  };
  for (const auto& r : refs) {
    CAPTURE(r.material);
    CAPTURE(r.f);
    const auto g = statfarc_eval(find_material(r.material)->fitted, 10.0, r.f);
    CHECK(std::abs(g.magnitude() - r.mag) < 1e-12);
    CHECK(std::abs(g.value.real() - r.re) < 1e-12);
    CHECK(std::abs(g.value.imag() - r.im) < 1e-12);
  }
}

TEST_CASE("statfarc_eval on the measurement grid") {
  const Grid grid = measurement_grid();
  for (double f : grid.frequencies_ghz)
    for (double t : grid.angles_deg) {
      const double m = statfarc_eval(kGlass, t, f).magnitude();
      CHECK(m >= 0.0);
      CHECK(m <= 1.0);
    }
  const auto& plaster = find_material("plasterboard")->fitted;
  for (double f : grid.frequencies_ghz)
    CHECK(statfarc_eval(plaster, 80.0, f).magnitude() > statfarc_eval(plaster, 10.0, f).magnitude());
}

TEST_CASE("statfarc_eval contract violations") {
  StatFarcParams missing_c = kGlass;
  missing_c.c.reset();
  CHECK_THROWS_AS(statfarc_eval(missing_c, 10.0, 260.0), std::invalid_argument);
  StatFarcParams metal_with_c = kAluminium;
  metal_with_c.c = 4.0;
  CHECK_THROWS_AS(statfarc_eval(metal_with_c, 10.0, 260.0), std::invalid_argument);
  CHECK_THROWS_AS(statfarc_eval(kAluminium, 10.0, 0.0), std::domain_error);
  StatFarcParams zero_d = kGlass;
  zero_d.d = 0.0;
  CHECK_THROWS_AS(statfarc_eval(zero_d, 10.0, 260.0), std::invalid_argument);
}

TEST_CASE("physical FARC limits") {
  for (double theta : {0.0, 30.0, 60.0, 85.0}) {
    CHECK(std::abs(farc_nonmetallic({0.0, 100.0, 10.0}, 0.0, {theta, 260.0}).value) == 0.0);
    CHECK(std::abs(farc_metallic({0.0, 10.0}, 0.0, {theta, 260.0}).value) == 0.0);
  }
  const LorenzParams lp{5e5, 400.0, 50.0};
  CHECK(farc_nonmetallic(lp, 0.0, {89.999, 260.0}).magnitude() > 0.999);
  // Deep-metal regime: omega_p^2 far above omega^2 and gamma*omega.
  CHECK(farc_metallic({1e14, 10.0}, 0.0, {20.0, 260.0}).magnitude() > 0.9999);
}

TEST_CASE("physical parameters recovered from fitted rows reproduce the statistical model") {
  const auto glass_phys = recover_physical_params(kGlass);
  REQUIRE(std::holds_alternative<LorenzParams>(glass_phys.dielectric));
  CHECK(close(farc_physical(glass_phys, {40.0, 260.0}).value,
              statfarc_eval(kGlass, 40.0, 260.0).value, 1e-10));

  const auto al_phys = recover_physical_params(kAluminium);
  REQUIRE(std::holds_alternative<DrudeParams>(al_phys.dielectric));
  CHECK(close(farc_physical(al_phys, {40.0, 260.0}).value,
              statfarc_eval(kAluminium, 40.0, 260.0).value, 1e-10));
}

TEST_CASE("map_physical_to_statistical and recover_physical_params") {
  SUBCASE("fitted rows survive recover then map") {
    for (const auto& entry : material_library()) {
      const auto back = map_physical_to_statistical(recover_physical_params(entry.fitted));
      CHECK(back.material_class == entry.fitted.material_class);
      CHECK(std::abs(back.a - entry.fitted.a) < 1e-12);
      CHECK(std::abs(back.b - entry.fitted.b) < 1e-12);
      CHECK(rel_close(back.d, entry.fitted.d, 1e-14));
      CHECK(back.c.has_value() == entry.fitted.c.has_value());
      if (back.c) CHECK(std::abs(*back.c - *entry.fitted.c) < 1e-12);
    }
  }
  SUBCASE("unit damping") {
    const auto phys = recover_physical_params(StatFarcParams::non_metallic(-15.0, 3.0, 4.0, 2.0 * std::numbers::pi));
    CHECK(std::get<LorenzParams>(phys.dielectric).gamma == 1.0);
  }
  SUBCASE("doubling gamma halves d and shifts b and c by -lg 2") {
    const LorenzParams lp{3.2e5, 210.0, 17.0};
    const auto p1 = map_physical_to_statistical(2e-9, lp);
    const auto p2 = map_physical_to_statistical(2e-9, LorenzParams{lp.omega_p_sq, lp.omega_0, 2.0 * lp.gamma});
    CHECK(p2.d == p1.d / 2.0);
    CHECK(std::abs((p2.b - p1.b) + std::log10(2.0)) < 1e-13);
    CHECK(std::abs((*p2.c - *p1.c) + std::log10(2.0)) < 1e-13);
    CHECK(p2.a == p1.a);
  }
  SUBCASE("round trip from physical parameters") {
    Gen gen(3);
    for (int i = 0; i < 500; ++i) {
      const double sigma = gen.log_uniform(1e-10, 1e-4);
      const auto lp = random_lorenz(gen);
      const auto back = recover_physical_params(map_physical_to_statistical(sigma, lp));
      const auto& blp = std::get<LorenzParams>(back.dielectric);
      CHECK(rel_close(back.roughness_sigma, sigma, 1e-10));
      CHECK(rel_close(blp.omega_p_sq, lp.omega_p_sq, 1e-10));
      CHECK(rel_close(blp.omega_0, lp.omega_0, 1e-10));
      CHECK(rel_close(blp.gamma, lp.gamma, 1e-10));

      const auto dp = random_drude(gen);
      const auto dback = recover_physical_params(map_physical_to_statistical(sigma, dp));
      CHECK_FALSE(dback.dielectric.index() == 0);  // no resonance recovered
      CHECK(rel_close(std::get<DrudeParams>(dback.dielectric).omega_p_sq, dp.omega_p_sq, 1e-10));
    }
  }
  SUBCASE("statistical and physical forms agree at random points") {
    Gen gen(11);
    for (int i = 0; i < 50; ++i) {
      const double sigma = gen.log_uniform(1e-7, 2e-5);
      const auto lp = random_lorenz(gen);
      const auto dp = random_drude(gen);
      const auto sp = map_physical_to_statistical(sigma, lp);
      const auto sd = map_physical_to_statistical(sigma, dp);
      for (int k = 0; k < 20; ++k) {
        const IncidenceGeometry g{gen.uniform(0.0, 89.0), gen.uniform(100.0, 1000.0)};
        CHECK(close(statfarc_eval(sp, g.theta_deg, g.frequency_ghz).value,
                    farc_nonmetallic(lp, sigma, g).value, 1e-10));
        CHECK(close(statfarc_eval(sd, g.theta_deg, g.frequency_ghz).value,
                    farc_metallic(dp, sigma, g).value, 1e-10));
      }
    }
  }
  CHECK_THROWS_AS(map_physical_to_statistical(0.0, LorenzParams{1.0, 1.0, 1.0}), std::domain_error);
  StatFarcParams bad = kGlass;
  bad.d = -1.0;
  CHECK_THROWS_AS(recover_physical_params(bad), std::domain_error);
}

TEST_CASE("material class parsing") {
  CHECK(parse_material_class("Metallic") == MaterialClass::Metallic);
  CHECK(parse_material_class("non-metallic") == MaterialClass::NonMetallic);
  CHECK_THROWS_AS(parse_material_class("wood"), std::invalid_argument);
}
