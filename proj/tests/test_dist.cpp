#include <cmath>

#include "doctest.h"
#include "subdim/dist.hpp"
#include "subdim/errors.hpp"
#include "subdim/rng.hpp"

using namespace subdim;

TEST_SUITE("dist") {

TEST_CASE("chisq_sf at zero is one") {
  for (int df : {1, 2, 5, 28}) CHECK(chisq_sf(0.0, df) == doctest::Approx(1.0));
}

TEST_CASE("chisq_sf closed forms") {
  // df = 2: sf(x) = exp(-x/2)
  const double x = 2.0 * std::log(20.0);
  CHECK(chisq_sf(x, 2) == doctest::Approx(0.05).epsilon(1e-12));
  for (double t : {0.1, 1.0, 3.0, 10.0, 40.0})
    CHECK(chisq_sf(t, 2) == doctest::Approx(std::exp(-t / 2.0)).epsilon(1e-12));

  // df = 1: square of a standard normal; sf(z^2) = erfc(z / sqrt(2))
  CHECK(chisq_sf(3.8415, 1) == doctest::Approx(0.05).epsilon(1e-4));
  for (double t : {0.2, 1.0, 2.5, 9.0})
    CHECK(chisq_sf(t, 1) == doctest::Approx(std::erfc(std::sqrt(t / 2.0))).epsilon(1e-12));

  // df = 4: sf(x) = (1 + x/2) exp(-x/2)
  for (double t : {0.5, 2.0, 7.0, 25.0})
    CHECK(chisq_sf(t, 4) == doctest::Approx((1.0 + t / 2.0) * std::exp(-t / 2.0)).epsilon(1e-12));
}

TEST_CASE("chisq cdf/sf complement and pdf integration spot check") {
  for (int df : {1, 3, 7, 20})
    for (double x : {0.3, 1.7, 5.0, 19.0})
      CHECK(chisq_cdf(x, df) + chisq_sf(x, df) == doctest::Approx(1.0).epsilon(1e-12));

  // crude trapezoid over the pdf reproduces the cdf
  const int df = 5;
  const double upper = 9.0;
  const int steps = 20000;
  double integral = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double a = upper * i / steps;
    const double b = upper * (i + 1) / steps;
    integral += 0.5 * (chisq_pdf(a, df) + chisq_pdf(b, df)) * (b - a);
  }
  CHECK(integral == doctest::Approx(chisq_cdf(upper, df)).epsilon(1e-6));
}

TEST_CASE("weighted mix: trivial and collapse cases") {
  CHECK(weighted_chisq_mix_sf(0.0, 2.0, 5, 3.0) == doctest::Approx(1.0));
  CHECK(weighted_chisq_mix_sf(-1.0, 2.0, 5, 3.0) == doctest::Approx(1.0));

  // equal weights collapse to a plain chi-squared with df + 1
  for (double c : {0.5, 1.0, 4.0})
    for (int df : {1, 2, 5, 9})
      for (double x : {0.5, 3.0, 10.0, 30.0})
        CHECK(weighted_chisq_mix_sf(x, c, df, c) ==
              doctest::Approx(chisq_sf(x / c, df + 1)).epsilon(1e-6));
}

TEST_CASE("weighted mix: df_a = 0 degenerates to the chi2_1 term") {
  for (double x : {0.5, 2.0, 8.0})
    CHECK(weighted_chisq_mix_sf(x, 1.0, 0, 3.0) == doctest::Approx(chisq_sf(x / 3.0, 1)));
}

TEST_CASE("weighted mix is monotone non-increasing in x") {
  double previous = 1.0 + 1e-12;
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.4 * i;
    const double value = weighted_chisq_mix_sf(x, 2.0, 5, 3.0);
    CHECK(value <= previous + 1e-12);
    previous = value;
  }
}

TEST_CASE("weighted mix against a 1e7-draw Monte Carlo oracle") {
  const double a = 2.0, b = 3.0, x = 20.0;
  const int df_a = 5;
  const long draws = 10000000;
  RngStream rng(424242);
  long exceed = 0;
  for (long i = 0; i < draws; ++i) {
    const double z = rng.normal();
    if (a * rng.chi_square(df_a) + b * z * z >= x) ++exceed;
  }
  const double mc = static_cast<double>(exceed) / draws;
  const double se = std::sqrt(mc * (1.0 - mc) / draws);
  CHECK(std::abs(weighted_chisq_mix_sf(x, a, df_a, b) - mc) < 3.0 * se);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(chisq_sf(1.0, 0), InvalidInput);
  CHECK_THROWS_AS(weighted_chisq_mix_sf(1.0, -1.0, 2, 1.0), InvalidInput);
  CHECK_THROWS_AS(weighted_chisq_mix_sf(1.0, 1.0, 2, 0.0), InvalidInput);
  CHECK_THROWS_AS(weighted_chisq_mix_sf(1.0, 1.0, -1, 1.0), InvalidInput);
}

}  // TEST_SUITE
