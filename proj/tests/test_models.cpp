#include <doctest.h>

#include <cmath>

#include "ecf/models.hpp"
#include "ecf/rng.hpp"
#include "oracles.hpp"

using namespace ecf;

TEST_CASE("the two extreme ECFs and the sqrt table") {
  const GroundSet ground(3);
  const EcfTable indep = independent_ecf(ground);
  const EcfTable ident = identical_ecf(ground);
  CHECK(indep.theta(7) == 3.0);
  CHECK(ident.theta(5) == 1.0);
  CHECK(validate_ecf(indep).pass);
  CHECK(validate_ecf(ident).pass);

  const EcfTable root = sqrt_ecf(GroundSet(2));
  CHECK(root.theta(3) == doctest::Approx(std::sqrt(2.0)));
  for (int m = 2; m <= 8; ++m) CHECK(validate_ecf(sqrt_ecf(GroundSet(m))).pass);
}

TEST_CASE("m3_box_ecf computes union volumes of translated boxes") {
  SUBCASE("one-dimensional worked example with the convolution cross-check") {
    Matrix coords(2, 1);
    coords << 0.0, 0.5;
    const GroundSet ground({"s0", "s1"}, coords);
    const BoxKernel kernel(Vector::Zero(1), Vector::Ones(1));
    const EcfTable table = m3_box_ecf(ground, kernel);
    CHECK(table.theta(3) == doctest::Approx(1.5).epsilon(1e-14));
    // Bivariate convolution form: theta = 2 - overlap(s - t).
    const Scalar overlap = 0.5;
    CHECK(table.theta(3) == doctest::Approx(2.0 - overlap));
    CHECK(validate_ecf(table).pass);
  }
  SUBCASE("coincident sites give the identical process") {
    Matrix coords = Matrix::Zero(3, 2);
    const GroundSet ground({"a", "b", "c"}, coords);
    const BoxKernel kernel(Vector::Zero(2), Vector::Ones(2));
    const EcfTable table = m3_box_ecf(ground, kernel);
    for (SubsetMask subset = 1; subset <= 7u; ++subset) {
      CHECK(table.theta(subset) == doctest::Approx(1.0));
    }
  }
  SUBCASE("sites farther apart than the box give independence") {
    Matrix coords(3, 1);
    coords << 0.0, 5.0, 11.0;
    const GroundSet ground({"a", "b", "c"}, coords);
    const BoxKernel kernel(Vector::Zero(1), Vector::Ones(1));
    const EcfTable table = m3_box_ecf(ground, kernel);
    for (SubsetMask subset = 1; subset <= 7u; ++subset) {
      CHECK(table.theta(subset) == doctest::Approx(subset_size(subset)));
    }
  }
  SUBCASE("two-dimensional overlap") {
    Matrix coords(2, 2);
    coords << 0.0, 0.0, 0.5, 0.5;
    const GroundSet ground({"s0", "s1"}, coords);
    const BoxKernel kernel(Vector::Zero(2), Vector::Ones(2));
    CHECK(m3_box_ecf(ground, kernel).theta(3) == doctest::Approx(1.75));
  }
  SUBCASE("spreading the sites never decreases any coefficient") {
    const CounterRng rng(64, 0);
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      Matrix coords(4, 2);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 2; ++j) {
          coords(i, j) = 2.0 * rng.uniform(trial * 8 + static_cast<std::uint64_t>(2 * i + j));
        }
      }
      const BoxKernel kernel(Vector::Zero(2), Vector::Ones(2));
      const EcfTable tight = m3_box_ecf(GroundSet(default_labels(4), coords), kernel);
      const EcfTable spread =
          m3_box_ecf(GroundSet(default_labels(4), Matrix(1.5 * coords)), kernel);
      for (SubsetMask subset = 1; subset <= 15u; ++subset) {
        CHECK(spread.theta(subset) >= tight.theta(subset) - 1e-12);
      }
      CHECK(validate_ecf(tight).pass);
    }
  }
  SUBCASE("non-unit volume and missing coordinates are rejected") {
    CHECK_THROWS_AS(BoxKernel(Vector::Zero(2), Vector::Constant(2, 1.1)), std::invalid_argument);
    const GroundSet bare(2);
    CHECK_THROWS_AS(m3_box_ecf(bare, BoxKernel(Vector::Zero(1), Vector::Ones(1))),
                    std::invalid_argument);
  }
}

TEST_CASE("br_bivariate_theta") {
  CHECK(br_bivariate_theta(0.0) == 1.0);
  CHECK(br_bivariate_theta(8.0) == doctest::Approx(1.8427007929497149).epsilon(1e-12));
  CHECK(br_bivariate_theta(1e6) == doctest::Approx(2.0));
  CHECK_THROWS_AS(br_bivariate_theta(-1.0), std::invalid_argument);

  SUBCASE("nondecreasing and inside [1, 2) on a grid") {
    Scalar previous = 1.0;
    for (Scalar gamma = 0.0; gamma <= 40.0; gamma += 0.25) {
      const Scalar value = br_bivariate_theta(gamma);
      CHECK(value >= previous - 1e-15);
      CHECK(value >= 1.0);
      CHECK(value < 2.0);
      previous = value;
    }
  }
}

TEST_CASE("erf and the normal c.d.f. match the series/continued-fraction oracle") {
  for (Scalar x = 0.0; x <= 6.0; x += 0.125) {
    const long double reference = oracles::erf_oracle(static_cast<long double>(x));
    CHECK(std::abs(std::erf(x) - static_cast<Scalar>(reference)) <= 1e-13);
    const long double phi_ref =
        0.5L + 0.5L * oracles::erf_oracle(static_cast<long double>(x) / std::numbers::sqrt2_v<long double>);
    CHECK(std::abs(std_normal_cdf(x) - static_cast<Scalar>(phi_ref)) <= 1e-13);
    CHECK(std::abs(std_normal_cdf(-x) - (1.0 - std_normal_cdf(x))) <= 1e-15);
  }
}

TEST_CASE("br_ecf_mc") {
  Matrix coords(3, 2);
  coords << 0.0, 0.0, 2.0, 0.0, 0.0, 2.0;
  const GroundSet ground(default_labels(3), coords);
  const VariogramSpec variogram(1.0, 2.0);  // gamma(z) = |z|^2
  const int n = 40000;
  const BrMcResult result = br_ecf_mc(ground, variogram, n, 9001, 2);

  SUBCASE("singleton estimates are lognormal means near 1") {
    for (int site = 0; site < 3; ++site) {
      const SubsetMask mask = singleton_mask(site);
      CHECK(std::abs(result.raw_theta[mask] - 1.0) <= 3.0 * result.std_error[mask]);
    }
  }
  SUBCASE("bivariate entries agree with the closed form within 3 SE") {
    const std::pair<SubsetMask, Scalar> cases[] = {
        {0b011u, 4.0}, {0b101u, 4.0}, {0b110u, 8.0}};  // gamma = squared distance
    for (const auto& [mask, gamma] : cases) {
      CHECK(std::abs(result.raw_theta[mask] - br_bivariate_theta(gamma)) <=
            3.0 * result.std_error[mask]);
    }
  }
  SUBCASE("the repaired table is a valid ECF near the raw estimate") {
    CHECK(validate_ecf(result.ecf).pass);
    for (SubsetMask subset = 1; subset <= 7u; ++subset) {
      CHECK(std::abs(result.ecf.theta(subset) - result.raw_theta[subset]) <=
            5.0 * result.std_error[subset] + 1e-9);
    }
  }
  SUBCASE("deterministic for any worker count") {
    const BrMcResult one = br_ecf_mc(ground, variogram, 4096 + 17, 5, 1);
    const BrMcResult four = br_ecf_mc(ground, variogram, 4096 + 17, 5, 4);
    CHECK((one.raw_theta - four.raw_theta).abs().maxCoeff() == 0.0);
    CHECK((one.ecf.theta.values() - four.ecf.theta.values()).abs().maxCoeff() == 0.0);
  }
  SUBCASE("bad variogram parameters are rejected") {
    CHECK_THROWS_AS(VariogramSpec(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(VariogramSpec(1.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(br_ecf_mc(GroundSet(3), variogram, 100, 0), std::invalid_argument);
  }
}

TEST_CASE("hr_bivariate_neg_log_cdf") {
  SUBCASE("equal arguments reproduce the Brown-Resnick coefficient") {
    CHECK(std::abs(hr_bivariate_neg_log_cdf(8.0, 1.0, 1.0) - (1.0 + std::erf(1.0))) <= 1e-12);
    for (Scalar gamma : {0.1, 0.5, 1.0, 2.0, 8.0, 20.0}) {
      CHECK(std::abs(hr_bivariate_neg_log_cdf(gamma, 1.0, 1.0) - br_bivariate_theta(gamma)) <=
            1e-10);
    }
  }
  SUBCASE("homogeneity at equal arguments, exact to 1e-12") {
    for (Scalar gamma : {0.5, 2.0, 8.0}) {
      const Scalar reference = hr_bivariate_neg_log_cdf(gamma, 1.0, 1.0);
      for (Scalar x : {0.1, 0.7, 1.0, 3.0, 12.0}) {
        CHECK(std::abs(x * hr_bivariate_neg_log_cdf(gamma, x, x) - reference) <= 1e-12);
      }
    }
  }
  SUBCASE("limits") {
    CHECK(hr_bivariate_neg_log_cdf(0.0, 1.0, 2.0) == doctest::Approx(1.0));  // full dependence
    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    CHECK(hr_bivariate_neg_log_cdf(inf, 1.0, 2.0) == doctest::Approx(1.5));  // independence
    // Small gamma approaches the full-dependence limit from above.
    CHECK(hr_bivariate_neg_log_cdf(1e-10, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(hr_bivariate_neg_log_cdf(1e8, 1.0, 2.0) == doctest::Approx(1.5).epsilon(1e-3));
  }
  SUBCASE("bad arguments are rejected") {
    CHECK_THROWS_AS(hr_bivariate_neg_log_cdf(-1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(hr_bivariate_neg_log_cdf(1.0, 0.0, 1.0), std::domain_error);
  }
}

TEST_CASE("ball_ell") {
  Vector x = Vector::Zero(4);
  x[1] = 1.0;
  CHECK(ball_ell(x) == 1.0);
  for (SubsetMask subset = 1; subset <= 15u; ++subset) {
    Vector indicator = Vector::Zero(4);
    for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
      indicator[lowest_site(rest)] = 1.0;
    }
    CHECK(ball_ell(indicator) ==
          doctest::Approx(std::sqrt(static_cast<Scalar>(subset_size(subset)))));
  }
  x[0] = -0.5;
  CHECK_THROWS_AS(ball_ell(x), std::domain_error);
}
