#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ecf/dependency_set.hpp"
#include "ecf/models.hpp"
#include "ecf/rng.hpp"
#include "oracles.hpp"

using namespace ecf;

namespace {

Vector make_vector(std::initializer_list<Scalar> values) {
  Vector x(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (Scalar v : values) x[i++] = v;
  return x;
}

bool has_vertex(const std::vector<Vector>& vertices, const Vector& target, Scalar tol = 1e-9) {
  return std::any_of(vertices.begin(), vertices.end(), [&](const Vector& v) {
    return (v - target).cwiseAbs().maxCoeff() <= tol;
  });
}

}  // namespace

TEST_CASE("halfspaces_from_ecf") {
  SUBCASE("bounds are the extremal coefficients") {
    const auto indep = halfspaces_from_ecf(independent_ecf(GroundSet(2)));
    REQUIRE(indep.size() == 3);
    CHECK(indep[0].bound == 1.0);
    CHECK(indep[1].bound == 1.0);
    CHECK(indep[2].bound == 2.0);
    const auto ident = halfspaces_from_ecf(identical_ecf(GroundSet(2)));
    CHECK(ident[2].bound == 1.0);
    const auto root = halfspaces_from_ecf(sqrt_ecf(GroundSet(2)));
    CHECK(root[2].bound == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("invalid tables are rejected") {
    EcfTable bad = independent_ecf(GroundSet(2));
    bad.theta.set(3, 2.5);
    CHECK_THROWS_AS(halfspaces_from_ecf(bad), std::invalid_argument);
  }
}

TEST_CASE("enumerate_vertices on the worked polytopes") {
  SUBCASE("sqrt at m = 2: exactly the five listed vertices") {
    const DepSetPolytope poly = dep_set_polytope(sqrt_ecf(GroundSet(2)));
    REQUIRE(poly.vertices.size() == 5);
    const Scalar r = std::sqrt(2.0) - 1.0;
    CHECK(has_vertex(poly.vertices, make_vector({0.0, 0.0})));
    CHECK(has_vertex(poly.vertices, make_vector({1.0, 0.0})));
    CHECK(has_vertex(poly.vertices, make_vector({0.0, 1.0})));
    CHECK(has_vertex(poly.vertices, make_vector({1.0, r})));
    CHECK(has_vertex(poly.vertices, make_vector({r, 1.0})));
  }
  SUBCASE("identical at m = 3: the cross-polytope corners") {
    const DepSetPolytope poly = dep_set_polytope(identical_ecf(GroundSet(3)));
    REQUIRE(poly.vertices.size() == 4);
    CHECK(has_vertex(poly.vertices, make_vector({0.0, 0.0, 0.0})));
    CHECK(has_vertex(poly.vertices, make_vector({1.0, 0.0, 0.0})));
    CHECK(has_vertex(poly.vertices, make_vector({0.0, 1.0, 0.0})));
    CHECK(has_vertex(poly.vertices, make_vector({0.0, 0.0, 1.0})));
  }
  SUBCASE("independent at m = 3: the eight cube corners") {
    const DepSetPolytope poly = dep_set_polytope(independent_ecf(GroundSet(3)));
    REQUIRE(poly.vertices.size() == 8);
    for (SubsetMask corner = 0; corner <= 7u; ++corner) {
      Vector v = Vector::Zero(3);
      for (SubsetMask rest = corner; rest != 0; rest &= rest - 1) v[lowest_site(rest)] = 1.0;
      CHECK(has_vertex(poly.vertices, v));
    }
  }
  SUBCASE("dimension guard") {
    CHECK_THROWS_AS(enumerate_vertices({}, 7), std::invalid_argument);
  }
}

TEST_CASE("support_function") {
  const EcfTable table = sqrt_ecf(GroundSet(3));
  const DepSetPolytope poly = dep_set_polytope(table);
  SUBCASE("indicator directions recover theta") {
    for (SubsetMask subset = 1; subset <= 7u; ++subset) {
      Vector x = Vector::Zero(3);
      for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) x[lowest_site(rest)] = 1.0;
      CHECK(std::abs(support_function(poly, x) - table.theta(subset)) <= 1e-9);
    }
  }
  SUBCASE("unit directions have unit support") {
    for (int site = 0; site < 3; ++site) {
      Vector x = Vector::Zero(3);
      x[site] = 1.0;
      CHECK(std::abs(support_function(poly, x) - 1.0) <= 1e-9);
    }
  }
  SUBCASE("equals the TM stable tail dependence on random directions") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const int m = 2 + static_cast<int>(seed % 3);
      const EcfTable random_table = random_valid_ecf(m, 3 + static_cast<int>(seed % 5), seed);
      const DepSetPolytope random_poly = dep_set_polytope(random_table);
      const TmProcess process = tm_from_ecf(random_table);
      const CounterRng rng(seed, 11);
      for (std::uint64_t trial = 0; trial < 25; ++trial) {
        Vector x(m);
        for (int i = 0; i < m; ++i) {
          x[i] = rng.uniform(trial * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(i));
        }
        CHECK(std::abs(support_function(random_poly, x) - stable_tail_dependence(process, x)) <=
              1e-9);
      }
    }
  }
  SUBCASE("empty vertex list is rejected") {
    DepSetPolytope empty{GroundSet(2), {}, {}};
    CHECK_THROWS_AS(support_function(empty, Vector::Ones(2)), std::invalid_argument);
  }
}

TEST_CASE("contains and touches_plane") {
  const DepSetPolytope root3 = dep_set_polytope(sqrt_ecf(GroundSet(3)));
  SUBCASE("the origin is always inside; the ones vector only under independence") {
    CHECK(contains(root3, Vector::Zero(3)));
    CHECK_FALSE(contains(root3, Vector::Ones(3)));
    const DepSetPolytope cube = dep_set_polytope(independent_ecf(GroundSet(3)));
    CHECK(contains(cube, Vector::Ones(3)));
  }
  SUBCASE("the ball's tangent points lie inside and on the planes") {
    for (SubsetMask subset = 1; subset <= 7u; ++subset) {
      Vector point = Vector::Zero(3);
      const Scalar scale = 1.0 / std::sqrt(static_cast<Scalar>(subset_size(subset)));
      for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
        point[lowest_site(rest)] = scale;
      }
      CHECK(contains(root3, point, 1e-12));
    }
  }
  SUBCASE("every plane is touched (attains its bound)") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const int m = 2 + static_cast<int>(seed % 3);
      const DepSetPolytope poly =
          dep_set_polytope(random_valid_ecf(m, 2 + static_cast<int>(seed % 6), seed));
      for (SubsetMask subset = 1; subset <= full_mask(m); ++subset) {
        const PlaneTouch touch = touches_plane(poly, subset);
        CHECK(touch.attains);
      }
    }
  }
}

TEST_CASE("inclusion_check") {
  SUBCASE("positive sphere samples sit inside the sqrt polytope") {
    const DepSetPolytope poly = dep_set_polytope(sqrt_ecf(GroundSet(3)));
    const CounterRng rng(2718, 0);
    std::vector<Vector> points;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      points.push_back(oracles::positive_sphere_point(3, rng, i));
    }
    const InclusionReport report = inclusion_check(points, poly);
    CHECK(report.pass);
  }
  SUBCASE("cross-polytope corners sit inside every TM polytope, which sits in the cube") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const int m = 2 + static_cast<int>(seed % 4);
      const DepSetPolytope poly =
          dep_set_polytope(random_valid_ecf(m, 1 + static_cast<int>(seed % 7), seed));
      std::vector<Vector> corners = {Vector::Zero(m)};
      for (int i = 0; i < m; ++i) {
        Vector e = Vector::Zero(m);
        e[i] = 1.0;
        corners.push_back(e);
      }
      CHECK(inclusion_check(corners, poly).pass);
      for (const Vector& vertex : poly.vertices) {
        CHECK(vertex.minCoeff() >= -1e-9);
        CHECK(vertex.maxCoeff() <= 1.0 + 1e-9);
      }
    }
  }
  SUBCASE("a point outside is flagged with its violation") {
    const DepSetPolytope poly = dep_set_polytope(identical_ecf(GroundSet(2)));
    const InclusionReport report = inclusion_check({make_vector({0.9, 0.9})}, poly);
    CHECK_FALSE(report.pass);
    CHECK(report.max_violation == doctest::Approx(0.8));  // 1.8 - 1
  }
}

TEST_CASE("Husler-Reiss boundary points lie inside the TM polytope with the same ECF") {
  // Boundary points of the H-R dependency set are gradients of its support
  // function; central differences with h = 1e-5 put them on the boundary up
  // to ~1e-10, so membership is checked at 1e-8.
  for (Scalar gamma : {0.5, 2.0, 8.0}) {
    EcfTable table = independent_ecf(GroundSet(2));
    table.theta.set(3, br_bivariate_theta(gamma));
    const DepSetPolytope poly = dep_set_polytope(table);

    const auto ell = [&](Scalar u1, Scalar u2) {
      // Stable tail dependence of the H-R pair: ell(u) = -log P(X <= 1/u).
      return hr_bivariate_neg_log_cdf(gamma, 1.0 / u1, 1.0 / u2);
    };
    const Scalar h = 1e-5;
    std::vector<Vector> boundary;
    for (int k = 0; k <= 20; ++k) {
      const Scalar angle = 0.5 * std::numbers::pi * k / 20.0;
      const Scalar u1 = std::max(std::cos(angle), 1e-3);
      const Scalar u2 = std::max(std::sin(angle), 1e-3);
      boundary.push_back(make_vector({(ell(u1 + h, u2) - ell(u1 - h, u2)) / (2 * h),
                                      (ell(u1, u2 + h) - ell(u1, u2 - h)) / (2 * h)}));
    }
    const InclusionReport report = inclusion_check(boundary, poly, 1e-8);
    CHECK(report.pass);
  }
}

TEST_CASE("max-linear dependency sets are dominated by the TM polytope") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int m = 2 + static_cast<int>(seed % 3);
    const DiscreteSpectralMeasure sm = random_spectral_measure(m, 3 + static_cast<int>(seed % 6), seed);
    const TmProcess process = tm_from_ecf(ecf_from_spectral_measure(sm));
    const CounterRng rng(seed, 23);
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      Vector x(m);
      for (int i = 0; i < m; ++i) {
        x[i] = 0.05 + rng.uniform(trial * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(i));
      }
      // ell of the max-linear vector vs the TM process with the same ECF.
      Scalar ell_sm = 0.0;
      for (int j = 0; j < sm.num_atoms(); ++j) {
        Scalar vmax = 0.0;
        for (int i = 0; i < m; ++i) vmax = std::max(vmax, sm.atoms()(i, j) * x[i]);
        ell_sm += vmax;
      }
      CHECK(ell_sm <= stable_tail_dependence(process, x) + 1e-12);
    }
  }
}

TEST_CASE("fdd_lower_bound") {
  SUBCASE("worked bivariate values, sharp vs trivial") {
    EcfTable table = independent_ecf(GroundSet(2));
    table.theta.set(3, 1.5);
    CHECK(fdd_lower_bound(table, make_vector({1.0, 1.0})) ==
          doctest::Approx(0.22313016014842982).epsilon(1e-12));
    const Scalar sharp = fdd_lower_bound(table, make_vector({1.0, 2.0}));
    CHECK(sharp == doctest::Approx(0.2865047968601901).epsilon(1e-12));
    const Scalar trivial = std::exp(-1.5);  // exp(-(eta+1)/min(x))
    CHECK(sharp > trivial);
  }
  SUBCASE("equality for the TM process itself") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const EcfTable table = random_valid_ecf(3, 5, seed);
      const TmProcess process = tm_from_ecf(table);
      const CounterRng rng(seed, 31);
      for (std::uint64_t trial = 0; trial < 10; ++trial) {
        Vector x(3);
        for (int i = 0; i < 3; ++i) x[i] = 0.2 + 2.0 * rng.uniform(3 * trial + static_cast<std::uint64_t>(i));
        CHECK(std::abs(fdd_lower_bound_log(table, x) + neg_log_cdf(process, x)) <= 1e-12);
      }
    }
  }
  SUBCASE("lower-bounds the exact max-linear c.d.f.") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const int m = 2 + static_cast<int>(seed % 3);
      const DiscreteSpectralMeasure sm = random_spectral_measure(m, 2 + static_cast<int>(seed % 8), seed);
      const EcfTable table = ecf_from_spectral_measure(sm);
      const TmProcess process = tm_from_ecf(table);
      const CounterRng rng(seed, 37);
      for (std::uint64_t trial = 0; trial < 20; ++trial) {
        Vector x(m);
        for (int i = 0; i < m; ++i) {
          x[i] = 0.1 + 3.0 * rng.uniform(trial * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(i));
        }
        const Scalar exact_log = -maxlinear_neg_log_cdf(sm, x);
        CHECK(exact_log >= fdd_lower_bound_log(process, x) - 1e-12);
      }
    }
  }
}

TEST_CASE("trivariate_bound_from_bivariate") {
  SUBCASE("full dependence") {
    const Scalar bound = trivariate_bound_from_bivariate(0.0, 0.0, 0.0, make_vector({1.0, 2.0, 0.5}));
    CHECK(bound == doctest::Approx(std::exp(-1.0 / 0.5)).epsilon(1e-14));
  }
  SUBCASE("independence telescopes") {
    const Vector x = make_vector({1.0, 2.0, 4.0});
    const Scalar bound = trivariate_bound_from_bivariate(1.0, 1.0, 1.0, x);
    CHECK(bound == doctest::Approx(std::exp(-(1.0 + 0.5 + 0.25))).epsilon(1e-14));
  }
  SUBCASE("infeasible triples are rejected") {
    CHECK_THROWS_AS(trivariate_bound_from_bivariate(1.0, 0.0, 0.0, make_vector({1.0, 1.0, 1.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(trivariate_bound_from_bivariate(1.5, 1.0, 1.0, make_vector({1.0, 1.0, 1.0})),
                    std::invalid_argument);
  }
  SUBCASE("the full-ECF bound is at least as sharp") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const EcfTable table = random_valid_ecf(3, 2 + static_cast<int>(seed % 8), seed);
      const TmProcess process = tm_from_ecf(table);
      const Scalar eta_rs = table.theta(0b011) - 1.0;
      const Scalar eta_st = table.theta(0b110) - 1.0;
      const Scalar eta_rt = table.theta(0b101) - 1.0;
      const CounterRng rng(seed, 41);
      for (std::uint64_t trial = 0; trial < 20; ++trial) {
        Vector x(3);
        for (int i = 0; i < 3; ++i) x[i] = 0.2 + 3.0 * rng.uniform(3 * trial + static_cast<std::uint64_t>(i));
        const Scalar sharp_log = fdd_lower_bound_log(process, x);
        const Scalar crude_log = trivariate_bound_from_bivariate_log(eta_rs, eta_st, eta_rt, x);
        CHECK(sharp_log >= crude_log - 1e-12);
      }
    }
  }
}
