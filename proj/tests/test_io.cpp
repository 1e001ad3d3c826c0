#include <doctest.h>

#include <sstream>

#include "ecf/io.hpp"
#include "ecf/models.hpp"
#include "ecf/rng.hpp"
#include "ecf/tm_process.hpp"

using namespace ecf;

TEST_CASE("subset keys are sorted label lists with [] for the empty set") {
  const GroundSet ground({"b", "a", "c"});
  CHECK(subset_key(ground, 0) == "[]");
  CHECK(subset_key(ground, 0b011) == "[\"a\",\"b\"]");
  CHECK(subset_from_key(ground, "[\"c\",\"b\"]") == 0b101);
  CHECK(subset_from_key(ground, "[]") == 0);
  CHECK_THROWS_AS(subset_from_key(ground, "[\"z\"]"), std::out_of_range);
  CHECK_THROWS_AS(subset_from_key(ground, "[\"a\",\"a\"]"), std::invalid_argument);
  CHECK_THROWS_AS(subset_from_key(ground, "not json"), std::invalid_argument);
}

TEST_CASE("set functions round-trip bit-exactly through JSON") {
  SetFunction f(3);
  f.set(0, 0.0);
  f.set(1, 0.1);                       // not representable exactly in binary
  f.set(2, 1e-300);                    // tiny
  f.set(3, 1.0 / 3.0);
  f.set(4, 12345678901234.5678);
  f.set(5, -2.875);
  f.set(6, 3.0);
  f.set(7, 1.7976931348623157e308);    // largest double
  const Json j = set_function_to_json(f);
  const SetFunction back = set_function_from_json(Json::parse(j.dump()));
  CHECK((back.values() == f.values()).all());

  SUBCASE("missing subsets are schema errors") {
    Json broken = j;
    broken["values"].erase("[\"s0\"]");
    CHECK_THROWS_AS(set_function_from_json(broken), std::invalid_argument);
  }
}

TEST_CASE("ECF and tau tables round-trip through JSON") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int m = 2 + static_cast<int>(seed % 5);
    const EcfTable table = random_valid_ecf(m, 3, seed);
    const EcfTable back = ecf_from_json(Json::parse(ecf_to_json(table).dump()));
    CHECK(back.ground.labels() == table.ground.labels());
    CHECK((back.theta.values() == table.theta.values()).all());

    const TauTable tau = compute_tau(table);
    const TauTable tau_back = tau_from_json(Json::parse(tau_to_json(tau).dump()));
    CHECK((tau_back.tau.values() == tau.tau.values()).all());
  }
  SUBCASE("the empty set is omitted and implied zero") {
    const Json j = ecf_to_json(independent_ecf(GroundSet(2)));
    CHECK_FALSE(j["theta"].contains("[]"));
    CHECK(ecf_from_json(j).theta(0) == 0.0);
  }
  SUBCASE("unknown labels and malformed keys are rejected") {
    Json j = ecf_to_json(independent_ecf(GroundSet(2)));
    j["theta"]["[\"nope\"]"] = 1.0;
    CHECK_THROWS(ecf_from_json(j));
  }
}

TEST_CASE("spectral measures round-trip through CSV") {
  const DiscreteSpectralMeasure sm = random_spectral_measure(4, 6, 17);
  const std::string csv = spectral_measure_to_csv(sm);
  CHECK(csv.substr(0, 5) == "site,");
  std::istringstream in(csv);
  const DiscreteSpectralMeasure back = spectral_measure_from_csv(in);
  CHECK(back.ground().labels() == sm.ground().labels());
  CHECK((back.atoms() - sm.atoms()).cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("ragged rows are rejected") {
    std::istringstream bad("site,a1,a2\np,0.5\n");
    CHECK_THROWS_AS(spectral_measure_from_csv(bad), std::invalid_argument);
  }
}

TEST_CASE("sample batches round-trip through CSV with %.17g precision") {
  const TmProcess process = tm_from_ecf(random_valid_ecf(3, 4, 5));
  const SampleBatch batch = simulate_tm(process, 50, 99, 1);
  std::istringstream in(sample_batch_to_csv(batch));
  const SampleBatch back = sample_batch_from_csv(in);
  CHECK(back.ground.labels() == batch.ground.labels());
  CHECK((back.values - batch.values).cwiseAbs().maxCoeff() == 0.0);

  const Json meta = sample_metadata(batch);
  CHECK(meta["n"] == 50);
  CHECK(meta["seed"] == 99);
  CHECK(meta["generator"] == "counter-v1");
}

TEST_CASE("site coordinates CSV") {
  Matrix coords(2, 2);
  coords << 0.0, 1.5, -2.25, 3.0;
  const GroundSet ground({"p", "q"}, coords);
  std::istringstream in(sites_to_csv(ground));
  const GroundSet back = sites_from_csv(in);
  CHECK(back.labels() == ground.labels());
  CHECK((back.coords() - coords).cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("label-only files carry no coordinates") {
    std::istringstream bare("label\np\nq\n");
    CHECK_FALSE(sites_from_csv(bare).has_coords());
  }
}

TEST_CASE("polytope JSON and vertex CSV") {
  const DepSetPolytope poly = dep_set_polytope(sqrt_ecf(GroundSet(2)));
  const Json j = polytope_to_json(poly);
  CHECK(j["halfspaces"].size() == 3);
  CHECK(j["vertices"].size() == 5);
  CHECK(j["halfspaces"][2]["A"].size() == 2);
  const std::string csv = vertices_to_csv(poly);
  CHECK(csv.rfind("s0,s1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 vertices
}

TEST_CASE("bernstein JSON and shorthand parsing") {
  const BernsteinFunction mixture =
      BernsteinFunction::exp_mixture(0.5, 0.25, {{1.0, 2.0}, {0.5, 4.0}});
  const BernsteinFunction back = bernstein_from_json(bernstein_to_json(mixture));
  CHECK(back.kind() == BernsteinFunction::Kind::kExpMixture);
  CHECK(back.atoms() == mixture.atoms());
  for (Scalar r : {0.0, 0.5, 2.0}) CHECK(back(r) == mixture(r));

  CHECK(parse_bernstein("log1p").kind() == BernsteinFunction::Kind::kLog1p);
  CHECK(parse_bernstein("pow:0.5").alpha() == 0.5);
  CHECK(parse_bernstein("negpow:-1").alpha() == -1.0);
  CHECK(parse_bernstein("affine:0.5,2").b() == 2.0);
  const BernsteinFunction parsed = parse_bernstein("mix:0.5,0.25,[1:2,0.5:4]");
  for (Scalar r : {0.0, 1.0, 3.0}) CHECK(parsed(r) == mixture(r));
  CHECK_THROWS_AS(parse_bernstein("what"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bernstein("pow:abc"), std::invalid_argument);
}
