#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdisc/json_io.hpp"
#include "qdisc/sampling.hpp"

#include <json.hpp>

using namespace qdisc;
using nlohmann::json;

TEST_CASE("matrix round trip") {
  Sampler s(301);
  for (int dim : {2, 3, 4}) {
    const Matrix m = s.ginibre(dim);
    const Matrix back = matrixFromJson(matrixToJson(m));
    CHECK((back - m).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("ensemble round trip") {
  Sampler s(307);
  const WeightedEnsemble e = s.ensemble(3, 2);
  const WeightedEnsemble back = ensembleFromJson(ensembleToJson(e));
  REQUIRE(back.size() == e.size());
  for (int j = 0; j < e.size(); ++j) {
    CHECK(back.states[j].p == doctest::Approx(e.states[j].p));
    CHECK((back.states[j].rho - e.states[j].rho).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("bloch form states") {
  const json doc = {
      {"dim", 2},
      {"states",
       {{{"p", 0.5}, {"bloch", {0.0, 0.0, 1.0}}}, {{"p", 0.5}, {"bloch", {0.0, 0.0, -1.0}}}}}};
  const WeightedEnsemble e = ensembleFromJson(doc);
  CHECK((e.states[0].rho - fromBloch({0.5, {0.0, 0.0, 0.5}})).norm() < 1e-15);
  CHECK((e.states[1].rho - fromBloch({0.5, {0.0, 0.0, -0.5}})).norm() < 1e-15);
}

TEST_CASE("parse rejections") {
  CHECK_THROWS_AS((void)ensembleFromJson(json{{"dim", 2}}), ParseError);
  CHECK_THROWS_AS((void)ensembleFromJson(json{{"dim", 2}, {"states", json::array()}}), ParseError);
  // Bloch vector outside the sphere.
  CHECK_THROWS_AS((void)ensembleFromJson(json{
                      {"dim", 2}, {"states", {{{"p", 1.0}, {"bloch", {1.2, 0.0, 0.0}}}}}}),
                  ParseError);
  // Bloch form with the wrong dimension.
  CHECK_THROWS_AS((void)ensembleFromJson(json{
                      {"dim", 3}, {"states", {{{"p", 1.0}, {"bloch", {1.0, 0.0, 0.0}}}}}}),
                  ParseError);
  // Matrix size mismatch.
  const json tiny = {{"dim", 3}, {"states", {{{"p", 1.0}, {"matrix", {{{1.0, 0.0}}}}}}}};
  CHECK_THROWS_AS((void)ensembleFromJson(tiny), ParseError);
  // Non-square rows.
  json rows = json::array();
  rows.push_back({{1.0, 0.0}, {0.0, 0.0}});
  rows.push_back({{0.0, 0.0}});
  CHECK_THROWS_AS((void)matrixFromJson(rows), ParseError);
}

TEST_CASE("povm round trip") {
  Sampler s(311);
  const Povm p = s.povm(4, 3);
  const Povm back = povmFromJson(povmToJson(p));
  REQUIRE(back.size() == p.size());
  for (int j = 0; j < p.size(); ++j) {
    CHECK((back.elements[j] - p.elements[j]).norm() == doctest::Approx(0.0));
  }
  CHECK(validate(back).pass);
}

TEST_CASE("nested povm round trip") {
  const NestedPovm tree = decompose(trinePovm());
  const NestedPovm back = nestedPovmFromJson(nestedPovmToJson(tree));
  CHECK(back.depth == tree.depth);
  CHECK(back.dim == tree.dim);
  REQUIRE(back.nodes.size() == tree.nodes.size());
  for (const auto& [path, pair] : tree.nodes) {
    CHECK((back.node(path, 0) - pair.first).norm() == doctest::Approx(0.0));
    CHECK((back.node(path, 1) - pair.second).norm() == doctest::Approx(0.0));
  }
  // The deserialized tree still recomposes to the original POVM.
  const Povm flat = recompose(back);
  for (int j = 0; j < 3; ++j) {
    CHECK((flat.elements[j] - trinePovm().elements[j]).norm() < 1e-9);
  }
}

TEST_CASE("nested povm parse rejections") {
  json doc = nestedPovmToJson(decompose(trinePovm()));
  json broken = doc;
  broken.erase("depth");
  CHECK_THROWS_AS((void)nestedPovmFromJson(broken), ParseError);

  broken = doc;
  broken["nodes"][0]["path"] = "2";
  CHECK_THROWS_AS((void)nestedPovmFromJson(broken), ParseError);

  broken = doc;
  broken["nodes"][0]["b0"].erase(0);  // no longer a square count of entries
  CHECK_THROWS_AS((void)nestedPovmFromJson(broken), ParseError);
}

TEST_CASE("file helpers") {
  CHECK_THROWS_AS((void)readJsonFile("/nonexistent/qdisc-test.json"), IoError);

  const std::string path = "qdisc_json_io_tmp.json";
  const json doc = ensembleToJson(trineEnsemble());
  writeJsonFile(path, doc);
  const WeightedEnsemble back = readEnsemble(path);
  CHECK(back.size() == 3);
  std::remove(path.c_str());
}
