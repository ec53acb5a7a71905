#include "doctest.h"
#include "generators.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "polyball/io.hpp"
#include "polyball/sampling.hpp"

using namespace polyball;
using json = nlohmann::json;

TEST_CASE("matrix and multiword text") {
  Mat m(2, 1);
  m << cplx(1, -2), cplx(0.5, 0);
  CHECK(io::matrix_to_json(m) == "[1.0,-2.0,0.5,0.0]");
  CHECK(io::matrix_from_json("[1,-2,0.5,0]", 2, 1) == m);
  CHECK_THROWS_AS(io::matrix_from_json("[1,2,3]", 2, 1), ConfigError);
  CHECK_THROWS_AS(io::matrix_from_json("[1,2,3,\"x\"]", 2, 1), ConfigError);
  CHECK_THROWS_AS(io::matrix_from_json("[1,2", 1, 1), ConfigError);

  const MultiWord w = oracle::to_word({{1, 2}, {}}, {2, 1});
  CHECK(io::multiword_to_json(w) == "[[1,2],[]]");
  CHECK(io::multiword_from_json("[[1,2],[]]", {2, 1}) == w);
  CHECK_THROWS_AS(io::multiword_from_json("[[1,3],[]]", {2, 1}), ConfigError);
  CHECK_THROWS_AS(io::multiword_from_json("[[1]]", {2, 1}), ConfigError);
}

TEST_CASE("point roundtrip") {
  gen::Rng rng(1);
  const auto x = gen::point(rng, {2, 1}, 2, 0.6);
  const auto y = io::point_from_json(io::to_json(x));
  CHECK(y.n() == x.n());
  for (std::size_t i = 0; i < x.k(); ++i)
    for (std::size_t j = 0; j < x.rows()[i].size(); ++j) CHECK(y.rows()[i][j] == x.rows()[i][j]);
  CHECK_THROWS_AS(io::point_from_json(R"({"n":[1],"h_dim":1})"), ConfigError);
  CHECK_THROWS_AS(io::point_from_json(R"({"n":[0],"h_dim":1,"X":[[]]})"), ConfigError);
  CHECK_THROWS_AS(io::point_from_json(R"({"n":[1],"h_dim":1,"X":[[[1,0],[0,0]]]})"), ConfigError);
}

TEST_CASE("kernel roundtrip") {
  Rng rng(2);
  const std::vector<int> n{2, 1};
  const auto k = kernel_from_generator(Side::right, n, 2, random_psd_left_generator(rng, n, 2, 4), 2);
  const auto back = io::kernel_from_json(io::to_json(k));
  CHECK(back.side() == Side::right);
  CHECK(back.max_len() == 2);
  CHECK(oracle::max_abs(back.gram() - k.gram()) == 0.0);
  CHECK_THROWS_AS(io::kernel_from_json(R"({"side":"up","n":[1],"e_dim":1,"max_len":1,"generator":[]})"), ConfigError);
  CHECK_THROWS_AS(io::kernel_from_json(R"({"side":"left","n":[1],"e_dim":1,"max_len":1,"generator":[]})"),
                  ConfigError);
  CHECK_THROWS_AS(io::kernel_from_json(R"({"side":"left","n":[1],"e_dim":1,"max_len":0,
    "generator":[{"alpha":[[]],"beta":[[]],"matrix":[1,0]}]})"),
                  ConfigError);
  CHECK_THROWS_AS(io::kernel_from_json(R"({"side":"left","n":[1],"e_dim":1,"max_len":2,
    "generator":[{"alpha":[[]],"beta":[[]],"matrix":[1,0]},{"alpha":[[]],"beta":[[]],"matrix":[1,0]}]})"),
                  ConfigError);
}

TEST_CASE("symbol roundtrip") {
  gen::Rng rng(3);
  const auto s = gen::symbol(rng, {2, 2}, 2, 10, {2, 2});
  const auto back = io::symbol_from_json(io::to_json(s));
  REQUIRE(back.coeffs().size() == s.coeffs().size());
  for (const auto& [key, m] : s.coeffs()) CHECK(back.at(key.first, key.second) == m);
  CHECK_THROWS_AS(io::symbol_from_json(R"({"n":[1],"e_dim":1,"coeffs":[{"alpha":[[1]],"beta":[[1]],"matrix":[1,0]}]})"),
                  ConfigError);
}

TEST_CASE("linear map data roundtrip") {
  const std::vector<int> n{1, 1};
  const MultiWord g = MultiWord::identity(n), a = oracle::to_word({{1}, {}}, n);
  const CbMapData mu(n, 1, Mat::Identity(1, 1),
                     {{{a, g}, Mat::Constant(1, 1, cplx(0.2, 0.1))}, {{g, a}, Mat::Constant(1, 1, cplx(0.2, -0.1))}},
                     true);
  const auto back = io::cbmap_from_json(io::to_json(mu));
  CHECK(back.herglotz_class());
  CHECK(back.value(a, g) == mu.value(a, g));
  CHECK(back.value(g, a) == mu.value(g, a));

  const auto pm = io::cbmap_from_json(R"({"family":"point_mass","zeta":[[1,0],[0,1]]})");
  CHECK(pm.is_family());
  CHECK(pm.value(a, g)(0, 0) == cplx(1.0));
  const MultiWord b = oracle::to_word({{}, {1}}, n);
  CHECK(pm.value(a, b)(0, 0) == cplx(0.0, 1.0));
  const auto tau = io::cbmap_from_json(R"({"family":"vacuum","n":[2],"e_dim":2})");
  CHECK(tau.unit() == Mat::Identity(2, 2));
  CHECK_THROWS_AS(io::to_json(pm), ConfigError);
  CHECK_THROWS_AS(io::cbmap_from_json(R"({"family":"cauchy"})"), ConfigError);
  CHECK_THROWS_AS(io::cbmap_from_json(R"({"family":"point_mass","zeta":[[1]]})"), ConfigError);
  CHECK_THROWS_AS(io::cbmap_from_json(R"({"n":[1],"e_dim":1})"), ConfigError);
}

TEST_CASE("operator roundtrip") {
  const auto t = make_truncation({2, 1}, {2, 1});
  gen::Rng rng(4);
  const auto op = symbol_operator(gen::symbol(rng, {2, 1}, 2, 6, {1, 1}), t, 0.7);
  const auto back = io::operator_from_json(io::to_json(op));
  CHECK(back.coeff_dim == 2);
  CHECK(back.truncation->degrees() == std::vector<int>{2, 1});
  CHECK(oracle::max_abs(back.dense() - op.dense()) == 0.0);
  CHECK_THROWS_AS(io::operator_from_json(R"({"n":[1],"degrees":[1],"coeff_dim":1,"entries":[[2,0,1,0]]})"),
                  ConfigError);
  CHECK_THROWS_AS(io::operator_from_json(R"({"n":[1],"degrees":[1],"coeff_dim":1,"entries":[[0.5,0,1,0]]})"),
                  ConfigError);
  CHECK_THROWS_AS(io::operator_from_json(R"({"n":[1],"degrees":[1],"coeff_dim":1,"entries":[[0,0,1]]})"),
                  ConfigError);
}

TEST_CASE("dilation and report output") {
  Rng rng(5);
  const std::vector<int> n{1, 1};
  const auto k = kernel_from_generator(Side::left, n, 1, random_psd_left_generator(rng, n, 1, 4), 2);
  const auto d = naimark_dilate(k);
  const json j = json::parse(io::to_json(d));
  CHECK(j.at("side") == "left");
  CHECK(j.at("space_dim").get<std::size_t>() == d.space_dim);
  CHECK(j.at("V").size() == 2);
  CHECK(io::matrix_from_json(j.at("embedding").dump(), static_cast<Eigen::Index>(d.space_dim), 1) == d.embedding);
  const json r = json::parse(io::to_json(dilation_verify(d, k)));
  CHECK(r.at("minimal").get<bool>());
  CHECK(r.at("reproduction_error").get<double>() < 1e-10);
}
