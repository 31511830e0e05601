// Copyright 2026 The qinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "qinfo/json_io.hpp"
#include "qinfo/random.hpp"

using Catch::Matchers::WithinAbs;
using namespace qinfo;
using json_io::json;

TEST_CASE("Numbers are rounded to twelve significant digits", "[json]") {
  CHECK(json_io::sig12(0.1 + 0.2) == 0.3);
  CHECK(json_io::sig12(1.0 / 3.0) == 0.333333333333);
  CHECK(json_io::sig12(-0.0) == 0.0);
  CHECK_FALSE(std::signbit(json_io::sig12(-1e-300 * 1e-300)));
  CHECK(json_io::number(std::numeric_limits<double>::infinity()).is_null());
  CHECK(json_io::number(std::nan("")).is_null());
}

TEST_CASE("Dump prints shortest doubles", "[json]") {
  CHECK(json_io::dump(json{{"a", 1.0}}) == R"({"a":1.0})");
  CHECK(json_io::dump(json{{"a", json_io::number(0.1 + 0.2)}}) == R"({"a":0.3})");
  CHECK(json_io::dump(json{{"x", 1e-20}}) == R"({"x":1e-20})");
  CHECK(json_io::dump(json{{"n", 3}, {"s", "hi"}, {"b", true}, {"z", nullptr}}) ==
        R"({"b":true,"n":3,"s":"hi","z":null})");
  CHECK(json_io::dump(json::array({1.5, -2.0})) == "[1.5,-2.0]");
  CHECK(json_io::dump(json{{"a", 1}}, 2) == "{\n  \"a\": 1\n}");
  CHECK(json_io::dump(json::object()) == "{}");
  CHECK(json_io::dump(json::array()) == "[]");
  CHECK(json_io::dump(json("q\"\n")) == R"("q\"\n")");
  const json back = json::parse(json_io::dump(json{{"v", json::array({0.1, 2.5e10, -7.0})}}, 2));
  CHECK(back["v"][0].get<double>() == 0.1);
  CHECK(back["v"][1].get<double>() == 2.5e10);
}

TEST_CASE("Complex and matrix parsing", "[json]") {
  CHECK(json_io::complex_from(json(0.5)) == cplx(0.5, 0.0));
  CHECK(json_io::complex_from(json::array({0.5, -1.0})) == cplx(0.5, -1.0));
  CHECK_THROWS_AS(json_io::complex_from(json::array({1.0})), validation_error);
  CHECK_THROWS_AS(json_io::complex_from(json("x")), validation_error);
  CHECK_THROWS_AS(json_io::matrix_from(json::parse("[[1,0],[0]]")), validation_error);
  CHECK_THROWS_AS(json_io::vector_from(json::array()), validation_error);

  CounterRng rng(4, 0);
  const Matrix m = random::ginibre(rng, 3, 2);
  const Matrix back = json_io::matrix_from(json_io::to_json(m));
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("State and density round trips", "[json]") {
  CounterRng rng(8, 0);
  const StateVector psi = random::state_vector(rng, 6, {2, 3});
  const StateVector psi2 = json_io::state_from(json::parse(json_io::dump(json_io::to_json(psi))));
  CHECK(psi2.dims() == psi.dims());
  CHECK((psi2.amps() - psi.amps()).norm() < 1e-11);

  const DensityOperator rho = random::density(rng, 4, 2, {2, 2});
  const DensityOperator rho2 = json_io::density_from(json::parse(json_io::dump(json_io::to_json(rho))));
  CHECK(rho2.dims() == rho.dims());
  CHECK((rho2.matrix() - rho.matrix()).norm() < 1e-10);

  const DensityOperator pure = json_io::density_from(json::parse(R"({"amps": [[0, 1], 0]})"));
  CHECK_THAT(pure.matrix()(0, 0).real(), WithinAbs(1.0, 1e-12));
  const DensityOperator plain = json_io::density_from(json::parse("[[0.5, 0], [0, 0.5]]"));
  CHECK_THAT(plain.purity(), WithinAbs(0.5, 1e-12));
  CHECK_THROWS_AS(json_io::density_from(json::parse("[[1, 0], [0, 1]]")), validation_error);
  CHECK_THROWS_AS(json_io::state_from(json::parse("[0, 0]")), validation_error);
}

TEST_CASE("Ensemble, CHSH and code files", "[json]") {
  const Ensemble e = json_io::ensemble_from(json::parse(R"({"probs": [0.25, 0.75], "states": [[1, 0], {"matrix": [[0.5, 0], [0, 0.5]]}]})"));
  REQUIRE(e.states().size() == 2);
  CHECK_THAT(e.probs()[1], WithinAbs(0.75, 1e-15));
  CHECK_THAT(e.states()[1].purity(), WithinAbs(0.5, 1e-12));
  const Ensemble e2 = json_io::ensemble_from(json_io::to_json(e));
  CHECK((e2.states()[0].matrix() - e.states()[0].matrix()).norm() < 1e-12);
  CHECK_THROWS_AS(json_io::ensemble_from(json::parse(R"({"probs": [1]})")), validation_error);
  CHECK_THROWS_AS(json_io::ensemble_from(json::parse(R"({"probs": [0.5, 0.6], "states": [[1, 0], [0, 1]]})")),
                  validation_error);

  const ChshSetting s = E91Axes{}.chsh();
  const ChshSetting s2 = json_io::chsh_from(json_io::to_json(s));
  for (int k = 0; k < 2; ++k) {
    CHECK((s2.alice[k] - s.alice[k]).norm() < 1e-11);
    CHECK((s2.bob[k] - s.bob[k]).norm() < 1e-11);
  }
  CHECK_THROWS_AS(json_io::chsh_from(json::parse(R"({"alice": [[1,0,0]], "bob": [[1,0,0],[0,0,1]]})")), validation_error);
  CHECK_THROWS_AS(json_io::chsh_from(json::parse(R"({"alice": [[2,0,0],[1,0,0]], "bob": [[1,0,0],[0,0,1]]})")),
                  validation_error);

  const auto [code, errors] = json_io::code_from(json::parse(
      R"({"codewords": [[1,0,0,0,0,0,0,0], [0,0,0,0,0,0,0,1]], "errors": ["III", "XII", "IXI", "IIX"]})"));
  CHECK(code.codewords().size() == 2);
  CHECK(errors.size() == 4);
  CHECK(qecc_check(code, errors).correctable);
  CHECK_THROWS_AS(json_io::code_from(json::parse(R"({"codewords": []})")), validation_error);

  const KrausChannel ch = json_io::channel_from(json::parse("[[[1, 0], [0, 1]]]"));
  CHECK(ch.input_dim() == 2);
  CHECK_THROWS_AS(json_io::povm_from(json::parse("[[[1, 0], [0, 0]]]")), validation_error);
}
