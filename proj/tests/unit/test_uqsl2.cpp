#include <doctest.h>

#include "fixtures.hpp"
#include "tdlab/errors.hpp"
#include "tdlab/uqsl2.hpp"

using namespace tdlab;
using tdlab::testing::r;

TEST_CASE("q-integers") {
  CHECK(q_integer(2, 1) == 1);
  CHECK(q_integer(2, 2) == r("5/2"));
  CHECK(q_factorial(2, 0) == 1);
  CHECK(q_factorial(2, 2) == r("5/2"));
}

TEST_CASE("irreducible models") {
  const auto l0 = build_L_model(0, -1, 2);
  CHECK(l0.action.e == Matrix::zero(1, 1));
  CHECK(l0.action.k == Matrix{{-1}});

  const auto l1 = build_L_model(1, 1, 2);
  CHECK(l1.action.e == Matrix{{0, 1}, {0, 0}});
  CHECK(l1.action.f == Matrix{{0, 0}, {1, 0}});
  CHECK(l1.action.k == Matrix{{2, 0}, {0, r("1/2")}});

  const auto l2 = build_L_model(2, 1, 2);
  CHECK(l2.action.e(0, 1) == r("5/2"));

  for (int n = 0; n <= 4; ++n)
    for (int eps : {1, -1}) {
      const auto model = build_L_model(n, eps, r("3/2"));
      CHECK(verify_uq_relations(model.action).all_passed());
      const Matrix lam =
          casimir_action(model.action.e, model.action.f, model.action.k, model.action.k_inv, model.action.q);
      CHECK(lam == Matrix::scalar(n + 1, Rational(eps) * (pow(r("3/2"), n + 1) + pow(r("3/2"), -n - 1))));
    }
}

TEST_CASE("model guards") {
  CHECK_THROWS_AS(build_L_model(-1, 1, 2), ParameterError);
  CHECK_THROWS_AS(build_L_model(1, 0, 2), ParameterError);
  CHECK_THROWS_AS(build_L_model(1, 1, -1), ParameterError);
  CHECK_THROWS_AS(build_L_model(1, 1, 0), ParameterError);
}

TEST_CASE("the trivial action satisfies the relations") {
  const Matrix zero = Matrix::zero(2, 2);
  CHECK(verify_uq_relations(UqAction{zero, zero, Matrix::identity(2), Matrix::identity(2), 2}).all_passed());
}

TEST_CASE("a broken action fails the relations") {
  auto model = build_L_model(2, 1, 2).action;
  model.f(1, 0) += 1;
  const auto report = verify_uq_relations(model);
  CHECK_FALSE(report.find("uq.ef")->pass);
}

TEST_CASE("W1 module structures") {
  const auto sys = tdlab::testing::w1();
  const auto app = build_apparatus(sys);
  const auto ops = build_operators(sys, app);
  const auto first = first_structure(sys, app, ops);
  CHECK(first.e == r("2/3") * ops.psi);
  CHECK(verify_uq_relations(first).all_passed());
  CHECK(verify_uq_relations(second_structure(sys, app, ops)).all_passed());

  const std::vector<Rational> spectrum{2, r("1/2")};
  const auto weights = weight_decomposition(first, spectrum);
  CHECK(weights[0].space == Subspace::span(Matrix{{1}, {0}}));
  CHECK(weights[1].space == Subspace::span(Matrix{{0}, {1}}));
  CHECK(weights[0].highest == app.k_spaces[0]);
  CHECK(weights[1].highest.is_zero());

  const auto second = weight_decomposition(second_structure(sys, app, ops), spectrum);
  CHECK(second[1].space == Subspace::span(Matrix{{4}, {1}}));

  const auto dec = decompose_into_components(sys, app, first, SplitFlavor::first);
  REQUIRE(dec.components.size() == 1);
  const auto& c = dec.components[0];
  CHECK(c.label() == "L(1,1)");
  CHECK(c.multiplicity == 1);
  CHECK(c.bases[0] == Matrix{{1, 0}, {0, r("2/3")}});
  CHECK(c.casimir == r("17/4"));
}

TEST_CASE("T121 decomposes as L(2,1) + L(0,1) under both structures") {
  const auto sys = tdlab::testing::load("t121");
  const auto app = build_apparatus(sys);
  const auto ops = build_operators(sys, app);
  for (const auto flavor : {SplitFlavor::first, SplitFlavor::second}) {
    const auto action = flavor == SplitFlavor::first ? first_structure(sys, app, ops) : second_structure(sys, app, ops);
    const auto dec = decompose_into_components(sys, app, action, flavor);
    REQUIRE(dec.components.size() == 2);
    CHECK(dec.components[0].label() == "L(2,1)");
    CHECK(dec.components[1].label() == "L(0,1)");
    CHECK(dec.components[0].casimir == r("65/8"));
    CHECK(dec.components[1].casimir == r("5/2"));
  }
  CHECK(verify_module_structures(sys, app, ops).all_passed());
}

TEST_CASE("a wrong action is rejected by the decomposition") {
  const auto sys = tdlab::testing::w1();
  const auto app = build_apparatus(sys);
  const auto ops = build_operators(sys, app);
  auto action = first_structure(sys, app, ops);
  action.f = r("2") * action.f;
  CHECK_THROWS_AS(decompose_into_components(sys, app, action, SplitFlavor::first), ConsistencyError);
}
