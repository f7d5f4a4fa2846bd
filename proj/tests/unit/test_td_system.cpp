#include <doctest.h>

#include "fixtures.hpp"
#include "tdlab/errors.hpp"
#include "tdlab/linalg.hpp"
#include "tdlab/td_system.hpp"

using namespace tdlab;
using tdlab::testing::r;

TEST_CASE("q-Racah eigenvalues") {
  const auto w1 = qracah_eigenvalues(QRacahParams{1, 2, 3, 5});
  CHECK(w1.theta == std::vector<Rational>{r("37/6"), r("13/6")});
  CHECK(w1.theta_star == std::vector<Rational>{r("101/10"), r("29/10")});

  const auto d2 = qracah_eigenvalues(QRacahParams{2, 2, 3, 5});
  CHECK(d2.theta == std::vector<Rational>{r("145/12"), r("10/3"), r("25/12")});
}

TEST_CASE("degenerate parameters are rejected") {
  CHECK_THROWS_AS(QRacahParams({0, 2, 3, 5}).validate(), ParameterError);
  CHECK_THROWS_AS(QRacahParams({1, 0, 3, 5}).validate(), ParameterError);
  CHECK_THROWS_AS(QRacahParams({1, -1, 3, 5}).validate(), ParameterError);
  CHECK_THROWS_AS(QRacahParams({1, 2, 0, 5}).validate(), ParameterError);
  CHECK_THROWS_AS(QRacahParams({1, 2, 3, 0}).validate(), ParameterError);
  // a^2 = q^{2d-2} = 1 at d = 1
  CHECK_THROWS_AS(QRacahParams({1, 2, 1, 5}).validate(), ParameterError);
  // b^2 = q^2 at d = 2
  CHECK_THROWS_AS(QRacahParams({2, 2, 3, 2}).validate(), ParameterError);
  CHECK_NOTHROW(QRacahParams({2, 2, 3, 5}).validate());
}

TEST_CASE("eigendata for a diagonal matrix") {
  const std::vector<Rational> spectrum{2, 3};
  const EigenData e = build_eigendata(Matrix{{2, 0}, {0, 3}}, spectrum);
  CHECK(e.idempotents[0] == Matrix{{1, 0}, {0, 0}});
  CHECK(e.idempotents[1] == Matrix{{0, 0}, {0, 1}});
}

TEST_CASE("W1 eigendata") {
  const std::vector<Rational> theta{r("37/6"), r("13/6")};
  const Matrix a{{r("37/6"), 0}, {1, r("13/6")}};
  const EigenData e = build_eigendata(a, theta);
  CHECK(rank(e.idempotents[0]) == 1);
  CHECK(e.eigenspaces[0] == Subspace::span(Matrix{{4}, {1}}));
  CHECK(e.idempotents[0] * e.idempotents[1] == Matrix::zero(2, 2));
  CHECK(e.idempotents[0] + e.idempotents[1] == Matrix::identity(2));
  CHECK(theta[0] * e.idempotents[0] + theta[1] * e.idempotents[1] == a);
}

TEST_CASE("a Jordan block is not diagonalizable") {
  const std::vector<Rational> spectrum{0, 1};
  CHECK_THROWS_AS(build_eigendata(Matrix{{0, 1}, {0, 0}}, spectrum), ValidationError);
  const std::vector<Rational> repeated{1, 1};
  CHECK_THROWS_AS(build_eigendata(Matrix::identity(2), repeated), ParameterError);
}

TEST_CASE("W1 satisfies the axioms") {
  const auto sys = tdlab::testing::w1();
  CHECK(verify_td_axioms(sys.a, sys.a_star, sys.eig, sys.eig_star).all_passed());
  CHECK(word_algebra_dimension(sys.a, sys.a_star) == 4);
}

TEST_CASE("a commuting diagonal pair fails irreducibility") {
  const std::vector<Rational> theta{2, 3};
  const std::vector<Rational> theta_star{5, 7};
  const auto report = verify_td_axioms(Matrix{{2, 0}, {0, 3}}, Matrix{{5, 0}, {0, 7}}, theta, theta_star);
  CHECK_FALSE(report.all_passed());
  const auto* iv = report.find("axiom.iv");
  REQUIRE(iv != nullptr);
  CHECK_FALSE(iv->pass);
}

TEST_CASE("a spectrum mismatch fails axiom (i)") {
  const std::vector<Rational> theta{2, 4};
  const std::vector<Rational> theta_star{5, 7};
  const auto report = verify_td_axioms(Matrix{{2, 0}, {1, 3}}, Matrix{{5, 1}, {0, 7}}, theta, theta_star);
  const auto* i = report.find("axiom.i");
  REQUIRE(i != nullptr);
  CHECK_FALSE(i->pass);
}

TEST_CASE("standard orderings of W1") {
  const auto sys = tdlab::testing::w1();
  const auto ord = find_standard_orderings(sys.a, sys.a_star, sys.params);
  CHECK(ord.theta == std::vector<Rational>{r("37/6"), r("13/6")});
  CHECK(ord.theta_star == std::vector<Rational>{r("101/10"), r("29/10")});

  QRacahParams flipped = sys.params;
  flipped.a = r("1/3");
  const auto rev = find_standard_orderings(sys.a, sys.a_star, flipped);
  CHECK(rev.theta == std::vector<Rational>{r("13/6"), r("37/6")});
}

TEST_CASE("a diagonal pair has no standard ordering") {
  const QRacahParams params{1, 2, 3, 5};
  const Matrix a{{r("37/6"), 0}, {0, r("13/6")}};
  const Matrix a_star{{r("101/10"), 0}, {0, r("29/10")}};
  CHECK_THROWS_AS(find_standard_orderings(a, a_star, params), ValidationError);
}

TEST_CASE("second inversion reverses the A ordering and is an involution") {
  const auto sys = tdlab::testing::w1();
  const auto dd = second_inversion(sys);
  CHECK(dd.theta() == std::vector<Rational>{r("13/6"), r("37/6")});
  CHECK(dd.params.a == r("1/3"));
  const auto back = second_inversion(dd);
  CHECK(back.params == sys.params);
  CHECK(back.theta() == sys.theta());
  CHECK(back.eig.eigenspaces == sys.eig.eigenspaces);
}

TEST_CASE("the axiom checker is order sensitive") {
  const auto sys = tdlab::testing::load("d2");
  std::vector<Rational> swapped = sys.theta();
  std::swap(swapped[0], swapped[1]);
  const auto report = verify_td_axioms(sys.a, sys.a_star, swapped, sys.eig_star.eigenvalues);
  const auto* ii = report.find("axiom.ii");
  REQUIRE(ii != nullptr);
  CHECK_FALSE(ii->pass);
}

TEST_CASE("eigenvalue ratios agree for d = 3") {
  const auto sys = tdlab::testing::load("d3");
  CHECK(check_eigenvalue_ratios(sys.theta(), sys.eig_star.eigenvalues).pass);
  std::vector<Rational> bent = sys.eig_star.eigenvalues;
  bent[3] += 1;
  CHECK_FALSE(check_eigenvalue_ratios(sys.theta(), bent).pass);
}

TEST_CASE("tau is monic of degree j - i") {
  const auto sys = tdlab::testing::w1();
  CHECK(sys.tau(0, 0) == Matrix::identity(2));
  CHECK(sys.tau(0, 2) == Matrix::zero(2, 2));
}
