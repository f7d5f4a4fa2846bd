#include <doctest.h>

#include "fixtures.hpp"
#include "tdlab/split.hpp"

using namespace tdlab;
using tdlab::testing::r;

namespace {

Subspace line(std::initializer_list<Rational> v) {
  Matrix m(v.size(), 1);
  std::size_t i = 0;
  for (const auto& x : v) m(i++, 0) = x;
  return Subspace::span(m);
}

}  // namespace

TEST_CASE("W1 split decompositions") {
  const auto sys = tdlab::testing::w1();
  CHECK(split_decomposition(sys, SplitFlavor::first) == std::vector{line({1, 0}), line({0, 1})});
  CHECK(split_decomposition(sys, SplitFlavor::second) == std::vector{line({1, 0}), line({4, 1})});
}

TEST_CASE("W1 K and B") {
  const auto sys = tdlab::testing::w1();
  CHECK(build_K(sys) == Matrix{{2, 0}, {0, r("1/2")}});
  CHECK(build_B(sys) == Matrix{{2, -6}, {0, r("1/2")}});
  CHECK(build_B(sys) == build_K(second_inversion(sys)));
}

TEST_CASE("W1 K spaces and cells") {
  const auto sys = tdlab::testing::w1();
  const auto app = build_apparatus(sys);
  REQUIRE(app.k_spaces.size() == 1);
  CHECK(app.k_spaces[0] == line({1, 0}));
  CHECK(app.k_spaces[0] == app.u[0]);
  CHECK(app.cell(0, 0).space == line({1, 0}));
  CHECK(app.cell(0, 1).space == line({0, 1}));
  CHECK(app.cell(0, 1).image == Matrix{{0}, {1}});
  CHECK(verify_minpoly_on_MKi(sys, app, 0).pass);
  CHECK(mk_space(sys, app, 0) == Subspace::full(2));
}

TEST_CASE("split structure on every fixture") {
  for (const char* name : {"w1", "d2", "d3", "t121"}) {
    CAPTURE(name);
    const auto sys = tdlab::testing::load(name);
    const auto app = build_apparatus(sys);
    std::size_t total = 0;
    for (const auto& u : app.u) total += u.dim();
    CHECK(total == sys.dim());
    for (int i = 0; i <= sys.d(); ++i) {
      CHECK(app.u[i].dim() == sys.eig.eigenspaces[i].dim());
      CHECK(app.u[i].dim() == sys.eig_star.eigenspaces[i].dim());
      CHECK(app.udd[i].dim() == app.u[i].dim());
    }
    for (std::size_t i = 0; i < app.k_spaces.size(); ++i) {
      CHECK(app.u[i].contains(app.k_spaces[i]));
      CHECK(app.udd[i].contains(app.k_spaces[i]));
      CHECK(app.cell(static_cast<int>(i), static_cast<int>(i)).space == app.k_spaces[i]);
    }
    std::size_t cells = 0;
    for (const auto& [key, cell] : app.cells) cells += cell.space.dim();
    CHECK(cells == sys.dim());
    CHECK(verify_split_structure(sys, app).all_passed());
  }
}

TEST_CASE("T121 has a nonzero K_1") {
  const auto sys = tdlab::testing::load("t121");
  const auto app = build_apparatus(sys);
  REQUIRE(app.k_spaces.size() == 2);
  CHECK(app.k_spaces[0] == line({1, 0, 0, 0}));
  CHECK(app.k_spaces[1] == line({0, 0, 1, 0}));
  CHECK(app.k == Matrix{{4, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, r("1/4")}});
  CHECK(verify_minpoly_on_MKi(sys, app, 1).pass);
}
