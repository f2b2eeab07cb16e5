#include "dermat/exactlin.hpp"
#include "dermat/sampling.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace dermat;

namespace {

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Random matrix with a planted dependency so that rank deficiency is common.
Matrix random_matrix(Sampler& s, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = s.rational();
  if (rows >= 3)
    for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) - 2 * m(1, c);
  return m;
}

}  // namespace

TEST_CASE("rational parsing", "[rational]") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-3/7") == make_rational(-3, 7));
  CHECK(parse_rational("+4/6") == make_rational(2, 3));
  CHECK(parse_rational("\xE2\x88\x92" "3/7") == make_rational(-3, 7));
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  for (const char* bad : {"", "-", "1/", "/2", "1/0", "1.5", "1/-2", "a", "1 ", "2//3"})
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("rref examples", "[rref]") {
  const auto id = rref(Matrix::identity(3));
  CHECK(id.reduced == Matrix::identity(3));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});
  CHECK(id.rank == 3);

  const auto zero = rref(Matrix(2, 2));
  CHECK(zero.reduced == Matrix(2, 2));
  CHECK(zero.pivots.empty());
  CHECK(zero.rank == 0);

  const auto dep = rref(Matrix{{1, 2}, {2, 4}});
  CHECK(dep.reduced == Matrix{{1, 2}, {0, 0}});
  CHECK(dep.pivots == std::vector<std::size_t>{0});
  CHECK(dep.rank == 1);
}

TEST_CASE("nullspace examples", "[nullspace]") {
  CHECK(nullspace(Matrix::identity(2)).dim() == 0);

  const auto s = nullspace(Matrix{{1, -1}});
  REQUIRE(s.dim() == 1);
  CHECK(s.basis()[0] == vec({1, 1}));

  const auto t = nullspace(Matrix{{1, 2}, {2, 4}});
  REQUIRE(t.dim() == 1);
  CHECK(t.basis()[0] == vec({-2, 1}));
  CHECK(kernel_basis(Matrix{{1, 2}, {2, 4}}) == std::vector<Vector>{vec({-2, 1})});
}

TEST_CASE("solve examples", "[solve]") {
  CHECK(solve(Matrix::identity(2), vec({3, 5})) == vec({3, 5}));
  CHECK(solve(Matrix{{1, 1}}, vec({2})) == vec({2, 0}));
  CHECK_FALSE(solve(Matrix{{1}, {2}}, vec({1, 3})).has_value());
  CHECK_THROWS_AS(solve(Matrix{{1, 1}}, vec({1, 2})), std::invalid_argument);
}

TEST_CASE("member and quotient_dim examples", "[subspace]") {
  const auto line = Subspace::span(2, {vec({1, 0})});
  CHECK(member(line, vec({0, 0})));
  CHECK_FALSE(member(line, vec({0, 1})));
  CHECK(member(Subspace::span(2, {vec({1, 1}), vec({1, -1})}), vec({3, 5})));
  CHECK_THROWS_AS(member(line, vec({1, 0, 0})), std::invalid_argument);

  const auto plane = Subspace::span(3, {vec({1, 0, 0}), vec({0, 1, 0})});
  const auto axis = Subspace::span(3, {vec({1, 0, 0})});
  CHECK(quotient_dim(plane, plane) == 0);
  CHECK(quotient_dim(Subspace(3), Subspace::span(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})})) == 3);
  CHECK(quotient_dim(axis, plane) == 1);
  CHECK_THROWS_AS(quotient_dim(plane, axis), std::invalid_argument);
}

TEST_CASE("subspace equality ignores the chosen basis", "[subspace]") {
  const auto a = Subspace::span(3, {vec({1, 1, 0}), vec({0, 1, 1})});
  const auto b = Subspace::span(3, {vec({1, 2, 1}), vec({1, 0, -1})});
  CHECK(a == b);
  CHECK_FALSE(a == Subspace::span(3, {vec({1, 1, 0})}));
  CHECK(nullspace(Matrix{{1, 2}, {2, 4}}) == Subspace::span(2, {vec({2, -1})}));
}

TEST_CASE("rref agrees with a textbook Gauss-Jordan oracle", "[rref][oracle]") {
  Sampler s(7);
  for (std::size_t trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + trial % 6, cols = 1 + (trial / 6) % 7;
    const Matrix m = random_matrix(s, rows, cols);
    const auto mine = rref(m);
    const auto ref = oracle::gauss_jordan(oracle::rows_of(m), cols);
    CHECK(mine.pivots == ref.pivots);
    CHECK(oracle::rows_of(mine.reduced) == ref.rows);
  }
}

TEST_CASE("linear algebra invariants on random matrices", "[property]") {
  Sampler s(11);
  for (std::size_t trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + trial % 5, cols = 1 + (trial / 5) % 6;
    const Matrix m = random_matrix(s, rows, cols);
    const auto r = rref(m);
    CHECK(rref(r.reduced).reduced == r.reduced);

    const auto ns = nullspace(m);
    CHECK(r.rank + ns.dim() == cols);
    for (const auto& v : ns.basis()) CHECK(is_zero(m.apply(v)));

    const Vector x = s.vector(cols);
    const Vector b = m.apply(x);
    const auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == b);
    CHECK(member(ns, x - *sol));
  }
}

TEST_CASE("echelon builder tracks independence incrementally", "[builder]") {
  EchelonBuilder b(3);
  CHECK(b.insert(vec({1, 2, 3})));
  CHECK(b.insert(vec({0, 1, 1})));
  CHECK_FALSE(b.insert(vec({2, 5, 7})));
  CHECK(b.rank() == 2);
  CHECK(b.in_span(vec({1, 3, 4})));
  CHECK_FALSE(b.in_span(vec({0, 0, 1})));
  CHECK(b.pivots() == std::vector<std::size_t>{0, 1});
  CHECK(kernel_basis(b) == std::vector<Vector>{vec({-1, -1, 1})});
}

TEST_CASE("matrix arithmetic", "[matrix]") {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{0, 1}, {1, 0}};
  CHECK(a * b == Matrix{{2, 1}, {4, 3}});
  CHECK(a + b - b == a);
  CHECK(Rational(2) * a == a + a);
  CHECK(a.apply(vec({1, -1})) == vec({-1, -1}));
  CHECK(Matrix::from_columns({vec({1, 3}), vec({2, 4})}, 2) == a);
  CHECK(Matrix::from_rows({vec({1, 2}), vec({3, 4})}, 2) == a);
  CHECK_THROWS_AS(a * Matrix(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(a.apply(vec({1})), std::invalid_argument);
}
