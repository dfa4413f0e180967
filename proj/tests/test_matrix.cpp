#include <doctest.h>

#include <cmath>

#include "fracoint/errors.hpp"
#include "fracoint/matrix.hpp"
#include "fracoint/rng.hpp"

using namespace fracoint;

TEST_CASE("basic products and transpose") {
  Matrix a(2, 3);
  a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = 3;
  a(1, 0) = 4; a(1, 1) = 5; a(1, 2) = 6;
  const Matrix g = matmul_transA(a, a);  // 3x3
  const Matrix g2 = a.transposed() * a;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(g(i, j) == doctest::Approx(g2(i, j)));
  CHECK(g(0, 0) == doctest::Approx(17.0));
}

TEST_CASE("cholesky round trip and SPD rejection") {
  Matrix s(2, 2);
  s(0, 0) = 4; s(0, 1) = 2; s(1, 0) = 2; s(1, 1) = 3;
  const Matrix l = cholesky_lower(s);
  const Matrix back = l * l.transposed();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(back(i, j) == doctest::Approx(s(i, j)).epsilon(1e-12));

  Matrix bad(2, 2);
  bad(0, 0) = 1; bad(0, 1) = 2; bad(1, 0) = 2; bad(1, 1) = 1;  // indefinite
  CHECK_THROWS_AS(cholesky_lower(bad), numeric_error);
}

TEST_CASE("sign convention flips on the first largest component") {
  Matrix m(3, 2);
  m(0, 0) = -0.1; m(1, 0) = -0.9; m(2, 0) = 0.2;
  m(0, 1) = 0.5;  m(1, 1) = -0.5; m(2, 1) = 0.1;  // tie: first index wins
  fix_column_signs(m);
  CHECK(m(1, 0) == doctest::Approx(0.9));   // column negated
  CHECK(m(0, 0) == doctest::Approx(0.1));
  CHECK(m(0, 1) == doctest::Approx(0.5));   // unchanged, first max positive
  CHECK(m(1, 1) == doctest::Approx(-0.5));
}

TEST_CASE("complete_to_frame spans the complement") {
  Matrix t(3, 1);
  t(0, 0) = 1.0 / std::sqrt(2.0);
  t(1, 0) = 1.0 / std::sqrt(2.0);
  t(2, 0) = 0.0;
  const Matrix c = complete_to_frame(t);
  CHECK(c.rows() == 3);
  CHECK(c.cols() == 2);
  CHECK(orthonormality_defect(c) < 1e-12);
  const Matrix cross = matmul_transA(c, t);
  CHECK(cross.max_abs() < 1e-12);
}

TEST_CASE("apply_rowwise matches per-row products") {
  GaussianStream g(3);
  SeriesMatrix s(5, 3);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t t = 0; t < 5; ++t) s.at(t, c) = g.next();
  Matrix m(2, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = g.next();
  const SeriesMatrix out = apply_rowwise(s, m);
  REQUIRE(out.q() == 2);
  for (std::size_t t = 0; t < 5; ++t)
    for (std::size_t i = 0; i < 2; ++i) {
      double want = 0.0;
      for (std::size_t j = 0; j < 3; ++j) want += m(i, j) * s.at(t, j);
      CHECK(out.at(t, i) == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("series validation flags bad input") {
  SeriesMatrix s(3, 1);
  s.at(1, 0) = std::nan("");
  CHECK_THROWS_AS(s.validate("test"), data_error);
  SeriesMatrix tiny(1, 1);
  CHECK_THROWS_AS(tiny.validate("test"), data_error);
}
