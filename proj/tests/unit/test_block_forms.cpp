#include <doctest.h>

#include "ginv/block_forms.hpp"
#include "ginv/fuzz.hpp"

using namespace ginv;

namespace {
const Field Q = Field::rationals();

Matrix q(std::initializer_list<std::initializer_list<long>> rows) { return Matrix::from_ints(Q, rows); }

Matrix random_matrix(SplitMix64& rng, Field f, std::size_t n) {
  Matrix m(n, n, f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar::from_int(f, static_cast<long>(rng.below(f.modulus())));
  return m;
}
}  // namespace

TEST_CASE("anti-diagonal blocks") {
  const Matrix one = Matrix::identity(1, Q);
  const BlockGroupInverse unit = anti_diagonal_group_inverse(one, one);
  CHECK(unit.certificate.inverse == q({{0, 1}, {1, 0}}));

  const Matrix p = Matrix::diagonal(Q, {1, 0});
  const BlockGroupInverse proj = anti_diagonal_group_inverse(p, p);
  CHECK(proj.blocks[1] == p);
  CHECK(proj.blocks[2] == p);
  CHECK(proj.blocks[0].is_zero());

  const Matrix b = q({{2, 1}, {1, 1}});
  const Matrix c = q({{1, 2}, {0, 1}});
  const BlockGroupInverse inv = anti_diagonal_group_inverse(b, c);
  CHECK(inv.blocks[1] == *invert(c));
  CHECK(inv.blocks[2] == *invert(b));

  CHECK_THROWS_AS(anti_diagonal_group_inverse(p, Matrix::diagonal(Q, {0, 1})), HypothesisNotMet);
  CHECK_THROWS_AS(anti_diagonal_group_inverse(q({{0, 1}, {0, 0}}), p), HypothesisNotMet);
  CHECK_THROWS_AS(anti_diagonal_group_inverse(p, one), DimensionError);
}

TEST_CASE("anti-triangular blocks") {
  const Matrix one = Matrix::identity(1, Q);
  const Matrix d = Matrix::from_rows(Q, {{Scalar::from_fraction(Q, 5, 3)}});
  const BlockGroupInverse scalar = anti_triangular_group_inverse({d, one, one});
  CHECK(scalar.certificate.inverse == Matrix::from_rows(Q, {{Scalar::zero(Q), Scalar::one(Q)},
                                                            {Scalar::one(Q), Scalar::from_fraction(Q, -5, 3)}}));

  const Matrix p = Matrix::diagonal(Q, {1, 0});
  const Matrix zero(2, 2, Q);
  CHECK(anti_triangular_group_inverse({zero, p, p}).blocks == anti_diagonal_group_inverse(p, p).blocks);

  // Neither b^pi d = 0 nor d c^pi = 0.
  CHECK_THROWS_AS(anti_triangular_group_inverse({Matrix::identity(2, Q), p, p}), HypothesisNotMet);
}

TEST_CASE("second branch top-right block needs the inner k^-1") {
  // With d c^pi = 0, the top-right block is
  //   (1 + k^-1 b^pi d k^-1 c^# k^-1 b^# k^-1 d) k^-1 c^# k^-1.
  // Dropping the k^-1 before the last d gives a different, wrong matrix.
  const Field f = Field::prime(7);
  SplitMix64 rng(7);
  int differing = 0;
  for (int trial = 0; trial < 300 && differing == 0; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const Matrix b = random_matrix(rng, f, n) * Matrix::diagonal(f, {1, 0, 0}).submatrix(0, 0, n, n) *
                     random_matrix(rng, f, n);
    const Matrix c = random_matrix(rng, f, n);
    const auto bs = group_inverse(b);
    const auto cs = group_inverse(c);
    if (!bs || !cs) continue;
    const Matrix one = b.one();
    const auto ki = invert(bs->inverse * b + cs->inverse * c - one);
    if (!ki) continue;
    const Matrix d = random_matrix(rng, f, n) * c * cs->inverse;
    const BlockGroupInverse r = anti_triangular_group_inverse({d, b, c});
    CHECK(r.certificate.oracle_agrees);

    const Matrix b_pi = one - b * bs->inverse;
    const Matrix printed =
        (one + *ki * b_pi * d * *ki * cs->inverse * *ki * bs->inverse * d) * *ki * cs->inverse * *ki;
    if (!(printed == r.blocks[1])) ++differing;
  }
  CHECK(differing > 0);
}

TEST_CASE("k-free forms") {
  const Matrix idem = q({{1, 1}, {0, 0}});
  const Matrix zero(2, 2, Q);
  const BlockGroupInverse z = simplified_anti_triangular({zero, idem, idem});
  CHECK(z.blocks[1] == idem);
  CHECK(z.blocks[2] == idem);

  const Matrix m = q({{2, -1}, {1, 3}});
  const Matrix d = idem * m * idem;
  const BlockGroupInverse s = simplified_anti_triangular({d, idem, idem});
  CHECK(s.blocks == anti_triangular_group_inverse({d, idem, idem}).blocks);

  const Matrix one = Matrix::identity(1, Q);
  const Matrix d1 = q({{4}});
  CHECK(simplified_anti_triangular({d1, one, one}).certificate.inverse == q({{0, 1}, {1, -4}}));

  // b and c with different kernels are not compatible.
  CHECK_THROWS_AS(simplified_anti_triangular({zero, idem, Matrix::diagonal(Q, {1, 0})}), HypothesisNotMet);
}

TEST_CASE("idempotent blocks with the transpose") {
  const Matrix one = Matrix::identity(1, Q);
  CHECK(star_idempotent_group_inverse(one, StarVariant::PPStar).certificate.inverse == q({{0, 1}, {1, -1}}));
  CHECK(star_idempotent_group_inverse(one, StarVariant::PStarP).certificate.inverse == q({{0, 1}, {1, -1}}));

  const Matrix p = Matrix::diagonal(Q, {1, 0});
  const BlockGroupInverse sym = star_idempotent_group_inverse(p, StarVariant::PPStar);
  CHECK(sym.blocks[0].is_zero());
  CHECK(sym.blocks[1] == p);
  CHECK(sym.blocks[2] == p);
  CHECK(sym.blocks[3] == -p);

  const Matrix oblique = q({{1, 1}, {0, 0}});
  const BlockGroupInverse pp = star_idempotent_group_inverse(oblique, StarVariant::PPStar);
  CHECK(pp.matrix.submatrix(0, 0, 2, 2) == q({{2, 0}, {0, 0}}));
  CHECK(pp.certificate.oracle_agrees);
  CHECK(star_idempotent_group_inverse(oblique, StarVariant::PStarP).certificate.oracle_agrees);

  CHECK_THROWS_AS(star_idempotent_group_inverse(q({{1, 1}, {1, 1}}), StarVariant::PPStar), PreconditionError);
  CHECK_THROWS_AS(star_idempotent_group_inverse(Matrix(2, 2, Q), StarVariant::PStarP), PreconditionError);
}
