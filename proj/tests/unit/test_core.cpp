#include <doctest.h>

#include "ginv/core.hpp"

using namespace ginv;

namespace {
const Field Q = Field::rationals();

Matrix q(std::initializer_list<std::initializer_list<long>> rows) { return Matrix::from_ints(Q, rows); }
}  // namespace

TEST_CASE("drazin index") {
  CHECK(drazin_index(Matrix(3, 3, Q)) == 1);
  CHECK(drazin_index(Matrix::identity(4, Q)) == 0);
  CHECK(drazin_index(q({{1, 2}, {2, 4}})) == 1);
  CHECK(drazin_index(q({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})) == 3);
  CHECK_THROWS_AS(drazin_index(Matrix(2, 3, Q)), DimensionError);
}

TEST_CASE("{1}- and {1,2}-inverses") {
  const Matrix a = q({{1, 1}, {0, 0}});
  CHECK(is_one_inverse(a, one_inverse(a)));
  CHECK(is_reflexive_inverse(a, reflexive_ginv(a).value));
  CHECK(reflexive_ginv(Matrix(2, 2, Q)).value.is_zero());
  const Matrix inv = q({{2, 1}, {1, 1}});
  CHECK(reflexive_ginv(inv).value == *invert(inv));
  const Matrix w = q({{3, -1}, {2, 5}});
  const ReflexiveGinv other = perturbed_reflexive_ginv(a, reflexive_ginv(a), w);
  CHECK(is_reflexive_inverse(a, other.value));
  CHECK_FALSE(other.value == reflexive_ginv(a).value);
}

TEST_CASE("group inverse") {
  const Matrix idem = q({{1, 1}, {0, 0}});
  REQUIRE(group_inverse(idem).has_value());
  CHECK(group_inverse(idem)->inverse == idem);
  CHECK_FALSE(group_inverse(q({{0, 1}, {0, 0}})).has_value());
  const auto d = group_inverse(Matrix::diagonal(Q, {2, 0}));
  REQUIRE(d.has_value());
  CHECK(d->inverse == Matrix::from_rows(Q, {{Scalar::from_fraction(Q, 1, 2), Scalar::zero(Q)},
                                            {Scalar::zero(Q), Scalar::zero(Q)}}));
  CHECK(d->index == 1);
  const Matrix inv = q({{2, 1}, {1, 1}});
  CHECK(group_inverse(inv)->inverse == *invert(inv));
  CHECK(group_inverse(inv)->index == 0);
  CHECK(group_inverse(Matrix(2, 2, Q))->inverse.is_zero());
}

TEST_CASE("drazin inverse") {
  const GroupInverseCertificate nil = drazin_inverse(q({{0, 1}, {0, 0}}));
  CHECK(nil.inverse.is_zero());
  CHECK(nil.index == 2);
  const Matrix a = q({{1, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  const GroupInverseCertificate d = drazin_inverse(a);
  CHECK(d.inverse == Matrix::diagonal(Q, {1, 0, 0}));
  CHECK(d.index == 2);
  CHECK(satisfies_drazin_axioms(a, d.inverse, 2));
  CHECK_FALSE(satisfies_drazin_axioms(a, d.inverse, 1));
  CHECK(drazin_from_chain(d.factorization_chain, 3, Q) == d.inverse);
  const Matrix inv = q({{2, 1}, {1, 1}});
  CHECK(drazin_inverse(inv).inverse == *invert(inv));
  CHECK(drazin_inverse(inv).index == 0);
}

TEST_CASE("group inverse over a prime field") {
  const Field f = Field::prime(7);
  const Matrix a = Matrix::from_ints(f, {{1, 2, 3}, {2, 4, 6}, {0, 0, 0}});
  const auto g = group_inverse(a);
  REQUIRE(g.has_value());
  CHECK(satisfies_group_axioms(a, g->inverse));
}

TEST_CASE("group inverse from a {1,2}-inverse") {
  const Matrix a = q({{1, 1}, {0, 0}});
  const GroupInverseCertificate g = group_from_reflexive(a, {q({{1, 0}, {0, 0}})});
  CHECK(g.inverse == a);
  CHECK(g.oracle_agrees);
  CHECK(group_from_reflexive(a, {a}).inverse == a);

  const Matrix inv = q({{2, 1}, {1, 1}});
  CHECK(group_from_reflexive(inv, {*invert(inv)}).inverse == *invert(inv));

  CHECK_THROWS_AS(group_from_reflexive(a, {q({{1, 0}, {0, 1}})}), PreconditionError);

  // a = [[0,1],[0,0]] has no group inverse, so s is singular for any a+.
  const Matrix nil = q({{0, 1}, {0, 0}});
  try {
    group_from_reflexive(nil, reflexive_ginv(nil));
    FAIL("expected HypothesisNotMet");
  } catch (const HypothesisNotMet& e) {
    REQUIRE(e.witnesses().size() == 1);
    CHECK(e.witnesses()[0].first == "s");
  }
}

TEST_CASE("splitting by an idempotent") {
  const Matrix p = Matrix::diagonal(Q, {1, 0});
  const GroupInverseCertificate x = split_group_inverse(p, Matrix::identity(2, Q), q({{0, 1}, {0, 0}}));
  CHECK(x.inverse == q({{1, 1}, {0, 0}}));

  // p b (1 - p) = 0 leaves x = p a p.
  const Matrix a = q({{3, 1}, {2, 5}});
  const GroupInverseCertificate plain = split_group_inverse(p, a, q({{4, 0}, {7, 1}}));
  REQUIRE(group_inverse(p * a * p).has_value());
  CHECK(plain.inverse == group_inverse(p * a * p)->inverse);

  CHECK_THROWS_AS(split_group_inverse(p, q({{0, 0}, {0, 1}}), q({{0, 1}, {0, 0}})), HypothesisNotMet);
  CHECK_THROWS_AS(split_group_inverse(Matrix::identity(2, Q), a, a), PreconditionError);
  CHECK_THROWS_AS(split_group_inverse(Matrix(2, 2, Q), a, a), PreconditionError);
  CHECK_THROWS_AS(split_group_inverse(q({{1, 1}, {1, 1}}), a, a), PreconditionError);

  const GroupInverseCertificate back = split_group_inverse_converse(q({{1, 1}, {0, 0}}), p);
  CHECK(back.inverse == p);
  CHECK_THROWS_AS(split_group_inverse_converse(q({{0, 1}, {0, 0}}), p), HypothesisNotMet);
  CHECK_THROWS_AS(split_group_inverse_converse(q({{1, 0}, {1, 0}}), p), PreconditionError);
}

TEST_CASE("transpose is an involution") {
  const Field f = Field::prime(11);
  const Matrix a = Matrix::from_ints(f, {{1, 2, 3}, {4, 5, 6}, {7, 8, 10}});
  const Matrix b = Matrix::from_ints(f, {{0, 1, 9}, {3, 3, 2}, {5, 0, 1}});
  CHECK(a.transpose().transpose() == a);
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
  CHECK((a + b).transpose() == a.transpose() + b.transpose());
  CHECK(Matrix::identity(3, f).transpose().is_identity());
}
