#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ginv/errors.hpp"
#include "ginv/matrix.hpp"

namespace ginv {

/// A group or Drazin inverse together with the evidence for it.
struct GroupInverseCertificate {
  Matrix inverse;
  std::size_t index = 0;
  std::vector<RankFactorization> factorization_chain;
  /// Hypotheses checked and identities asserted while producing `inverse`.
  std::vector<Check> checks;
  /// The result was compared with the factorization oracle and agreed.
  bool oracle_agrees = true;
};

/// A reflexive ({1,2}-) generalized inverse. Not a Moore-Penrose inverse:
/// no involution is involved.
struct ReflexiveGinv {
  Matrix value;
};

// Axiom predicates; all exact.
bool is_one_inverse(const Matrix& a, const Matrix& x);        // a x a = a
bool is_reflexive_inverse(const Matrix& a, const Matrix& x);  // also x a x = x
bool satisfies_group_axioms(const Matrix& a, const Matrix& x);
bool satisfies_drazin_axioms(const Matrix& a, const Matrix& x, std::size_t index);

/// Smallest k >= 0 with rank(a^k) = rank(a^{k+1}), a^0 = 1. The zero n x n
/// matrix (n >= 1) has index 1, an invertible matrix index 0.
std::size_t drazin_index(const Matrix& a);

/// Some b with a b a = a, built as b = Q diag(I_r, 0) P from invertible P, Q
/// with P a Q = diag(I_r, 0).
Matrix one_inverse(const Matrix& a);

/// Canonical {1,2}-inverse (deterministic pivot construction).
ReflexiveGinv reflexive_ginv(const Matrix& a);

/// Another {1,2}-inverse of a derived from `base`:
/// g = b + (1 - b a) w + w (1 - a b) is a {1}-inverse; returns g a g.
ReflexiveGinv perturbed_reflexive_ginv(const Matrix& a, const ReflexiveGinv& base, const Matrix& w);

/// Present iff rank(a) = rank(a^2). Uses a = F G and a^# = F (G F)^{-2} G.
std::optional<GroupInverseCertificate> group_inverse(const Matrix& a);

/// a^D = (a^l)^# a^{l-1} with l = max(index, 1). The factorization chain is
/// the Cline sequence a = F1 G1, G1 F1 = F2 G2, ... down to an invertible
/// or empty G_k F_k.
GroupInverseCertificate drazin_inverse(const Matrix& a);

/// Cline's route to a^D from the chain alone:
/// F1 ... Fk (Gk Fk)^{-(k+1)} Gk ... G1. Independent of drazin_inverse().
Matrix drazin_from_chain(const std::vector<RankFactorization>& chain, std::size_t n, Field field);

/// a^# = a^+ s^{-1} + (1 - a^+ a) s^{-1} a^+ s^{-1} with s = a^+ a + a a^+ - 1.
/// Throws HypothesisNotMet (witness: s) when s is singular, PreconditionError
/// when a_plus is not a {1,2}-inverse of a.
GroupInverseCertificate group_from_reflexive(const Matrix& a, const ReflexiveGinv& a_plus);

/// x = p a p + p b (1 - p) for a non-trivial idempotent p. When (pap)^#
/// exists and (pap)(pap)^# b (1 - p) = p b (1 - p),
/// x^# = (pap)^# + [(pap)^#]^2 p b (1 - p).
GroupInverseCertificate split_group_inverse(const Matrix& p, const Matrix& a, const Matrix& b);

/// Converse direction: for x with x^# present and a non-trivial idempotent
/// p, returns the certificate of (p x p)^# = p x^# p and asserts the
/// compatibility identity. Throws HypothesisNotMet if x^# does not exist.
GroupInverseCertificate split_group_inverse_converse(const Matrix& x, const Matrix& p);

}  // namespace ginv
