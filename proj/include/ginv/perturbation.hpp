#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "ginv/core.hpp"

namespace ginv {

/// Everything derived from (a, delta) that the perturbed group inverse is
/// built from. Notation: X = (1 + a^# delta)^{-1}, P = a a^#.
struct PerturbationContext {
  Matrix a;
  Matrix delta;
  Matrix abar;          // a + delta
  Matrix a_sharp;       // a^#
  Matrix a_pi;          // 1 - a a^#
  Matrix inv_one_plus;  // X
  Matrix phi;           // 1 + delta a_pi delta (X a^#)^2
  Matrix phi_inv;
  Matrix big_b;         // phi (1 + delta a^#)
  Matrix big_b_inv;
  Matrix c_corr;        // a_pi delta X a^#
  Matrix d_main;        // X a^# phi^{-1}
  std::vector<Check> checks;
};

/// Correctors used by the converse argument.
struct DualPerturbationContext {
  Matrix e_corr;  // a^# (1 + delta a^#)^{-1} delta a_pi
  Matrix psi;     // 1 + (X a^#)^2 delta a_pi delta
  std::vector<Check> checks;
};

/// The six stable-perturbation conditions, each decided independently.
struct StableCheckReport {
  std::array<bool, 6> conditions{};
  /// (1 + a+ delta)^{-1} a+ when condition 1 holds.
  std::optional<Matrix> abar_plus;

  bool all_equal() const;
};

struct KEquivalenceReport {
  bool splittings = false;     // the four direct-sum decompositions
  bool k_invertible = false;   // K = abar abar^# + a a^# - 1
  bool intersections = false;  // both trivial intersections and 1 + delta a^# invertible
  Matrix k;
  std::optional<Matrix> k_inverse;
  /// (1 + a^# delta)^{-1} a^# when the conditions hold and it exists.
  std::optional<Matrix> abar_plus;

  bool agree() const { return splittings == k_invertible && k_invertible == intersections; }
};

/// Conditions (1)-(6) for the stable perturbation abar = a + delta with
/// respect to the {1,2}-inverse a_gen. Throws HypothesisNotMet when
/// 1 + a_gen delta is singular, PreconditionError when a_gen is not a
/// {1,2}-inverse of a.
StableCheckReport stable_checks(const Matrix& a, const Matrix& a_gen, const Matrix& delta);

/// Checks, in order: a^# exists, 1 + a^# delta invertible, phi invertible.
PerturbationContext build_context(const Matrix& a, const Matrix& delta);

/// (Ba)^# = B a a^# B^{-1} a^# B^{-1}, asserted against the oracle.
GroupInverseCertificate ba_group_inverse(const PerturbationContext& ctx);

/// abar^# = (1 + C)(D + D^2 delta a_pi)(1 - C) under the context hypotheses
/// plus abar R cap (1 - a a^#) R = {0}.
GroupInverseCertificate perturbed_group_inverse(const Matrix& a, const Matrix& delta);

/// The conjugation identity (1 - C) abar (1 + C) = P delta (1 - P) + P B a P.
bool conjugation_identity_holds(const PerturbationContext& ctx);

KEquivalenceReport k_equivalence_checks(const Matrix& a, const Matrix& abar);

DualPerturbationContext dual_context(const Matrix& a, const Matrix& delta);

/// Instance of "K(a, abar) invertible implies phi(a) invertible".
bool k_implies_phi_invertible(const Matrix& a, const Matrix& abar);

/// Intermediate quantities of the Drazin perturbation formula, for
/// inspection and for the reconciliation against phi.
struct DrazinPerturbationTrace {
  Matrix e;        // b^k - a^l
  Matrix z;        // a_pi E (a^D)^l (1 + E (a^D)^l)^{-1}
  Matrix w;        // 1 + E Z (1 + (a^D)^l E)^{-1} (a^D)^l
  Matrix phi_sub;  // phi evaluated at (a^l, E)
  Matrix h;        // (1 + (a^D)^l E)^{-1} (a^D)^l W^{-1}
};

/// b^D from a^D under K(a, b) = b b^D + a a^D - 1 invertible, with
/// l >= max(ind(a), 1) and k >= max(ind(b), 1).
GroupInverseCertificate drazin_perturbation(const Matrix& a, const Matrix& b, std::size_t l, std::size_t k,
                                            DrazinPerturbationTrace* trace = nullptr);

}  // namespace ginv
