#include "ginv/perturbation.hpp"

#include <string>
#include <utility>

namespace ginv {

namespace {

void require_square_pair(const Matrix& a, const Matrix& b, const char* op) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": operands must be square of equal size");
  }
}

}  // namespace

bool StableCheckReport::all_equal() const {
  for (bool c : conditions)
    if (c != conditions[0]) return false;
  return true;
}

StableCheckReport stable_checks(const Matrix& a, const Matrix& a_gen, const Matrix& delta) {
  require_square_pair(a, delta, "stable_checks");
  require_square_pair(a, a_gen, "stable_checks");
  if (!is_reflexive_inverse(a, a_gen)) {
    throw PreconditionError("stable_checks: a_gen is not a {1,2}-inverse of a");
  }
  Audit audit({{"a", a}, {"aplus", a_gen}, {"da", delta}});
  const Matrix one = a.one();
  const Matrix abar = a + delta;
  const auto x = invert(one + a_gen * delta);
  audit.require("1 + a+ da invertible", x.has_value());
  // Invertible together with 1 + a+ da.
  const auto y = invert(one + delta * a_gen);
  audit.ensure("1 + da a+ invertible", y.has_value());

  const Matrix range_comp = one - a * a_gen;   // 1 - a a+
  const Matrix kernel_proj = one - a_gen * a;  // 1 - a+ a
  const Matrix candidate = (*x) * a_gen;

  StableCheckReport report;
  auto& c = report.conditions;
  c[0] = abar * candidate * abar == abar && candidate * abar * candidate == candidate;
  c[1] = column_spaces_independent(abar, range_comp);
  c[2] = (abar * (*x) * kernel_proj).is_zero();
  c[3] = (range_comp * (*y) * abar).is_zero();
  c[4] = range_comp * delta * kernel_proj == range_comp * delta * (*x) * a_gen * delta * kernel_proj;
  c[5] = row_spaces_independent(abar, kernel_proj);
  if (c[0]) report.abar_plus = candidate;
  return report;
}

PerturbationContext build_context(const Matrix& a, const Matrix& delta) {
  require_square_pair(a, delta, "build_context");
  Audit audit({{"a", a}, {"da", delta}});
  const Matrix one = a.one();

  const auto sharp = group_inverse(a);
  audit.require("a^# exists", sharp.has_value(), "a is not group invertible");
  const Matrix& as = sharp->inverse;

  const auto x = invert(one + as * delta);
  audit.require("1 + a^# da invertible", x.has_value(), "1 + a^# da is singular");

  PerturbationContext ctx;
  ctx.a = a;
  ctx.delta = delta;
  ctx.abar = a + delta;
  ctx.a_sharp = as;
  ctx.a_pi = one - a * as;
  ctx.inv_one_plus = *x;
  const Matrix xa = (*x) * as;
  ctx.phi = one + delta * ctx.a_pi * delta * xa * xa;

  const auto phi_inv = invert(ctx.phi);
  audit.require("phi(a) invertible", phi_inv.has_value(), "phi(a) is singular", {{"phi", ctx.phi}});
  ctx.phi_inv = *phi_inv;

  ctx.big_b = ctx.phi * (one + delta * as);
  const auto b_inv = invert(ctx.big_b);
  audit.ensure("B invertible", b_inv.has_value());
  ctx.big_b_inv = *b_inv;
  ctx.c_corr = ctx.a_pi * delta * xa;
  ctx.d_main = xa * ctx.phi_inv;

  const Matrix p = a * as;
  audit.ensure("a_pi idempotent", ctx.a_pi.is_idempotent());
  audit.ensure("a_pi a^# = a^# a_pi = 0", (ctx.a_pi * as).is_zero() && (as * ctx.a_pi).is_zero());
  audit.ensure("C^2 = 0", (ctx.c_corr * ctx.c_corr).is_zero());
  audit.ensure("(1 - C)(1 + C) = 1", ((one - ctx.c_corr) * (one + ctx.c_corr)).is_identity());
  audit.ensure("phi (1 - P) = 1 - P", ctx.phi * (one - p) == one - p);
  ctx.checks = audit.take();
  return ctx;
}

bool conjugation_identity_holds(const PerturbationContext& ctx) {
  const Matrix one = ctx.a.one();
  const Matrix p = ctx.a * ctx.a_sharp;
  const Matrix lhs = (one - ctx.c_corr) * ctx.abar * (one + ctx.c_corr);
  const Matrix rhs = p * ctx.delta * (one - p) + p * ctx.big_b * ctx.a * p;
  return lhs == rhs;
}

GroupInverseCertificate ba_group_inverse(const PerturbationContext& ctx) {
  Audit audit({{"a", ctx.a}, {"da", ctx.delta}});
  for (const auto& c : ctx.checks) audit.note(c.name, c.holds);
  const Matrix ba = ctx.big_b * ctx.a;
  GroupInverseCertificate cert;
  cert.inverse = ctx.big_b * ctx.a * ctx.a_sharp * ctx.big_b_inv * ctx.a_sharp * ctx.big_b_inv;
  audit.ensure("group axioms for Ba", satisfies_group_axioms(ba, cert.inverse));
  const auto oracle = group_inverse(ba);
  cert.oracle_agrees = oracle && oracle->inverse == cert.inverse;
  audit.ensure("equals oracle group inverse of Ba", cert.oracle_agrees);
  cert.index = oracle->index;
  cert.factorization_chain = oracle->factorization_chain;
  cert.checks = audit.take();
  return cert;
}

GroupInverseCertificate perturbed_group_inverse(const Matrix& a, const Matrix& delta) {
  const PerturbationContext ctx = build_context(a, delta);
  Audit audit({{"a", a}, {"da", delta}});
  for (const auto& c : ctx.checks) audit.note(c.name, c.holds);

  const std::size_t joint = rank(hconcat(ctx.abar, ctx.a_pi));
  const std::size_t separate = rank(ctx.abar) + rank(ctx.a_pi);
  audit.require("abar R cap (1 - aa^#) R = {0}", joint == separate,
                "rank deficit " + std::to_string(separate - joint), {{"abar", ctx.abar}, {"a_pi", ctx.a_pi}});

  const Matrix one = a.one();
  const Matrix& c = ctx.c_corr;
  const Matrix& d = ctx.d_main;
  audit.ensure("(1 - C) abar (1 + C) = P da (1 - P) + P B a P", conjugation_identity_holds(ctx));

  GroupInverseCertificate cert;
  cert.inverse = (one + c) * (d + d * d * delta * ctx.a_pi) * (one - c);
  audit.ensure("group axioms for abar", satisfies_group_axioms(ctx.abar, cert.inverse));
  const auto oracle = group_inverse(ctx.abar);
  cert.oracle_agrees = oracle && oracle->inverse == cert.inverse;
  audit.ensure("equals oracle group inverse of abar", cert.oracle_agrees);
  cert.index = oracle->index;
  cert.factorization_chain = oracle->factorization_chain;
  cert.checks = audit.take();
  return cert;
}

KEquivalenceReport k_equivalence_checks(const Matrix& a, const Matrix& abar) {
  require_square_pair(a, abar, "k_equivalence_checks");
  Audit audit({{"a", a}, {"abar", abar}});
  const auto a_sharp = group_inverse(a);
  audit.require("a^# exists", a_sharp.has_value(), "a is not group invertible");
  const auto abar_sharp = group_inverse(abar);
  audit.require("abar^# exists", abar_sharp.has_value(), "abar is not group invertible");

  const Matrix one = a.one();
  const Matrix delta = abar - a;
  const Matrix& as = a_sharp->inverse;
  const Matrix p = a * as;
  const Matrix pbar = abar * abar_sharp->inverse;

  KEquivalenceReport report;
  report.splittings = column_spaces_complementary(abar, one - p) && column_spaces_complementary(a, one - pbar) &&
                      row_spaces_complementary(abar, one - p) && row_spaces_complementary(a, one - pbar);
  report.k = pbar + p - one;
  report.k_inverse = invert(report.k);
  report.k_invertible = report.k_inverse.has_value();
  report.intersections = column_spaces_independent(abar, one - p) && row_spaces_independent(abar, one - p) &&
                         is_invertible(one + delta * as);
  if (report.splittings && report.k_invertible && report.intersections) {
    if (const auto x = invert(one + as * delta)) report.abar_plus = (*x) * as;
  }
  return report;
}

DualPerturbationContext dual_context(const Matrix& a, const Matrix& delta) {
  require_square_pair(a, delta, "dual_context");
  Audit audit({{"a", a}, {"da", delta}});
  const Matrix one = a.one();
  const auto sharp = group_inverse(a);
  audit.require("a^# exists", sharp.has_value(), "a is not group invertible");
  const Matrix& as = sharp->inverse;
  const auto y = invert(one + delta * as);
  audit.require("1 + da a^# invertible", y.has_value(), "1 + da a^# is singular");
  const auto x = invert(one + as * delta);
  audit.ensure("1 + a^# da invertible", x.has_value());

  const Matrix a_pi = one - a * as;
  const Matrix p = a * as;
  const Matrix xa = (*x) * as;
  DualPerturbationContext ctx;
  ctx.e_corr = as * (*y) * delta * a_pi;
  ctx.psi = one + xa * xa * delta * a_pi * delta;
  audit.ensure("E^2 = 0", (ctx.e_corr * ctx.e_corr).is_zero());
  audit.ensure("(1 - E)(1 + E) = 1", ((one - ctx.e_corr) * (one + ctx.e_corr)).is_identity());
  audit.ensure("(1 - P) psi = 1 - P", (one - p) * ctx.psi == one - p);
  ctx.checks = audit.take();
  return ctx;
}

bool k_implies_phi_invertible(const Matrix& a, const Matrix& abar) {
  require_square_pair(a, abar, "k_implies_phi_invertible");
  Audit audit({{"a", a}, {"abar", abar}});
  const auto a_sharp = group_inverse(a);
  audit.require("a^# exists", a_sharp.has_value(), "a is not group invertible");
  const auto abar_sharp = group_inverse(abar);
  audit.require("abar^# exists", abar_sharp.has_value(), "abar is not group invertible");

  const Matrix one = a.one();
  const Matrix& as = a_sharp->inverse;
  const Matrix k = abar * abar_sharp->inverse + a * as - one;
  if (!is_invertible(k)) return true;

  const Matrix delta = abar - a;
  const auto x = invert(one + as * delta);
  if (!x) return false;  // phi(a) is not even defined
  const Matrix xa = (*x) * as;
  const Matrix phi = one + delta * (one - a * as) * delta * xa * xa;
  return is_invertible(phi);
}

GroupInverseCertificate drazin_perturbation(const Matrix& a, const Matrix& b, std::size_t l, std::size_t k,
                                            DrazinPerturbationTrace* trace) {
  require_square_pair(a, b, "drazin_perturbation");
  const GroupInverseCertificate a_drazin = drazin_inverse(a);
  const GroupInverseCertificate b_drazin = drazin_inverse(b);
  const std::size_t s = a_drazin.index;
  const std::size_t t = b_drazin.index;
  if (l < s || l == 0) {
    throw PreconditionError("drazin_perturbation: l must satisfy l >= max(ind(a), 1) = " +
                            std::to_string(s == 0 ? 1 : s));
  }
  if (k < t || k == 0) {
    throw PreconditionError("drazin_perturbation: k must satisfy k >= max(ind(b), 1) = " +
                            std::to_string(t == 0 ? 1 : t));
  }

  Audit audit({{"a", a}, {"b", b}});
  const Matrix one = a.one();
  const Matrix& ad = a_drazin.inverse;
  const Matrix& bd = b_drazin.inverse;
  const Matrix kmat = b * bd + a * ad - one;
  audit.require("K(a,b) = bb^D + aa^D - 1 invertible", is_invertible(kmat), "K(a,b) is singular", {{"K", kmat}});

  const Matrix ad_l = ad.pow(l);
  const Matrix a_pi = one - a * ad;
  const Matrix bk = b.pow(k);
  const Matrix e = bk - a.pow(l);

  const auto y = invert(one + ad_l * e);
  audit.ensure("1 + (a^D)^l (b^k - a^l) invertible", y.has_value());
  audit.ensure("b^k R cap (1 - a^D a) R = {0}", column_spaces_independent(bk, one - ad * a));
  const auto y_right = invert(one + e * ad_l);
  audit.ensure("1 + E (a^D)^l invertible", y_right.has_value());

  const Matrix z = a_pi * e * ad_l * (*y_right);
  const Matrix w = one + e * z * (*y) * ad_l;
  const auto w_inv = invert(w);
  audit.ensure("W invertible", w_inv.has_value());

  const Matrix ya = (*y) * ad_l;
  const Matrix phi_sub = one + e * a_pi * e * ya * ya;
  audit.note("W equals phi at (a^l, E)", w == phi_sub);

  const Matrix h = ya * (*w_inv);
  GroupInverseCertificate cert;
  cert.inverse = (one + z) * (h + h * h * e * a_pi) * (one - z) * b.pow(k - 1);
  cert.index = t;
  cert.factorization_chain = b_drazin.factorization_chain;
  audit.ensure("Drazin axioms for b", satisfies_drazin_axioms(b, cert.inverse, t));
  cert.oracle_agrees = cert.inverse == bd;
  audit.ensure("equals oracle Drazin inverse of b", cert.oracle_agrees);
  cert.checks = audit.take();

  if (trace != nullptr) *trace = DrazinPerturbationTrace{e, z, w, phi_sub, h};
  return cert;
}

}  // namespace ginv
