#include "ginv/fuzz.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>

#include "ginv/block_forms.hpp"
#include "ginv/core.hpp"
#include "ginv/perturbation.hpp"

namespace ginv {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
/// Attempts a sampler makes before the trial is reported as exhausted.
constexpr int kRejectionCap = 400;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

struct TrialFailed {
  std::string assertion;
  std::string detail;
};

struct SamplerExhausted {
  std::string sampler;
};

class Trial {
 public:
  Trial(std::uint64_t seed, Field field, std::size_t n, std::size_t max_dim,
        std::map<std::string, std::size_t>& tallies)
      : rng(seed), field(field), n(n), max_dim(max_dim), tallies_(tallies) {}

  SplitMix64 rng;
  Field field;
  std::size_t n;
  std::size_t max_dim;
  std::map<std::string, Matrix> inputs;
  std::string replay;

  void record(const std::string& name, const Matrix& m) { inputs[name] = m; }
  void tally(const std::string& key) { ++tallies_[key]; }
  void expect(bool holds, const std::string& assertion, const std::string& detail = "") {
    if (!holds) throw TrialFailed{assertion, detail};
  }
  bool coin() { return rng.below(2) == 0; }

 private:
  std::map<std::string, std::size_t>& tallies_;
};

// Samplers. Entries are uniform over GF(p); over Q they are num/den with
// num in [-9, 9] and den in [-9, 9] \ {0}.

Scalar sample_scalar(Trial& t) {
  if (!t.field.is_rational()) return Scalar::from_int(t.field, static_cast<long>(t.rng.below(t.field.modulus())));
  const long num = t.rng.between(-9, 9);
  long den = t.rng.between(-9, 8);
  if (den >= 0) ++den;
  return Scalar::from_fraction(t.field, num, den);
}

Matrix sample_matrix(Trial& t, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols, t.field);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = sample_scalar(t);
  return m;
}

struct Similarity {
  Matrix s;
  Matrix s_inv;
};

Similarity sample_similarity(Trial& t, std::size_t n) {
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    Matrix s = sample_matrix(t, n, n);
    if (auto inv = invert(s)) return {std::move(s), std::move(*inv)};
  }
  throw SamplerExhausted{"invertible matrix"};
}

Matrix sample_invertible(Trial& t, std::size_t n) { return sample_similarity(t, n).s; }

/// n x n matrix with `core` in the top-left corner and `tail` bottom-right.
Matrix direct_sum(const Matrix& core, const Matrix& tail, Field field) {
  const std::size_t r = core.rows();
  Matrix m(r + tail.rows(), r + tail.rows(), field);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = core(i, j);
  for (std::size_t i = 0; i < tail.rows(); ++i)
    for (std::size_t j = 0; j < tail.rows(); ++j) m(r + i, r + j) = tail(i, j);
  return m;
}

Matrix conjugate(const Similarity& sim, const Matrix& m) { return sim.s * m * sim.s_inv; }

Matrix sample_low_rank(Trial& t, std::size_t n) {
  const std::size_t r = static_cast<std::size_t>(t.rng.below(n + 1));
  if (r == 0) return Matrix(n, n, t.field);
  return sample_matrix(t, n, r) * sample_matrix(t, r, n);
}

/// S diag(C, 0) S^-1 with C invertible of size r.
Matrix sample_group_invertible(Trial& t, std::size_t n, std::size_t r) {
  const Similarity sim = sample_similarity(t, n);
  const Matrix core = r == 0 ? Matrix(0, 0, t.field) : sample_invertible(t, r);
  return conjugate(sim, direct_sum(core, Matrix(n - r, n - r, t.field), t.field));
}

Matrix sample_group_invertible(Trial& t, std::size_t n) {
  return sample_group_invertible(t, n, static_cast<std::size_t>(t.rng.below(n + 1)));
}

/// S diag(C, N) S^-1 with C arbitrary and N strictly upper triangular, so
/// the index can exceed 1.
Matrix sample_core_nilpotent(Trial& t, std::size_t n) {
  const std::size_t r = static_cast<std::size_t>(t.rng.below(n + 1));
  const Similarity sim = sample_similarity(t, n);
  const Matrix core = sample_matrix(t, r, r);
  Matrix nil(n - r, n - r, t.field);
  for (std::size_t i = 0; i < n - r; ++i)
    for (std::size_t j = i + 1; j < n - r; ++j) nil(i, j) = sample_scalar(t);
  return conjugate(sim, direct_sum(core, nil, t.field));
}

Matrix sample_idempotent(Trial& t, std::size_t n, std::size_t r) {
  const Similarity sim = sample_similarity(t, n);
  return conjugate(sim, direct_sum(Matrix::identity(r, t.field), Matrix(n - r, n - r, t.field), t.field));
}

Matrix sample_square(Trial& t, std::size_t n) {
  switch (t.rng.below(4)) {
    case 0:
      return sample_matrix(t, n, n);
    case 1:
      return sample_low_rank(t, n);
    case 2:
      return sample_group_invertible(t, n);
    default:
      return sample_core_nilpotent(t, n);
  }
}

/// Group invertible b, c of equal rank with b^# b c^# c = b^# b and
/// c^# c b^# b = c^# c: same kernel, independent ranges.
std::pair<Matrix, Matrix> sample_compatible_pair(Trial& t, std::size_t n) {
  const std::size_t r = static_cast<std::size_t>(t.rng.below(n + 1));
  const Similarity sim = sample_similarity(t, n);
  const Matrix zero_tail(n - r, n - r, t.field);
  const Matrix core_b = r == 0 ? Matrix(0, 0, t.field) : sample_invertible(t, r);
  const Matrix core_c = r == 0 ? Matrix(0, 0, t.field) : sample_invertible(t, r);
  const Matrix b = conjugate(sim, direct_sum(core_b, zero_tail, t.field));
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    // Range of c spanned by fresh columns, kernel shared with b.
    Matrix basis = sim.s;
    const Matrix fresh = sample_matrix(t, n, r);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < r; ++j) basis(i, j) = fresh(i, j);
    if (!is_invertible(basis)) continue;
    Matrix c = basis * direct_sum(core_c, zero_tail, t.field) * sim.s_inv;
    return {b, std::move(c)};
  }
  throw SamplerExhausted{"compatible pair"};
}

/// Group invertible b, c with k = b^# b + c^# c - 1 invertible.
std::pair<Matrix, Matrix> sample_k_pair(Trial& t, std::size_t n) {
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    const std::size_t r = static_cast<std::size_t>(t.rng.below(n + 1));
    Matrix b = sample_group_invertible(t, n, r);
    Matrix c = sample_group_invertible(t, n, r);
    const Matrix k = group_inverse(b)->inverse * b + group_inverse(c)->inverse * c - b.one();
    if (is_invertible(k)) return {std::move(b), std::move(c)};
  }
  throw SamplerExhausted{"pair with k invertible"};
}

/// Perturbations that are range- or kernel-compatible with a in varying
/// degrees, mixed with unconstrained ones.
Matrix sample_delta(Trial& t, const Matrix& a) {
  const std::size_t n = a.rows();
  switch (t.rng.below(6)) {
    case 5:
      // abar = (1 + a_pi m a^#)(a + a m' a)(1 + a^# m'' a_pi): stable by
      // construction, with non-trivial correctors.
      if (const auto g = group_inverse(a)) {
        const Matrix& as = g->inverse;
        const Matrix a_pi = a.one() - a * as;
        const Matrix left = a.one() + a_pi * sample_matrix(t, n, n) * as;
        const Matrix right = a.one() + as * sample_matrix(t, n, n) * a_pi;
        return left * (a + a * sample_matrix(t, n, n) * a) * right - a;
      }
      return sample_matrix(t, n, n);
    case 0:
      return sample_matrix(t, n, n);
    case 1:
      return a * sample_matrix(t, n, n) * a;
    case 2:
      return a * sample_matrix(t, n, n) + sample_matrix(t, n, n) * a;
    case 3:
      return t.coin() ? a * sample_matrix(t, n, n) : sample_matrix(t, n, n) * a;
    default:
      return sample_matrix(t, n, 1) * sample_matrix(t, 1, n);
  }
}

std::optional<PerturbationContext> try_context(const Matrix& a, const Matrix& delta) {
  try {
    return build_context(a, delta);
  } catch (const HypothesisNotMet&) {
    return std::nullopt;
  }
}

// Suites.

void suite_oracle(Trial& t) {
  const std::size_t n = t.n;
  const Matrix a = sample_square(t, n);
  t.record("a", a);
  t.replay = "ginv ginv FILE --name a --kind drazin";

  const std::size_t r = rank(a);
  const auto g = group_inverse(a);
  t.expect(g.has_value() == (r == rank(a * a)), "group inverse exists iff rank(a) = rank(a^2)");
  if (g) {
    t.tally("group_invertible");
    t.expect(satisfies_group_axioms(a, g->inverse), "group inverse axioms");
  }

  const GroupInverseCertificate d = drazin_inverse(a);
  const std::size_t s = drazin_index(a);
  t.expect(d.index == s, "certificate index equals drazin_index");
  t.expect(satisfies_drazin_axioms(a, d.inverse, s), "Drazin axioms");
  t.expect(rank(a.pow(s)) == rank(a.pow(s + 1)) && (s == 0 || rank(a.pow(s - 1)) != rank(a.pow(s))),
           "index is minimal");
  t.expect(g.has_value() == (s <= 1), "group invertible iff index <= 1");
  if (g) t.expect(g->inverse == d.inverse, "a^# = a^D when index <= 1");
  t.expect(drazin_from_chain(d.factorization_chain, n, t.field) == d.inverse, "Cline chain route agrees");
  const std::size_t l = std::max<std::size_t>(s, 1) + 1;
  const auto gl = group_inverse(a.pow(l));
  t.expect(gl && gl->inverse * a.pow(l - 1) == d.inverse, "a^D = (a^l)^# a^(l-1) past the index");
  if (s >= 2) t.tally("index_ge_2");

  t.expect(is_one_inverse(a, one_inverse(a)), "{1}-inverse axiom");
  t.expect(is_reflexive_inverse(a, reflexive_ginv(a).value), "{1,2}-inverse axioms");
  const auto inv = invert(a);
  t.expect(inv.has_value() == (r == n), "invertible iff full rank");
  if (inv) t.expect(*inv * a == a.one() && a * *inv == a.one() && *inv == d.inverse, "inverse is two-sided and equals a^D");
  const RankFactorization f = full_rank_factorization(a);
  t.expect(f.rank == r && f.left * f.right == a, "full-rank factorization");
}

void suite_one_plus_ab(Trial& t) {
  const std::size_t n = t.n;
  const std::size_t m = t.coin() ? n : static_cast<std::size_t>(t.rng.between(1, static_cast<long>(t.max_dim)));
  const Matrix a = sample_matrix(t, n, m);
  Matrix b(m, n, t.field);
  switch (t.rng.below(3)) {
    case 0:
      b = sample_matrix(t, m, n);
      break;
    case 1:
      b = sample_matrix(t, m, 1) * sample_matrix(t, 1, n);
      break;
    default: {
      // b = -v u with u a v = 1 makes 1 + ba singular.
      const Matrix v = sample_matrix(t, m, 1);
      const Matrix av = a * v;
      Matrix u(1, n, t.field);
      for (std::size_t i = 0; i < n; ++i) {
        if (!av(i, 0).is_zero()) {
          u(0, i) = av(i, 0).inverse();
          break;
        }
      }
      b = -(v * u);
    }
  }
  t.record("a", a);
  t.record("b", b);
  t.replay.clear();

  const Matrix ab1 = Matrix::identity(n, t.field) + a * b;
  const Matrix ba1 = Matrix::identity(m, t.field) + b * a;
  const auto outer = invert(ab1);
  const auto inner = invert(ba1);
  const auto closed = one_plus_ab_inverse(a, b);
  t.expect(outer.has_value() == inner.has_value(), "1 + ab invertible iff 1 + ba invertible");
  t.expect(closed.has_value() == outer.has_value(), "closed form defined iff 1 + ab invertible");
  if (!closed) {
    t.tally("singular");
    return;
  }
  t.tally("invertible");
  t.expect(closed->outer == *outer, "(1 + ab)^-1 = 1 - a (1 + ba)^-1 b");
  t.expect(closed->inner == *inner, "(1 + ba)^-1 matches direct inversion");
  t.expect(closed->outer * a == a * closed->inner, "(1 + ab)^-1 a = a (1 + ba)^-1");
  t.expect(b * closed->outer == closed->inner * b, "b (1 + ab)^-1 = (1 + ba)^-1 b");
  t.expect(transferred_left_inverse(a, b, *outer) * ba1 == Matrix::identity(m, t.field),
           "1 - b c a is a left inverse of 1 + ba");
}

void suite_reflexive_to_group(Trial& t) {
  const std::size_t n = t.n;
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    const Matrix a = t.rng.below(4) == 0 ? sample_square(t, n) : sample_group_invertible(t, n);
    t.record("a", a);
    t.replay = "ginv lemma23 FILE --a a --aplus aplus";
    const ReflexiveGinv canonical = reflexive_ginv(a);
    std::vector<ReflexiveGinv> candidates{canonical};
    for (int i = 0; i < 2; ++i) candidates.push_back(perturbed_reflexive_ginv(a, canonical, sample_matrix(t, n, n)));

    const bool group_invertible = group_inverse(a).has_value();
    std::size_t usable = 0;
    for (const ReflexiveGinv& c : candidates) {
      t.record("aplus", c.value);
      t.expect(is_reflexive_inverse(a, c.value), "sampled a+ is a {1,2}-inverse");
      const Matrix s = c.value * a + a * c.value - a.one();
      const bool s_invertible = is_invertible(s);
      if (!group_invertible) {
        t.expect(!s_invertible, "s is singular when a^# does not exist");
        continue;
      }
      if (!s_invertible) {
        t.tally("s_singular");
        continue;
      }
      const GroupInverseCertificate cert = group_from_reflexive(a, c);
      t.expect(cert.oracle_agrees, "formula equals oracle a^#");
      t.tally("s_invertible_instances");
      ++usable;
    }
    if (!group_invertible) {
      t.tally("not_group_invertible");
      return;
    }
    if (usable > 0) return;
  }
  throw SamplerExhausted{"a with s invertible"};
}

void suite_splitting(Trial& t) {
  const std::size_t n = std::max<std::size_t>(t.n, 2);
  const std::size_t r = static_cast<std::size_t>(t.rng.between(1, static_cast<long>(n) - 1));
  const Matrix p = sample_idempotent(t, n, r);
  const Matrix a = sample_square(t, n);
  const Matrix b = sample_matrix(t, n, n);
  t.record("p", p);
  t.record("a", a);
  t.record("b", b);
  t.replay.clear();

  const Matrix one = p.one();
  const Matrix pap = p * a * p;
  const Matrix x = pap + p * b * (one - p);
  const auto g = group_inverse(pap);
  const bool hypotheses = g && pap * g->inverse * b * (one - p) == p * b * (one - p);
  if (hypotheses) {
    t.tally("hypotheses_hold");
    const GroupInverseCertificate cert = split_group_inverse(p, a, b);
    t.expect(cert.oracle_agrees, "x^# equals oracle");
    const GroupInverseCertificate back = split_group_inverse_converse(x, p);
    t.expect(back.inverse == g->inverse && p * cert.inverse * p == g->inverse, "converse recovers (pap)^# = p x^# p");
    return;
  }
  t.tally("hypotheses_fail");
  t.expect(!group_inverse(x).has_value(), "x^# absent when (pap)^# or the compatibility identity fails");
  bool refused = false;
  try {
    split_group_inverse(p, a, b);
  } catch (const HypothesisNotMet&) {
    refused = true;
  }
  t.expect(refused, "split_group_inverse refuses when hypotheses fail");
}

void suite_stable_conditions(Trial& t) {
  const std::size_t n = t.n;
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    const Matrix a = sample_square(t, n);
    const ReflexiveGinv canonical = reflexive_ginv(a);
    const Matrix aplus = t.coin() ? canonical.value : perturbed_reflexive_ginv(a, canonical, sample_matrix(t, n, n)).value;
    const Matrix delta = sample_delta(t, a);
    if (!is_invertible(a.one() + aplus * delta)) continue;
    t.record("a", a);
    t.record("aplus", aplus);
    t.record("da", delta);
    t.replay = "ginv check-stable FILE --a a --da da --aplus aplus";

    const StableCheckReport report = stable_checks(a, aplus, delta);
    t.expect(report.all_equal(), "six stable-perturbation conditions agree");
    if (report.conditions[0]) {
      t.tally("stable");
      t.expect(report.abar_plus && is_reflexive_inverse(a + delta, *report.abar_plus),
               "(1 + a+ da)^-1 a+ is a {1,2}-inverse of abar");
    } else {
      t.tally("unstable");
    }
    return;
  }
  throw SamplerExhausted{"1 + a+ da invertible"};
}

void check_perturbed(Trial& t, const Matrix& a, const Matrix& delta) {
  const GroupInverseCertificate cert = perturbed_group_inverse(a, delta);
  const auto oracle = group_inverse(a + delta);
  t.expect(oracle && oracle->inverse == cert.inverse, "perturbed formula equals oracle abar^#");
  const PerturbationContext ctx = build_context(a, delta);
  t.expect(conjugation_identity_holds(ctx), "conjugation identity");
  ba_group_inverse(ctx);
  dual_context(a, delta);
  if (!ctx.c_corr.is_zero()) t.tally("nonzero_C");
  if (!ctx.phi.is_identity()) t.tally("phi_not_identity");
}

void suite_perturbed(Trial& t) {
  const std::size_t n = t.n;
  t.replay = "ginv perturb FILE --a a --da da";
  bool found = false;
  for (int attempt = 0; attempt < kRejectionCap && !found; ++attempt) {
    const Matrix a = sample_group_invertible(t, n);
    const Matrix delta = a * sample_matrix(t, n, n) * a;
    if (!is_invertible(a.one() + group_inverse(a)->inverse * delta)) continue;
    t.record("a", a);
    t.record("da", delta);
    check_perturbed(t, a, delta);
    t.tally("ama_instances");
    found = true;
  }
  if (!found) throw SamplerExhausted{"a m a perturbation"};

  // A second instance from a wider family whose corrections are non-trivial.
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    const Matrix a = sample_group_invertible(t, n);
    const Matrix delta = sample_delta(t, a);
    const auto ctx = try_context(a, delta);
    if (!ctx || !column_spaces_independent(ctx->abar, ctx->a_pi)) continue;
    t.record("a", a);
    t.record("da", delta);
    check_perturbed(t, a, delta);
    t.tally("general_instances");
    return;
  }
  t.tally("general_not_found");
}

void suite_ba(Trial& t) {
  const std::size_t n = t.n;
  t.replay.clear();
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    const Matrix a = sample_group_invertible(t, n);
    const Matrix delta = sample_delta(t, a);
    const auto ctx = try_context(a, delta);
    if (!ctx) continue;
    t.record("a", a);
    t.record("da", delta);
    const GroupInverseCertificate cert = ba_group_inverse(*ctx);
    t.expect(cert.oracle_agrees, "(Ba)^# equals oracle");
    dual_context(a, delta);
    if (!ctx->c_corr.is_zero()) t.tally("nonzero_C");
    return;
  }
  throw SamplerExhausted{"invertible 1 + a^# da and phi"};
}

void check_k_pair(Trial& t, const Matrix& a, const Matrix& abar) {
  t.record("a", a);
  t.record("abar", abar);
  t.replay = "ginv k-check FILE --a a --abar abar";
  const KEquivalenceReport report = k_equivalence_checks(a, abar);
  t.expect(report.agree(), "splittings, K invertible and intersections agree");
  t.expect(k_implies_phi_invertible(a, abar), "K invertible implies phi invertible");
  if (!report.k_invertible) {
    t.tally("k_singular");
    return;
  }
  t.tally("k_invertible");
  t.expect(report.abar_plus && is_reflexive_inverse(abar, *report.abar_plus),
           "(1 + a^# da)^-1 a^# is a {1,2}-inverse of abar");
  const GroupInverseCertificate cert = perturbed_group_inverse(a, abar - a);
  t.expect(cert.inverse == group_inverse(abar)->inverse, "perturbed formula applies and equals abar^#");
}

void suite_k_pairs(Trial& t) {
  const std::size_t n = t.n;
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    const Matrix a = sample_group_invertible(t, n);
    Matrix abar(n, n, t.field);
    switch (t.rng.below(3)) {
      case 0:
        abar = sample_group_invertible(t, n);
        break;
      case 1:
        abar = a + a * sample_matrix(t, n, n) * a;
        break;
      default:
        abar = a + sample_delta(t, a);
    }
    if (!group_inverse(abar)) continue;
    check_k_pair(t, a, abar);
    return;
  }
  throw SamplerExhausted{"group invertible abar"};
}

void suite_drazin_perturb(Trial& t) {
  const std::size_t n = t.n;
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    const Matrix a = sample_core_nilpotent(t, n);
    Matrix b(n, n, t.field);
    switch (t.rng.below(3)) {
      case 0:
        b = sample_core_nilpotent(t, n);
        break;
      case 1:
        b = a + a * sample_matrix(t, n, n) * a;
        break;
      default:
        b = a + sample_matrix(t, n, 1) * sample_matrix(t, 1, n);
    }
    const GroupInverseCertificate ad = drazin_inverse(a);
    const GroupInverseCertificate bd = drazin_inverse(b);
    if (!is_invertible(b * bd.inverse + a * ad.inverse - a.one())) continue;
    t.record("a", a);
    t.record("b", b);
    const std::size_t l0 = std::max<std::size_t>(ad.index, 1);
    const std::size_t k0 = std::max<std::size_t>(bd.index, 1);
    if (ad.index >= 2) t.tally("index_a_ge_2");
    if (bd.index >= 2) t.tally("index_b_ge_2");
    for (std::size_t l = l0; l <= l0 + 1; ++l) {
      for (std::size_t k = k0; k <= k0 + 1; ++k) {
        t.replay = "ginv drazin-perturb FILE --a a --b b --l " + std::to_string(l) + " --k " + std::to_string(k);
        DrazinPerturbationTrace trace;
        const GroupInverseCertificate cert = drazin_perturbation(a, b, l, k, &trace);
        t.expect(cert.inverse == bd.inverse, "formula equals oracle b^D");
        if (!(trace.w == trace.phi_sub)) t.tally("w_phi_discrepancy");
      }
    }
    return;
  }
  throw SamplerExhausted{"K(a, b) invertible"};
}

void suite_block(Trial& t) {
  const std::size_t n = t.n;
  const Matrix zero(n, n, t.field);
  const auto replay_block = [&](const std::string& extra) {
    t.replay = "ginv block FILE --d d --b b --c c" + extra;
  };

  // Anti-diagonal form, then the anti-triangular branches on the same b, c.
  const auto [b, c] = sample_k_pair(t, n);
  t.record("b", b);
  t.record("c", c);
  t.record("d", zero);
  replay_block(" --anti-diagonal");
  const BlockGroupInverse diag = anti_diagonal_group_inverse(b, c);
  replay_block("");
  t.expect(anti_triangular_group_inverse({zero, b, c}).blocks == diag.blocks,
           "d = 0 reduces to the anti-diagonal form");

  const Matrix bbs = b * group_inverse(b)->inverse;
  const Matrix ccs = c * group_inverse(c)->inverse;
  const Matrix d_left = bbs * sample_matrix(t, n, n);
  t.record("d", d_left);
  anti_triangular_group_inverse({d_left, b, c});
  const Matrix d_right = sample_matrix(t, n, n) * ccs;
  t.record("d", d_right);
  anti_triangular_group_inverse({d_right, b, c});

  // Compatible pairs: k^2 = 1 and the k-free forms.
  const auto [bc, cc] = sample_compatible_pair(t, n);
  t.record("b", bc);
  t.record("c", cc);
  t.record("d", zero);
  replay_block(" --anti-diagonal");
  const Matrix k = group_inverse(bc)->inverse * bc + group_inverse(cc)->inverse * cc - bc.one();
  t.expect((k * k).is_identity(), "k^2 = 1 for compatible b, c");
  anti_diagonal_group_inverse(bc, cc);
  replay_block(" --simplified");
  const Matrix d_cl = bc * group_inverse(bc)->inverse * sample_matrix(t, n, n);
  t.record("d", d_cl);
  simplified_anti_triangular({d_cl, bc, cc});
  const Matrix d_cr = sample_matrix(t, n, n) * cc * group_inverse(cc)->inverse;
  t.record("d", d_cr);
  simplified_anti_triangular({d_cr, bc, cc});

  // Idempotent blocks with the transpose as involution.
  const std::size_t r = static_cast<std::size_t>(t.rng.between(1, static_cast<long>(n)));
  const Matrix p = sample_idempotent(t, n, r);
  t.inputs.clear();
  t.record("p", p);
  t.replay = "ginv block FILE --b p --star pp";
  star_idempotent_group_inverse(p, StarVariant::PPStar);
  t.replay = "ginv block FILE --b p --star ps";
  star_idempotent_group_inverse(p, StarVariant::PStarP);
  t.tally("instances");
}

using SuiteFn = void (*)(Trial&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"oracle", suite_oracle}, {"lemma21", suite_one_plus_ab}, {"lemma23", suite_reflexive_to_group},
      {"lemma25", suite_splitting}, {"prop27", suite_stable_conditions}, {"lemma31", suite_ba},
      {"thm32", suite_perturbed},     {"prop33", suite_k_pairs},   {"thm34", suite_k_pairs},
      {"cor35", suite_drazin_perturb},     {"block", suite_block},
  };
  return suites;
}

/// Every 2 x 2 matrix over GF(2) with a group inverse.
std::vector<Matrix> group_invertible_gf2() {
  const Field f = Field::prime(2);
  std::vector<Matrix> out;
  for (unsigned bits = 0; bits < 16; ++bits) {
    Matrix m(2, 2, f);
    for (unsigned e = 0; e < 4; ++e) m(e / 2, e % 2) = Scalar::from_int(f, (bits >> e) & 1U);
    if (group_inverse(m)) out.push_back(std::move(m));
  }
  return out;
}

void run_trials(FuzzReport& report, std::size_t trials, const std::function<void(std::size_t, Trial&)>& body,
                const FuzzOptions& options) {
  report.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t n = options.fixed_dim ? options.dim : 1 + i % options.dim;
    Trial t(trial_seed(options.seed, report.suite, i), options.field, n, options.dim, report.tallies);
    std::optional<std::pair<std::string, std::string>> failure;
    try {
      body(i, t);
    } catch (const TrialFailed& e) {
      failure.emplace(e.assertion, e.detail);
    } catch (const InvariantViolation& e) {
      failure.emplace(e.assertion(), e.what());
    } catch (const HypothesisNotMet& e) {
      failure.emplace("unexpected unmet hypothesis: " + e.hypothesis(), e.detail());
    } catch (const SamplerExhausted& e) {
      failure.emplace("sampler exhausted", e.sampler);
    } catch (const std::exception& e) {
      failure.emplace("unexpected error", e.what());
    }
    if (!failure) {
      ++report.passes;
      continue;
    }
    FuzzFailure f;
    f.trial = i;
    f.assertion = std::move(failure->first);
    f.detail = std::move(failure->second);
    f.input.field = options.field;
    f.input.matrices = t.inputs;
    f.replay = t.replay;
    report.failures.push_back(std::move(f));
  }
}

FuzzReport run_single(const std::string& suite, SuiteFn fn, const FuzzOptions& options) {
  FuzzReport report;
  report.suite = suite;
  report.field = options.field;
  report.dim = options.dim;
  report.fixed_dim = options.fixed_dim;
  report.seed = options.seed;

  if (suite == "thm34" && options.field == Field::prime(2) && options.dim == 2) {
    const std::vector<Matrix> mats = group_invertible_gf2();
    const std::size_t count = mats.size();
    report.tallies["exhaustive_pairs"] = count * count;
    run_trials(
        report, count * count, [&](std::size_t i, Trial& t) { check_k_pair(t, mats[i / count], mats[i % count]); },
        options);
    return report;
  }
  run_trials(report, options.trials, [fn](std::size_t, Trial& t) { fn(t); }, options);
  return report;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t v = next();
    if (v < limit) return v % bound;
  }
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::uint64_t trial_seed(std::uint64_t seed, std::string_view suite, std::uint64_t trial) {
  return mix64(mix64(seed ^ fnv1a64(suite)) + kGolden * (trial + 1));
}

const std::vector<std::string>& fuzz_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : registry()) out.push_back(entry.first);
    out.push_back("all");
    return out;
  }();
  return names;
}

FuzzReport run_fuzz(std::string_view suite, const FuzzOptions& options) {
  if (options.dim == 0) throw InputError("dim must be at least 1");
  if (options.dim > kMaxDimension) throw InputError("dim exceeds " + std::to_string(kMaxDimension));
  if (suite == "all") {
    FuzzReport all;
    all.suite = "all";
    all.field = options.field;
    all.dim = options.dim;
    all.fixed_dim = options.fixed_dim;
    all.seed = options.seed;
    for (const auto& [name, fn] : registry()) {
      FuzzReport part = run_single(name, fn, options);
      all.trials += part.trials;
      all.passes += part.passes;
      for (FuzzFailure f : part.failures) {
        f.assertion = name + ": " + f.assertion;
        all.failures.push_back(std::move(f));
      }
      all.parts.push_back(std::move(part));
    }
    return all;
  }
  for (const auto& [name, fn] : registry()) {
    if (name == suite) return run_single(name, fn, options);
  }
  throw InputError("unknown suite '" + std::string(suite) + "'");
}

nlohmann::json report_to_json(const FuzzReport& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["field"] = field_to_json(report.field);
  j["dim"] = report.dim;
  j["fixed_dim"] = report.fixed_dim;
  j["trials"] = report.trials;
  j["passes"] = report.passes;
  j["seed"] = report.seed;
  j["failures"] = nlohmann::json::array();
  for (const FuzzFailure& f : report.failures) {
    j["failures"].push_back({{"trial", f.trial},
                             {"assertion", f.assertion},
                             {"detail", f.detail},
                             {"input", document_to_json(f.input)},
                             {"replay", f.replay}});
  }
  j["tallies"] = report.tallies;
  if (!report.parts.empty()) {
    j["parts"] = nlohmann::json::array();
    for (const FuzzReport& part : report.parts) j["parts"].push_back(report_to_json(part));
  }
  return j;
}

std::string serialize(const FuzzReport& report) { return report_to_json(report).dump(2) + "\n"; }

}  // namespace ginv
