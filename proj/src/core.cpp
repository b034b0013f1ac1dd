#include "ginv/core.hpp"

#include <string>
#include <utility>

namespace ginv {

namespace {

void require_square(const Matrix& a, const char* op) {
  if (!a.is_square()) throw DimensionError(std::string(op) + ": matrix is not square");
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": operands differ in shape");
  }
}

void require_nontrivial_idempotent(const Matrix& p, const char* op) {
  require_square(p, op);
  if (!p.is_idempotent()) throw PreconditionError(std::string(op) + ": p is not idempotent");
  if (p.is_zero() || p.is_identity()) {
    throw PreconditionError(std::string(op) + ": p is a trivial idempotent (0 or 1)");
  }
}

std::vector<RankFactorization> cline_chain(const Matrix& a) {
  std::vector<RankFactorization> chain;
  Matrix current = a;
  while (true) {
    RankFactorization f = full_rank_factorization(current);
    Matrix core = f.right * f.left;
    const bool done = f.rank == 0 || is_invertible(core);
    chain.push_back(std::move(f));
    if (done) break;
    current = std::move(core);
  }
  return chain;
}

}  // namespace

bool is_one_inverse(const Matrix& a, const Matrix& x) { return a * x * a == a; }

bool is_reflexive_inverse(const Matrix& a, const Matrix& x) {
  return is_one_inverse(a, x) && x * a * x == x;
}

bool satisfies_group_axioms(const Matrix& a, const Matrix& x) {
  return is_reflexive_inverse(a, x) && a * x == x * a;
}

bool satisfies_drazin_axioms(const Matrix& a, const Matrix& x, std::size_t index) {
  const Matrix ak = a.pow(index);
  return ak * x * a == ak && x * a * x == x && a * x == x * a;
}

std::size_t drazin_index(const Matrix& a) {
  require_square(a, "drazin_index");
  std::size_t previous = a.rows();  // rank(a^0)
  Matrix power = a;
  for (std::size_t k = 0;; ++k) {
    const std::size_t r = rank(power);
    if (r == previous) return k;
    previous = r;
    power = power * a;
  }
}

Matrix one_inverse(const Matrix& a) {
  require_square(a, "one_inverse");
  // With E a = RREF(a), place row j of E at the j-th pivot column index.
  const RowEchelon re = row_reduce(a);
  Matrix b(a.cols(), a.rows(), a.field());
  for (std::size_t j = 0; j < re.pivots.size(); ++j) {
    for (std::size_t c = 0; c < a.rows(); ++c) b(re.pivots[j], c) = re.transform(j, c);
  }
  return b;
}

ReflexiveGinv reflexive_ginv(const Matrix& a) {
  Matrix b = one_inverse(a);
  if (b * a * b != b) b = b * a * b;
  if (!is_reflexive_inverse(a, b)) {
    throw InvariantViolation("reflexive_ginv: {1,2} axioms", {{"a", a}});
  }
  return {std::move(b)};
}

ReflexiveGinv perturbed_reflexive_ginv(const Matrix& a, const ReflexiveGinv& base, const Matrix& w) {
  const Matrix& b = base.value;
  const Matrix one = a.one();
  const Matrix shifted = b + (b.one() - b * a) * w + w * (one - a * b);
  ReflexiveGinv out{shifted * a * shifted};
  if (!is_reflexive_inverse(a, out.value)) {
    throw InvariantViolation("perturbed_reflexive_ginv: {1,2} axioms",
                             {{"a", a}, {"base", b}, {"w", w}});
  }
  return out;
}

std::optional<GroupInverseCertificate> group_inverse(const Matrix& a) {
  require_square(a, "group_inverse");
  RankFactorization f = full_rank_factorization(a);
  const auto core_inv = invert(f.right * f.left);
  if (!core_inv) return std::nullopt;

  GroupInverseCertificate cert;
  cert.inverse = f.left * (*core_inv) * (*core_inv) * f.right;
  cert.index = f.rank == a.rows() ? 0 : 1;
  Audit audit({{"a", a}});
  audit.ensure("group axioms", satisfies_group_axioms(a, cert.inverse));
  cert.checks = audit.take();
  cert.factorization_chain.push_back(std::move(f));
  return cert;
}

Matrix drazin_from_chain(const std::vector<RankFactorization>& chain, std::size_t n, Field field) {
  if (chain.empty()) return Matrix(n, n, field);
  Matrix left = Matrix::identity(n, field);
  Matrix right = Matrix::identity(n, field);
  for (const auto& f : chain) {
    left = left * f.left;
    right = f.right * right;
  }
  const auto& last = chain.back();
  const auto core_inv = invert(last.right * last.left);
  if (!core_inv) {
    throw InvariantViolation("drazin_from_chain: terminal core is singular", {});
  }
  return left * core_inv->pow(chain.size() + 1) * right;
}

GroupInverseCertificate drazin_inverse(const Matrix& a) {
  require_square(a, "drazin_inverse");
  const std::size_t s = drazin_index(a);
  const std::size_t l = s == 0 ? 1 : s;
  Audit audit({{"a", a}});

  const auto power_sharp = group_inverse(a.pow(l));
  audit.ensure("a^l group invertible for l >= ind(a)", power_sharp.has_value());

  GroupInverseCertificate cert;
  cert.inverse = power_sharp->inverse * a.pow(l - 1);
  cert.index = s;
  cert.factorization_chain = cline_chain(a);
  audit.ensure("Drazin axioms", satisfies_drazin_axioms(a, cert.inverse, s));
  cert.oracle_agrees = drazin_from_chain(cert.factorization_chain, a.rows(), a.field()) == cert.inverse;
  audit.ensure("Cline chain agrees", cert.oracle_agrees);
  cert.checks = audit.take();
  return cert;
}

GroupInverseCertificate group_from_reflexive(const Matrix& a, const ReflexiveGinv& a_plus) {
  require_square(a, "group_from_reflexive");
  const Matrix& ap = a_plus.value;
  if (ap.rows() != a.cols() || ap.cols() != a.rows()) {
    throw DimensionError("group_from_reflexive: a_plus has the wrong shape");
  }
  if (!is_reflexive_inverse(a, ap)) {
    throw PreconditionError("group_from_reflexive: a_plus is not a {1,2}-inverse of a");
  }
  Audit audit({{"a", a}, {"aplus", ap}});
  const Matrix one = a.one();
  const Matrix p = ap * a;
  const Matrix q = a * ap;
  const Matrix s = p + q - one;
  const auto s_inv = invert(s);
  audit.require("s = a+a + aa+ - 1 invertible", s_inv.has_value(), "s is singular", {{"s", s}});

  audit.ensure("ps = pq", p * s == p * q);
  audit.ensure("pq = sq", p * q == s * q);
  audit.ensure("qs = qp", q * s == q * p);
  audit.ensure("qp = sp", q * p == s * p);
  audit.ensure("sa = a+a^2", s * a == ap * a * a);

  GroupInverseCertificate cert;
  cert.inverse = ap * (*s_inv) + (one - p) * (*s_inv) * ap * (*s_inv);
  const auto oracle = group_inverse(a);
  cert.oracle_agrees = oracle && oracle->inverse == cert.inverse;
  audit.ensure("equals oracle group inverse", cert.oracle_agrees);
  cert.index = oracle->index;
  cert.factorization_chain = oracle->factorization_chain;
  cert.checks = audit.take();
  return cert;
}

GroupInverseCertificate split_group_inverse(const Matrix& p, const Matrix& a, const Matrix& b) {
  require_nontrivial_idempotent(p, "split_group_inverse");
  require_same_shape(p, a, "split_group_inverse");
  require_same_shape(p, b, "split_group_inverse");
  Audit audit({{"p", p}, {"a", a}, {"b", b}});

  const Matrix one = p.one();
  const Matrix pap = p * a * p;
  const Matrix corner = p * b * (one - p);
  const Matrix x = pap + corner;

  const auto pap_sharp = group_inverse(pap);
  audit.require("pap group invertible", pap_sharp.has_value());
  const Matrix& g = pap_sharp->inverse;
  audit.require("(pap)(pap)^# b(1-p) = pb(1-p)", pap * g * b * (one - p) == corner);

  GroupInverseCertificate cert;
  cert.inverse = g + g * g * corner;
  audit.ensure("group axioms for x", satisfies_group_axioms(x, cert.inverse));
  const auto oracle = group_inverse(x);
  cert.oracle_agrees = oracle && oracle->inverse == cert.inverse;
  audit.ensure("equals oracle group inverse", cert.oracle_agrees);
  cert.index = oracle->index;
  cert.factorization_chain = oracle->factorization_chain;
  cert.checks = audit.take();
  return cert;
}

GroupInverseCertificate split_group_inverse_converse(const Matrix& x, const Matrix& p) {
  require_nontrivial_idempotent(p, "split_group_inverse_converse");
  require_same_shape(p, x, "split_group_inverse_converse");
  const Matrix one = p.one();
  if (!((one - p) * x).is_zero()) {
    throw PreconditionError("split_group_inverse_converse: x is not of the form pap + pb(1-p)");
  }
  Audit audit({{"x", x}, {"p", p}});

  const auto x_sharp = group_inverse(x);
  audit.require("x group invertible", x_sharp.has_value());
  const Matrix& xs = x_sharp->inverse;
  const Matrix pap = p * x * p;
  const Matrix y1 = p * xs * p;

  audit.ensure("(1-p) x^# p = 0", ((one - p) * xs * p).is_zero());
  audit.ensure("(1-p) x^# (1-p) = 0", ((one - p) * xs * (one - p)).is_zero());
  audit.ensure("p x^# p is the group inverse of pap", satisfies_group_axioms(pap, y1));
  audit.ensure("(pap)(pap)^# b(1-p) = pb(1-p)", pap * y1 * x * (one - p) == p * x * (one - p));

  GroupInverseCertificate cert;
  cert.inverse = y1;
  const auto oracle = group_inverse(pap);
  cert.oracle_agrees = oracle && oracle->inverse == y1;
  audit.ensure("equals oracle group inverse of pap", cert.oracle_agrees);
  cert.index = oracle->index;
  cert.factorization_chain = oracle->factorization_chain;
  cert.checks = audit.take();
  return cert;
}

}  // namespace ginv
