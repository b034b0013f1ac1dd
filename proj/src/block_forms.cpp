#include "ginv/block_forms.hpp"

#include <optional>
#include <string>
#include <utility>

namespace ginv {

namespace {

void require_blocks(std::initializer_list<const Matrix*> blocks, const char* op) {
  const Matrix& first = **blocks.begin();
  for (const Matrix* m : blocks) {
    if (!m->is_square() || m->rows() != first.rows()) {
      throw DimensionError(std::string(op) + ": blocks must be square of equal size");
    }
    if (m->field() != first.field()) throw FieldError(std::string(op) + ": blocks over different fields");
  }
}

Matrix assemble(const std::array<Matrix, 4>& blocks) { return block(blocks[0], blocks[1], blocks[2], blocks[3]); }

/// b^#, c^# and k^{-1}, shared by every anti-triangular formula.
struct SharpPair {
  Matrix bs;
  Matrix cs;
  Matrix k;
  Matrix ki;
};

SharpPair sharp_pair(const Matrix& b, const Matrix& c, Audit& audit) {
  const auto bs = group_inverse(b);
  audit.require("b^# exists", bs.has_value(), "b is not group invertible");
  const auto cs = group_inverse(c);
  audit.require("c^# exists", cs.has_value(), "c is not group invertible");
  const Matrix one = b.one();
  Matrix k = bs->inverse * b + cs->inverse * c - one;
  auto ki = invert(k);
  audit.require("k = b^#b + c^#c - 1 invertible", ki.has_value(), "k is singular", {{"k", k}});
  return {bs->inverse, cs->inverse, std::move(k), std::move(*ki)};
}

/// Fills the certificate by checking `blocks` against the oracle on `matrix`.
BlockGroupInverse finish(std::array<Matrix, 4> blocks, Matrix matrix, Audit& audit) {
  BlockGroupInverse out;
  out.certificate.inverse = assemble(blocks);
  audit.ensure("group axioms on the assembly", satisfies_group_axioms(matrix, out.certificate.inverse));
  const auto oracle = group_inverse(matrix);
  out.certificate.oracle_agrees = oracle && oracle->inverse == out.certificate.inverse;
  audit.ensure("equals oracle group inverse of the assembly", out.certificate.oracle_agrees);
  out.certificate.index = oracle->index;
  out.certificate.factorization_chain = oracle->factorization_chain;
  out.certificate.checks = audit.take();
  out.blocks = std::move(blocks);
  out.matrix = std::move(matrix);
  return out;
}

bool compatible(const Matrix& b, const Matrix& bs, const Matrix& c, const Matrix& cs) {
  const Matrix pb = bs * b;
  const Matrix pc = cs * c;
  return pb * pc == pb && pc * pb == pc;
}

}  // namespace

Matrix BlockSpec::assemble() const { return block(d, b, c, Matrix(d.rows(), d.cols(), d.field())); }

BlockGroupInverse anti_diagonal_group_inverse(const Matrix& b, const Matrix& c) {
  require_blocks({&b, &c}, "anti_diagonal_group_inverse");
  Audit audit({{"b", b}, {"c", c}});
  const SharpPair s = sharp_pair(b, c, audit);
  const Matrix zero(b.rows(), b.cols(), b.field());
  const Matrix one = b.one();

  audit.ensure("b b^# k^-1 = k^-1 c c^#", b * s.bs * s.ki == s.ki * c * s.cs);
  std::array<Matrix, 4> blocks{zero, s.ki * s.cs * s.ki, s.ki * s.bs * s.ki, zero};

  const bool compat = compatible(b, s.bs, c, s.cs);
  audit.note("b^#bc^#c = b^#b and c^#cb^#b = c^#c", compat);
  if (compat) {
    audit.ensure("k^-1 = k", s.k * s.k == one);
    audit.ensure("simplified form [0, b^#bc^#; c^#cb^#, 0]",
                 blocks[1] == s.bs * b * s.cs && blocks[2] == s.cs * c * s.bs);
  }
  return finish(std::move(blocks), block(zero, b, c, zero), audit);
}

BlockGroupInverse anti_triangular_group_inverse(const BlockSpec& spec) {
  const Matrix& b = spec.b;
  const Matrix& c = spec.c;
  const Matrix& d = spec.d;
  require_blocks({&d, &b, &c}, "anti_triangular_group_inverse");
  Audit audit({{"d", d}, {"b", b}, {"c", c}});
  const SharpPair s = sharp_pair(b, c, audit);
  const Matrix& ki = s.ki;
  const Matrix& bs = s.bs;
  const Matrix& cs = s.cs;
  const Matrix one = b.one();
  const Matrix zero(b.rows(), b.cols(), b.field());
  const Matrix b_pi = one - b * bs;
  const Matrix c_pi = one - c * cs;

  const bool left_branch = (b_pi * d).is_zero();
  const bool right_branch = (d * c_pi).is_zero();
  audit.note("b^pi d = 0", left_branch);
  audit.note("d c^pi = 0", right_branch);
  if (!left_branch && !right_branch) {
    const bool exists = group_inverse(spec.assemble()).has_value();
    audit.note("assembly group invertible (oracle)", exists);
    audit.require("b^pi d = 0 or d c^pi = 0", false,
                  std::string("neither branch condition holds; the assembly is ") +
                      (exists ? "group invertible" : "not group invertible"));
  }

  // Derivation identities for a = [[0, b], [c, 0]], da = [[d, 0], [0, 0]].
  const Matrix a_sharp = block(zero, ki * cs * ki, ki * bs * ki, zero);
  const Matrix delta = block(d, zero, zero, zero);
  const Matrix one2 = Matrix::identity(2 * b.rows(), b.field());
  audit.ensure("1 + a^# da = [1, 0; k^-1 b^# k^-1 d, 1]",
               one2 + a_sharp * delta == block(one, zero, ki * bs * ki * d, one));
  const Matrix a = block(zero, b, c, zero);
  audit.ensure("a^pi = [-c^pi k^-1, 0; 0, -b^pi k^-1]",
               one2 - a * a_sharp == block(-(c_pi * ki), zero, zero, -(b_pi * ki)));
  audit.ensure("c^# k^-2 b^# = c^# k^-1 b^#", cs * ki * ki * bs == cs * ki * bs);

  const Matrix top_right = ki * cs * ki;
  const Matrix bottom_left = ki * bs * ki;
  const Matrix bottom_right = -(ki * bs * ki * d * ki * cs * ki);
  std::optional<std::array<Matrix, 4>> left_form;
  std::optional<std::array<Matrix, 4>> right_form;
  if (left_branch) {
    const Matrix tail = d * ki * cs * ki * bs * ki * d * c_pi * ki;
    left_form = std::array<Matrix, 4>{-(ki * cs * ki * bs * ki * d * c_pi * ki), top_right,
                                      bottom_left * (one + tail), bottom_right};
  }
  if (right_branch) {
    const Matrix head = ki * b_pi * d * ki * cs * ki * bs * ki * d;
    right_form = std::array<Matrix, 4>{-(ki * b_pi * d * ki * cs * ki * bs * ki), (one + head) * top_right,
                                       bottom_left, bottom_right};
  }
  if (left_form && right_form) {
    audit.ensure("both branch formulas agree", *left_form == *right_form);
  }
  return finish(left_form ? std::move(*left_form) : std::move(*right_form), spec.assemble(), audit);
}

BlockGroupInverse simplified_anti_triangular(const BlockSpec& spec) {
  const Matrix& b = spec.b;
  const Matrix& c = spec.c;
  const Matrix& d = spec.d;
  require_blocks({&d, &b, &c}, "simplified_anti_triangular");
  Audit audit({{"d", d}, {"b", b}, {"c", c}});
  const auto bs_opt = group_inverse(b);
  audit.require("b^# exists", bs_opt.has_value(), "b is not group invertible");
  const auto cs_opt = group_inverse(c);
  audit.require("c^# exists", cs_opt.has_value(), "c is not group invertible");
  const Matrix& bs = bs_opt->inverse;
  const Matrix& cs = cs_opt->inverse;
  audit.require("b^#bc^#c = b^#b", bs * b * cs * c == bs * b);
  audit.require("c^#cb^#b = c^#c", cs * c * bs * b == cs * c);

  const Matrix one = b.one();
  const Matrix b_pi = one - b * bs;
  const Matrix c_pi = one - c * cs;
  const bool left_branch = (b_pi * d).is_zero();
  const bool right_branch = (d * c_pi).is_zero();
  audit.note("b^pi d = 0", left_branch);
  audit.note("d c^pi = 0", right_branch);
  audit.require("b^pi d = 0 or d c^pi = 0", left_branch || right_branch, "neither branch condition holds");

  const Matrix bbc = bs * b * cs;  // b^# b c^#
  const Matrix ccb = cs * c * bs;  // c^# c b^#
  const Matrix bottom_right = -(ccb * d * bbc);
  std::optional<std::array<Matrix, 4>> left_form;
  std::optional<std::array<Matrix, 4>> right_form;
  if (left_branch) {
    const Matrix corner = bbc * bs * d * b_pi;
    left_form = std::array<Matrix, 4>{corner, bbc, ccb * (one - d * corner), bottom_right};
  }
  if (right_branch) {
    const Matrix corner = b_pi * d * bbc * bs;
    right_form = std::array<Matrix, 4>{corner, (one - corner * d) * bbc, ccb, bottom_right};
  }
  if (left_form && right_form) {
    audit.ensure("both branch formulas agree", *left_form == *right_form);
  }
  std::array<Matrix, 4> blocks = left_form ? std::move(*left_form) : std::move(*right_form);

  const BlockGroupInverse general = anti_triangular_group_inverse(spec);
  audit.ensure("agrees with the k-dependent form", general.blocks == blocks);
  return finish(std::move(blocks), spec.assemble(), audit);
}

BlockGroupInverse star_idempotent_group_inverse(const Matrix& p, StarVariant variant) {
  if (!p.is_square()) throw DimensionError("star_idempotent_group_inverse: p is not square");
  if (!p.is_idempotent()) throw PreconditionError("star_idempotent_group_inverse: p is not idempotent");
  if (p.is_zero()) throw PreconditionError("star_idempotent_group_inverse: p is zero");
  Audit audit({{"p", p}});
  const Matrix one = p.one();
  const Matrix zero(p.rows(), p.cols(), p.field());
  const Matrix ps = p.transpose();
  const Matrix pps = p * ps;
  const Matrix psp = ps * p;

  if (variant == StarVariant::PPStar) {
    std::array<Matrix, 4> blocks{pps * (one - p), p, p - pps * pps * (one - p), -(pps * p)};
    return finish(std::move(blocks), block(pps, p, p, zero), audit);
  }
  std::array<Matrix, 4> blocks{(one - p) * psp, p - (one - p) * psp * psp, p, -(pps * p)};
  return finish(std::move(blocks), block(psp, p, p, zero), audit);
}

}  // namespace ginv
