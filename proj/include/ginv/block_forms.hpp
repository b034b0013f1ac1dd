#pragma once

#include <array>

#include "ginv/core.hpp"

namespace ginv {

/// Blocks of the anti-triangular matrix [[d, b], [c, 0]]; all n x n.
struct BlockSpec {
  Matrix d;
  Matrix b;
  Matrix c;

  Matrix assemble() const;
};

/// Group inverse of a 2n x 2n block matrix, given both blockwise and
/// assembled. `certificate.inverse` is the assembled form of `blocks`.
struct BlockGroupInverse {
  std::array<Matrix, 4> blocks;  // top-left, top-right, bottom-left, bottom-right
  Matrix matrix;                 // the assembled input
  GroupInverseCertificate certificate;
};

enum class StarVariant { PPStar, PStarP };

/// [[0, b], [c, 0]]^# = [[0, k^-1 c^# k^-1], [k^-1 b^# k^-1, 0]] with
/// k = b^# b + c^# c - 1 invertible.
BlockGroupInverse anti_diagonal_group_inverse(const Matrix& b, const Matrix& c);

/// [[d, b], [c, 0]]^# when b^#, c^# exist, k is invertible and
/// b^pi d = 0 or d c^pi = 0. Throws HypothesisNotMet when neither branch
/// condition holds, even if the assembly is group invertible.
BlockGroupInverse anti_triangular_group_inverse(const BlockSpec& spec);

/// k-free form valid when b^# b c^# c = b^# b and c^# c b^# b = c^# c.
BlockGroupInverse simplified_anti_triangular(const BlockSpec& spec);

/// [[p p*, p], [p, 0]]^# or [[p* p, p], [p, 0]]^# for a nonzero idempotent p,
/// with * the transpose.
BlockGroupInverse star_idempotent_group_inverse(const Matrix& p, StarVariant variant);

}  // namespace ginv
