// eigen_solve.hpp - general complex eigensolver with a retry path

#pragma once

#include "wgqed/types.hpp"

namespace wgqed {

struct EigenResult {
    CVector values;
    CMatrix vectors;  // empty unless requested
};

/// Eigen's ComplexSchur can fail to converge on exactly rank-one inputs (all
/// entries equal). On failure the matrix is retried with a diagonal shift,
/// which leaves the eigenvectors unchanged. Throws Degenerate if every attempt fails.
EigenResult eigen_solve(const CMatrix& g, bool vectors);

}  // namespace wgqed
