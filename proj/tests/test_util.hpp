#pragma once

#include <Eigen/Dense>

namespace testutil {

// Largest entry magnitude, for residual checks on small dense matrices.
inline double max_abs(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace testutil
