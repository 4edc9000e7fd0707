#pragma once

#include <cmath>

#include "ramsey/matrix.hpp"
#include "ramsey/model.hpp"

namespace ramsey::testing {

// Published values for the NKPC example at the default calibration.
inline const Matrix kGoldenP{{1.7518055, -1.1389181}, {-1.1389181, 3.4285107}};
inline constexpr double kGoldenWelfare = -2.688;
inline constexpr double kGoldenAnchor = 0.6504;
inline constexpr double kGoldenNaive = 0.74;

/// Scalar y, scalar z problem with the given entries.
inline AugmentedLQProblem scalar_problem(double a_yy, double a_yz, double a_zz,
                                         double b, double q_yy, double q_yz,
                                         double q_zz, double r, double beta,
                                         std::size_t n_k = 0) {
  ProblemBlocks blk{Matrix::scalar(a_yy), Matrix::scalar(a_yz), Matrix::scalar(a_zz),
                    Matrix::scalar(b),    Matrix::scalar(q_yy), Matrix::scalar(q_yz),
                    Matrix::scalar(q_zz), Matrix::scalar(r)};
  return build_problem(std::move(blk), beta, Partition{n_k, 1 - n_k, 1, 1});
}

}  // namespace ramsey::testing
