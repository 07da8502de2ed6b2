#pragma once

#include <Eigen/Dense>

namespace akm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

} // namespace akm
