#pragma once

#include <Eigen/Core>

namespace gnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace gnet
