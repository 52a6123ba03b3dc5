#pragma once

#include <sstream>
#include <string>

#include <Eigen/Dense>

namespace weylflow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// "(x, y, ...)" at full precision, for error messages.
inline std::string point_string(const Vec& q) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (int i = 0; i < q.size(); ++i) os << (i ? ", " : "") << q[i];
    os << ")";
    return os.str();
}

}  // namespace weylflow
