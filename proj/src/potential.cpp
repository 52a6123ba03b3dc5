#include "weylflow/potential.hpp"

#include <cmath>

#include "weylflow/errors.hpp"

namespace weylflow {

int Potential::dim() const {
    return std::visit(
        [](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, FourierField>) {
                return p.dim();
            } else {
                return p.dim;
            }
        },
        impl_);
}

void Potential::evaluate(const Vec& q, double& value, Vec& grad, Mat& hess) const {
    if (const auto* f = fourier()) {
        f->evaluate(q, value, grad, hess);
        return;
    }
    const auto& p = *log_height();
    const double h = q[p.axis];
    if (!(h > 0.0)) {
        throw DomainError("log-height potential evaluated at non-positive height " +
                          std::to_string(h));
    }
    const int n = static_cast<int>(q.size());
    value = p.coefficient * std::log(h);
    grad = Vec::Zero(n);
    hess = Mat::Zero(n, n);
    grad[p.axis] = p.coefficient / h;
    hess(p.axis, p.axis) = -p.coefficient / (h * h);
}

double Potential::value(const Vec& q) const {
    if (const auto* f = fourier()) return f->value(q);
    double v;
    Vec g;
    Mat h;
    evaluate(q, v, g, h);
    return v;
}

}  // namespace weylflow
