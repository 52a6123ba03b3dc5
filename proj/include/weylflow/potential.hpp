#pragma once

#include <variant>

#include "weylflow/fourier.hpp"

namespace weylflow {

/// U(q) = coefficient * ln(q[axis]); a potential on half-space charts whose
/// gradient field has constant norm in the hyperbolic metric.
struct LogHeightPotential {
    int dim = 2;
    int axis = 1;
    double coefficient = 0.0;
};

/// Scalar potential with closed-form derivatives to second order.
class Potential {
public:
    Potential() : impl_(FourierField::zero(1)) {}
    Potential(FourierField f) : impl_(std::move(f)) {}  // NOLINT: implicit by intent
    Potential(LogHeightPotential p) : impl_(p) {}       // NOLINT

    int dim() const;
    void evaluate(const Vec& q, double& value, Vec& grad, Mat& hess) const;
    double value(const Vec& q) const;

    const FourierField* fourier() const { return std::get_if<FourierField>(&impl_); }
    const LogHeightPotential* log_height() const { return std::get_if<LogHeightPotential>(&impl_); }

private:
    std::variant<FourierField, LogHeightPotential> impl_;
};

}  // namespace weylflow
