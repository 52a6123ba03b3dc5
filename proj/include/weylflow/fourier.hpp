#pragma once

#include <vector>

#include "weylflow/types.hpp"

namespace weylflow {

/// Smooth periodic function on the unit-period n-torus,
///   f(q) = sum_k a_k cos(2 pi k.q) + b_k sin(2 pi k.q),
/// with derivatives up to second order in closed form.
class FourierField {
public:
    struct Term {
        std::vector<int> wavevector;
        double cos_amplitude = 0.0;
        double sin_amplitude = 0.0;
    };

    FourierField() = default;
    FourierField(int dim, std::vector<Term> terms);

    static FourierField zero(int dim) { return FourierField(dim, {}); }
    static FourierField single(std::vector<int> k, double cos_amp, double sin_amp = 0.0);

    int dim() const { return dim_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_constant() const;

    double value(const Vec& q) const;
    Vec gradient(const Vec& q) const;
    Mat hessian(const Vec& q) const;

    /// Value, gradient and hessian in one pass.
    void evaluate(const Vec& q, double& value, Vec& grad, Mat& hess) const;

private:
    int dim_ = 0;
    std::vector<Term> terms_;
};

}  // namespace weylflow
