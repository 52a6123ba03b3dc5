#include "weylflow/fourier.hpp"

#include <cmath>
#include <numbers>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FourierField::FourierField(int dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms)) {
    if (dim_ < 1) throw ConfigError("FourierField: dimension must be positive");
    for (const auto& t : terms_) {
        if (static_cast<int>(t.wavevector.size()) != dim_) {
            throw ConfigError("FourierField: wavevector length " +
                              std::to_string(t.wavevector.size()) + " does not match dimension " +
                              std::to_string(dim_));
        }
    }
}

FourierField FourierField::single(std::vector<int> k, double cos_amp, double sin_amp) {
    const int n = static_cast<int>(k.size());
    return FourierField(n, {Term{std::move(k), cos_amp, sin_amp}});
}

bool FourierField::is_constant() const {
    for (const auto& t : terms_) {
        bool zero_k = true;
        for (int c : t.wavevector) zero_k = zero_k && c == 0;
        if (!zero_k && (t.cos_amplitude != 0.0 || t.sin_amplitude != 0.0)) return false;
    }
    return true;
}

void FourierField::evaluate(const Vec& q, double& value, Vec& grad, Mat& hess) const {
    value = 0.0;
    grad = Vec::Zero(dim_);
    hess = Mat::Zero(dim_, dim_);
    Vec k(dim_);
    for (const auto& t : terms_) {
        for (int i = 0; i < dim_; ++i) k[i] = kTwoPi * t.wavevector[i];
        const double arg = k.dot(q);
        const double c = std::cos(arg);
        const double s = std::sin(arg);
        const double f = t.cos_amplitude * c + t.sin_amplitude * s;
        const double df = -t.cos_amplitude * s + t.sin_amplitude * c;
        value += f;
        grad += df * k;
        hess -= f * (k * k.transpose());
    }
}

double FourierField::value(const Vec& q) const {
    double v = 0.0;
    for (const auto& t : terms_) {
        double arg = 0.0;
        for (int i = 0; i < dim_; ++i) arg += kTwoPi * t.wavevector[i] * q[i];
        v += t.cos_amplitude * std::cos(arg) + t.sin_amplitude * std::sin(arg);
    }
    return v;
}

Vec FourierField::gradient(const Vec& q) const {
    double v;
    Vec g;
    Mat h;
    evaluate(q, v, g, h);
    return g;
}

Mat FourierField::hessian(const Vec& q) const {
    double v;
    Vec g;
    Mat h;
    evaluate(q, v, g, h);
    return h;
}

}  // namespace weylflow
