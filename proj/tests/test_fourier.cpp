#include <gtest/gtest.h>

#include "oracles.hpp"
#include "weylflow/errors.hpp"
#include "weylflow/fourier.hpp"
#include "weylflow/potential.hpp"
#include "weylflow/rng.hpp"

using namespace weylflow;

namespace {

FourierField sample_field() {
    return FourierField(3, {{{1, 0, 0}, 0.3, -0.2}, {{1, -2, 1}, 0.05, 0.11}, {{0, 1, 3}, -0.07, 0.0}});
}

}  // namespace

TEST(FourierField, DerivativesMatchCentralDifferences) {
    const FourierField f = sample_field();
    CounterRng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Vec q(3);
        for (int i = 0; i < 3; ++i) q[i] = rng.uniform();
        double v;
        Vec grad;
        Mat hess;
        f.evaluate(q, v, grad, hess);
        EXPECT_DOUBLE_EQ(v, f.value(q));
        for (int k = 0; k < 3; ++k) {
            const double fd = oracle::richardson_derivative([&](const Vec& p) { return f.value(p); }, q, k);
            EXPECT_NEAR(grad[k], fd, 1e-6 * std::max(1.0, std::abs(fd)));
            const Vec fd2 = oracle::richardson_derivative([&](const Vec& p) -> Vec { return f.gradient(p); }, q, k);
            for (int l = 0; l < 3; ++l) {
                EXPECT_NEAR(hess(l, k), fd2[l], 1e-6 * std::max(1.0, std::abs(fd2[l])));
            }
        }
    }
}

TEST(FourierField, EvaluationIsDeterministic) {
    const FourierField f = sample_field();
    Vec q(3);
    q << 0.123, 0.456, 0.789;
    const double a = f.value(q);
    const double b = f.value(q);
    EXPECT_EQ(a, b);
}

TEST(FourierField, ConstantDetection) {
    EXPECT_TRUE(FourierField::zero(2).is_constant());
    EXPECT_TRUE(FourierField::single({0, 0}, 4.0).is_constant());
    EXPECT_FALSE(FourierField::single({1, 0}, 0.3).is_constant());
}

TEST(FourierField, RejectsWavevectorOfWrongLength) {
    EXPECT_THROW(FourierField(2, {{{1, 0, 0}, 1.0, 0.0}}), ConfigError);
}

TEST(Potential, LogHeightDerivatives) {
    const Potential u(LogHeightPotential{2, 1, 0.4});
    Vec q(2);
    q << 0.3, 1.7;
    double v;
    Vec g;
    Mat h;
    u.evaluate(q, v, g, h);
    EXPECT_DOUBLE_EQ(v, 0.4 * std::log(1.7));
    EXPECT_DOUBLE_EQ(g[1], 0.4 / 1.7);
    EXPECT_DOUBLE_EQ(h(1, 1), -0.4 / (1.7 * 1.7));
    q[1] = -1.0;
    EXPECT_THROW(u.evaluate(q, v, g, h), DomainError);
}
