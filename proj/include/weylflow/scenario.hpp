#pragma once

#include <memory>
#include <string>

#include "weylflow/field.hpp"
#include "weylflow/metric.hpp"

namespace weylflow {

/// A chart-based Weyl manifold: the pair (g, E). The associated 1-form is
/// phi = g(E, .).
class WeylScenario {
public:
    WeylScenario(std::string name, Metric metric, VectorField field);
    WeylScenario(std::string name, std::shared_ptr<const Metric> metric,
                 std::shared_ptr<const VectorField> field);

    const std::string& name() const { return name_; }
    int dim() const { return metric_->dim(); }
    const Metric& metric() const { return *metric_; }
    const VectorField& field() const { return *field_; }
    std::shared_ptr<const Metric> metric_ptr() const { return metric_; }
    std::shared_ptr<const VectorField> field_ptr() const { return field_; }

    ChartDomain domain() const { return metric_->domain(); }
    Vec wrap(const Vec& q) const { return wrap_to_domain(domain(), q); }

    /// Same metric, different field.
    WeylScenario with_field(std::string name, VectorField field) const;

private:
    std::string name_;
    std::shared_ptr<const Metric> metric_;
    std::shared_ptr<const VectorField> field_;
};

/// Cartesian product: block-diagonal metric, concatenated field (E1, E2).
WeylScenario product_scenario(const WeylScenario& first, const WeylScenario& second);

}  // namespace weylflow
