#include "weylflow/scenario.hpp"

#include "weylflow/errors.hpp"

namespace weylflow {

WeylScenario::WeylScenario(std::string name, Metric metric, VectorField field)
    : WeylScenario(std::move(name), std::make_shared<const Metric>(std::move(metric)),
                   std::make_shared<const VectorField>(std::move(field))) {}

WeylScenario::WeylScenario(std::string name, std::shared_ptr<const Metric> metric,
                           std::shared_ptr<const VectorField> field)
    : name_(std::move(name)), metric_(std::move(metric)), field_(std::move(field)) {
    if (!metric_ || !field_) throw ConfigError("scenario needs a metric and a field");
    if (metric_->dim() < 2) throw ConfigError("scenario dimension must be at least 2");
    if (field_->dim() != metric_->dim()) {
        throw ConfigError("field dimension " + std::to_string(field_->dim()) +
                          " does not match metric dimension " + std::to_string(metric_->dim()));
    }
    if (std::holds_alternative<SolLeftInvariantField>(field_->kind()) &&
        !std::holds_alternative<SolMetric>(metric_->family())) {
        throw ConfigError("left-invariant SOL fields require the sol_group metric");
    }
}

WeylScenario WeylScenario::with_field(std::string name, VectorField field) const {
    return WeylScenario(std::move(name), metric_, std::make_shared<const VectorField>(std::move(field)));
}

WeylScenario product_scenario(const WeylScenario& first, const WeylScenario& second) {
    auto metric = std::make_shared<const Metric>(ProductMetric{first.metric_ptr(), second.metric_ptr()});
    const int n = first.dim() + second.dim();
    auto field = std::make_shared<const VectorField>(
        n, ProductField{first.field_ptr(), second.field_ptr(), first.dim()});
    return WeylScenario(first.name() + "_x_" + second.name(), metric, field);
}

}  // namespace weylflow
