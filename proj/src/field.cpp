#include "weylflow/field.hpp"

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// d_m g^{-1} = -g^{-1} (d_m g) g^{-1}
std::vector<Mat> inverse_derivatives(const Mat& ginv, const MetricJet& jet) {
    std::vector<Mat> out;
    out.reserve(jet.first.size());
    for (const auto& dg : jet.first) out.push_back(-ginv * dg * ginv);
    return out;
}

FieldJet from_vector(const Vec& e, const Mat& de, const MetricJet& jet) {
    const int n = static_cast<int>(e.size());
    FieldJet f;
    f.vector = e;
    f.d_vector = de;
    f.form = jet.g * e;
    f.d_form = jet.g * de;
    for (int m = 0; m < n; ++m) f.d_form.col(m) += jet.first[m] * e;
    return f;
}

FieldJet from_form(const Vec& phi, const Mat& dphi, const MetricJet& jet) {
    const int n = static_cast<int>(phi.size());
    const Mat ginv = jet.g.inverse();
    const auto dginv = inverse_derivatives(ginv, jet);
    FieldJet f;
    f.form = phi;
    f.d_form = dphi;
    f.vector = ginv * phi;
    f.d_vector = ginv * dphi;
    for (int m = 0; m < n; ++m) f.d_vector.col(m) += dginv[m] * phi;
    return f;
}

MetricJet sub_jet(const MetricJet& jet, int offset, int size) {
    MetricJet s;
    s.order = std::min(jet.order, 1);
    s.g = jet.g.block(offset, offset, size, size);
    if (jet.order >= 1) {
        for (int k = 0; k < size; ++k) {
            s.first.push_back(jet.first[offset + k].block(offset, offset, size, size));
        }
    }
    return s;
}

}  // namespace

VectorField::VectorField(int dim, Kind kind) : dim_(dim), kind_(std::move(kind)) {
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError("vector field: " + msg);
    };
    std::visit(Overloaded{
                   [&](const ConstantField& f) {
                       require(f.components.size() == dim_, "constant components length mismatch");
                   },
                   [&](const GradientField& f) {
                       require(f.potential.dim() == dim_, "potential dimension mismatch");
                   },
                   [&](const FourierVectorField& f) {
                       require(static_cast<int>(f.components.size()) == dim_,
                               "fourier component count mismatch");
                       for (const auto& c : f.components) {
                           require(c.dim() == dim_, "fourier component dimension mismatch");
                       }
                   },
                   [&](const ClosedOneFormField& f) {
                       require(f.covector.size() == dim_, "covector length mismatch");
                   },
                   [&](const SolLeftInvariantField& f) {
                       require(dim_ == 3 && f.coefficients.size() == 3,
                               "left-invariant SOL field needs three coefficients");
                   },
                   [&](const ProductField& f) {
                       require(f.first && f.second, "product field needs two factors");
                       require(f.first->dim() + f.second->dim() == dim_ &&
                                   f.first_dim == f.first->dim(),
                               "product field dimension mismatch");
                   },
                   [&](const ReducedField& f) {
                       require(f.base && f.base->dim() == dim_ && f.potential.dim() == dim_,
                               "reduced field dimension mismatch");
                   },
               },
               kind_);
}

std::string VectorField::kind_name() const {
    return std::visit(Overloaded{
                          [](const ConstantField&) { return std::string("constant"); },
                          [](const GradientField&) { return std::string("gradient_of_potential"); },
                          [](const FourierVectorField&) { return std::string("fourier"); },
                          [](const ClosedOneFormField&) { return std::string("closed_one_form"); },
                          [](const SolLeftInvariantField&) { return std::string("sol_left_invariant"); },
                          [](const ProductField&) { return std::string("product"); },
                          [](const ReducedField&) { return std::string("reduced"); },
                      },
                      kind_);
}

bool VectorField::identically_zero() const {
    if (const auto* c = std::get_if<ConstantField>(&kind_)) return c->components.isZero(0.0);
    if (const auto* c = std::get_if<ClosedOneFormField>(&kind_)) return c->covector.isZero(0.0);
    if (const auto* c = std::get_if<SolLeftInvariantField>(&kind_)) return c->coefficients.isZero(0.0);
    if (const auto* g = std::get_if<GradientField>(&kind_)) {
        const auto* f = g->potential.fourier();
        return f && f->is_constant();
    }
    if (const auto* p = std::get_if<ProductField>(&kind_)) {
        return p->first->identically_zero() && p->second->identically_zero();
    }
    return false;
}

FieldJet VectorField::evaluate(const Vec& q, const MetricJet& jet) const {
    if (jet.order < 1) throw ConfigError("field evaluation needs first metric derivatives");
    const int n = dim_;
    return std::visit(
        Overloaded{
            [&](const ConstantField& f) {
                return from_vector(f.components, Mat::Zero(n, n), jet);
            },
            [&](const GradientField& f) {
                double u;
                Vec du;
                Mat d2u;
                f.potential.evaluate(q, u, du, d2u);
                return from_form(-du, -d2u, jet);
            },
            [&](const FourierVectorField& f) {
                Vec e(n);
                Mat de(n, n);
                for (int k = 0; k < n; ++k) {
                    double v;
                    Vec g;
                    Mat h;
                    f.components[k].evaluate(q, v, g, h);
                    e[k] = v;
                    de.row(k) = g.transpose();
                }
                return from_vector(e, de, jet);
            },
            [&](const ClosedOneFormField& f) { return from_form(f.covector, Mat::Zero(n, n), jet); },
            [&](const SolLeftInvariantField& f) {
                const double z = q[2];
                const double em = std::exp(-z);
                const double ep = std::exp(z);
                Vec e(3);
                e << f.coefficients[0] * em, f.coefficients[1] * ep, f.coefficients[2];
                Mat de = Mat::Zero(3, 3);
                de(0, 2) = -f.coefficients[0] * em;
                de(1, 2) = f.coefficients[1] * ep;
                return from_vector(e, de, jet);
            },
            [&](const ProductField& f) {
                const int n1 = f.first_dim;
                const int n2 = n - n1;
                const FieldJet a = f.first->evaluate(q.head(n1), sub_jet(jet, 0, n1));
                const FieldJet b = f.second->evaluate(q.tail(n2), sub_jet(jet, n1, n2));
                Vec e(n);
                e << a.vector, b.vector;
                Mat de = Mat::Zero(n, n);
                de.block(0, 0, n1, n1) = a.d_vector;
                de.block(n1, n1, n2, n2) = b.d_vector;
                return from_vector(e, de, jet);
            },
            [&](const ReducedField& f) {
                double w;
                Vec dw;
                Mat d2w;
                f.potential.evaluate(q, w, dw, d2w);
                const double gap = f.energy - w;
                if (!(gap > 0.0)) {
                    throw InvalidLevelError("h - W = " + std::to_string(gap) +
                                            " is not positive; the energy level is invalid");
                }
                const FieldJet base = f.base->evaluate(q, jet);
                const Mat ginv = jet.g.inverse();
                const auto dginv = inverse_derivatives(ginv, jet);
                const Vec grad_w = ginv * dw;
                const Vec num = -grad_w + base.vector;
                Mat dnum = -ginv * d2w + base.d_vector;
                for (int m = 0; m < n; ++m) dnum.col(m) -= dginv[m] * dw;
                const double denom = 2.0 * gap;
                Vec e = num / denom;
                // d_m (1 / 2(h - W)) = 2 d_m W / (2(h - W))^2
                Mat de = dnum / denom;
                for (int m = 0; m < n; ++m) de.col(m) += num * (2.0 * dw[m] / (denom * denom));
                return from_vector(e, de, jet);
            },
        },
        kind_);
}

}  // namespace weylflow
