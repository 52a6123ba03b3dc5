#include "weylflow/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "cointegrate.hpp"
#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

bool chart_is_compact(const WeylScenario& s) {
    const ChartDomain d = s.domain();
    for (const auto& p : d.periods) {
        if (!p) return false;
    }
    return true;
}

Vec sorted_descending(Vec x) {
    std::sort(x.data(), x.data() + x.size(), [](double a, double b) { return a > b; });
    return x;
}

}  // namespace

LyapunovReport lyapunov_spectrum(const Flow& flow, const PhaseState& initial, const LyapunovOptions& opt) {
    if (!(opt.dt > 0.0) || !(opt.T >= opt.dt)) throw ConfigError("Lyapunov run needs dt > 0 and T >= dt");
    if (opt.renorm_every < 1) throw ConfigError("renorm_every must be at least 1");
    const int n = flow.scenario().dim();
    const int m = 2 * (n - 1);
    const long steps = static_cast<long>(std::ceil(opt.T / opt.dt - 1e-9));
    const long window = opt.window_steps > 0 ? opt.window_steps : std::max(1L, steps / 100);

    detail::CoState s = detail::co_initial(flow, initial, m);
    s.xi.leftCols(n - 1) = Mat::Identity(n - 1, n - 1);
    s.chi.rightCols(n - 1) = Mat::Identity(n - 1, n - 1);

    LyapunovReport rep;
    rep.dim = n;
    rep.T = static_cast<double>(steps) * opt.dt;
    rep.dt = opt.dt;
    rep.renorm_every = opt.renorm_every;
    rep.seed = opt.seed;
    rep.finite_time = !chart_is_compact(flow.scenario());

    Vec log_sum = Vec::Zero(m);
    double margin_sum = 0.0, window_margin = 0.0;
    long window_count = 0;
    rep.jsep_margin_min = std::numeric_limits<double>::infinity();

    auto margin_here = [&]() {
        const LocalGeometry geo = evaluate_geometry(flow.scenario(), s.base.q, GeometryOrder::Curvature);
        return jseparation_margin(quotient_curvature(geo, s.base.v, s.frame));
    };

    const bool recentring = detail::admits_recentring(flow.scenario());
    for (long i = 1; i <= steps; ++i) {
        try {
            s = detail::co_step(flow, s, opt.dt);
        } catch (const IntegrationError& e) {
            throw IntegrationError(std::string(e.what()) + " at step " + std::to_string(i));
        }
        s.base.t = initial.t + static_cast<double>(i) * opt.dt;
        if (!s.xi.allFinite() || !s.chi.allFinite()) {
            throw OverflowError("non-finite tangent growth at step " + std::to_string(i));
        }
        if (i % opt.renorm_every == 0 || i == steps) {
            if (recentring) detail::recentre(s);
            reorthonormalize(flow.scenario().metric().g(s.base.q), s.base.v, s.frame);
            Mat y(m, m);
            y.topRows(n - 1) = s.xi;
            y.bottomRows(n - 1) = s.chi;
            const Eigen::HouseholderQR<Mat> qr(y);
            const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
            Mat q = qr.householderQ() * Mat::Identity(m, m);
            for (int k = 0; k < m; ++k) {
                const double rk = r(k, k);
                if (!(std::abs(rk) > 0.0) || !std::isfinite(rk)) {
                    throw OverflowError("tangent block lost rank at step " + std::to_string(i));
                }
                log_sum[k] += std::log(std::abs(rk));
                if (rk < 0) q.col(k) = -q.col(k);
            }
            s.xi = q.topRows(n - 1);
            s.chi = q.bottomRows(n - 1);
            const double mg = margin_here();
            margin_sum += mg;
            window_margin += mg;
            ++window_count;
            rep.jsep_margin_min = std::min(rep.jsep_margin_min, mg);
        }
        if (i % window == 0 || i == steps) {
            const double t = static_cast<double>(i) * opt.dt;
            rep.windows.push_back({t, sorted_descending(log_sum / t), -s.phi_int / t,
                                   window_count > 0 ? window_margin / static_cast<double>(window_count) : 0.0});
            window_margin = 0.0;
            window_count = 0;
        }
    }
    const long renorms = (steps / opt.renorm_every) + (steps % opt.renorm_every ? 1 : 0);
    rep.exponents = sorted_descending(log_sum / rep.T);
    rep.s_bar = -s.phi_int / rep.T;
    rep.jsep_margin_mean = margin_sum / static_cast<double>(renorms);
    rep.pairing_residual = pairing_check(rep);
    rep.trace_residual = trace_check(rep);
    std::tie(rep.growth_rate, rep.decay_rate) = splitting_volume_rates(rep);
    rep.final_state = s.base;
    return rep;
}

double pairing_check(const LyapunovReport& rep) {
    const long m = rep.exponents.size();
    double worst = 0.0;
    for (long i = 0; i < m / 2; ++i) {
        worst = std::max(worst, std::abs(rep.exponents[i] + rep.exponents[m - 1 - i] - rep.s_bar));
    }
    return worst;
}

double trace_check(const LyapunovReport& rep) {
    return std::abs(rep.exponents.sum() - static_cast<double>(rep.dim - 1) * rep.s_bar);
}

std::pair<double, double> splitting_volume_rates(const LyapunovReport& rep) {
    const long half = rep.exponents.size() / 2;
    return {rep.exponents.head(half).sum(), rep.exponents.tail(half).sum()};
}

}  // namespace weylflow
