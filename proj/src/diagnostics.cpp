#include "conint/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace conint {

const QuantityDrift& ConservationReport::operator[](const std::string& name) const {
    for (const auto& q : quantities)
        if (q.name == name) return q;
    throw std::out_of_range("ConservationReport: no quantity named " + name);
}

DriftTracker::DriftTracker(std::vector<QuantityEvaluator> quantities,
                           std::int64_t sample_stride)
    : quantities_(std::move(quantities)), stride_(sample_stride) {
    if (stride_ < 1) throw std::invalid_argument("DriftTracker: sample_stride must be >= 1");
    report_.quantities.resize(quantities_.size());
    for (std::size_t q = 0; q < quantities_.size(); ++q)
        report_.quantities[q].name = quantities_[q].name;
}

void DriftTracker::observe(std::int64_t step, double t, const PhaseState& x) {
    for (std::size_t q = 0; q < quantities_.size(); ++q) {
        double value;
        try {
            value = quantities_[q].eval(t, x);
        } catch (const std::domain_error& e) {
            throw std::domain_error("evaluating " + quantities_[q].name + " at step " +
                                    std::to_string(step) + ": " + e.what());
        }
        QuantityDrift& drift = report_.quantities[q];
        if (step == 0) {
            drift.initial_value = value;
            drift.linf_drift = 0.0;
            drift.samples.assign(1, {t, 0.0});
            continue;
        }
        const double d = value - drift.initial_value;
        drift.linf_drift = std::max(drift.linf_drift, std::abs(d));
        if (step % stride_ == 0) drift.samples.push_back({t, d});
    }
}

ConservationReport conservation_report(const TimeSeries& series,
                                       const std::vector<QuantityEvaluator>& quantities,
                                       std::int64_t sample_stride) {
    if (series.records.empty())
        throw std::invalid_argument("conservation_report: empty time series");
    DriftTracker tracker(quantities, sample_stride);
    for (std::size_t k = 0; k < series.records.size(); ++k)
        tracker.observe(static_cast<std::int64_t>(k), series.records[k].t,
                        series.records[k].state);
    return tracker.report();
}

ConvergenceTable fit_loglog_slope(std::span<const ConvergencePoint> points,
                                  double noise_floor) {
    ConvergenceTable table;
    table.points.assign(points.begin(), points.end());

    std::vector<double> lx, ly;
    for (const auto& p : points) {
        if (!(p.error > noise_floor)) continue;
        lx.push_back(std::log(p.tau));
        ly.push_back(std::log(p.error));
    }
    if (lx.size() < 2) {
        table.slope = std::numeric_limits<double>::quiet_NaN();
        table.slope_reliable = false;
        return table;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    table.slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (my + table.slope * (lx[i] - mx));
        ss += r * r;
    }
    table.fit_residual = std::sqrt(ss / static_cast<double>(lx.size()));
    table.slope_reliable = true;
    return table;
}

namespace {

std::int64_t steps_for(double t_final, double t0, double tau) {
    const double exact = (t_final - t0) / tau;
    const auto steps = static_cast<std::int64_t>(std::llround(exact));
    if (steps < 1 || std::abs(exact - static_cast<double>(steps)) > 1e-9)
        throw std::invalid_argument("estimate_order: t_final - t0 must be a whole number of "
                                    "steps of tau");
    return steps;
}

}  // namespace

ConvergenceTable estimate_order(const OneStepScheme& scheme, const PhaseState& x0, double t0,
                                double t_final, std::span<const double> taus,
                                const OrderReference& reference, const SolverConfig& config) {
    if (taus.size() < 3)
        throw std::invalid_argument("estimate_order: need at least 3 tau values");
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (!(taus[i] < taus[i - 1]))
            throw std::invalid_argument("estimate_order: taus must be strictly decreasing");
    if (const auto* fine = std::get_if<FineTauReference>(&reference))
        if (fine->factor < 16)
            throw std::invalid_argument("estimate_order: fine-tau factor must be >= 16");

    std::vector<ConvergencePoint> points;
    for (double tau : taus) {
        try {
            const std::int64_t steps = steps_for(t_final, t0, tau);
            TimeSeries run = integrate(scheme, x0, t0, tau, steps, config);
            PhaseState ref;
            if (const auto* analytic = std::get_if<AnalyticReference>(&reference)) {
                ref = analytic->solution(run.records.back().t);
            } else {
                const auto& fine = std::get<FineTauReference>(reference);
                TimeSeries ref_run =
                    integrate(scheme, x0, t0, tau / fine.factor, steps * fine.factor, config);
                ref = ref_run.records.back().state;
            }
            points.push_back({tau, max_abs_diff(run.records.back().state, ref)});
        } catch (const SolverError& e) {
            throw OrderEstimationError("estimate_order: run at tau=" + std::to_string(tau) +
                                           " failed: " + e.what(),
                                       fit_loglog_slope(points));
        }
    }
    return fit_loglog_slope(points);
}

double symmetry_check(const OneStepScheme& scheme, const PhaseState& x, double t, double tau,
                      const SolverConfig& config) {
    StepResult forward = solve_step(scheme, x, t, tau, config);
    StepResult back = solve_step(scheme, forward.state, t + tau, -tau, config);
    return max_abs_diff(back.state, x);
}

}  // namespace conint
