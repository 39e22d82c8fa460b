#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "conint/scheme.hpp"

namespace conint {

struct QuantityEvaluator {
    std::string name;
    std::function<double(double t, const PhaseState& x)> eval;
};

struct DriftSample {
    double t;
    double drift;  // psi(t, x) - psi(t0, x0), signed
};

struct QuantityDrift {
    std::string name;
    double initial_value = 0.0;
    double linf_drift = 0.0;  // max over every step, regardless of stride
    std::vector<DriftSample> samples;  // stored every sample_stride steps
};

struct ConservationReport {
    std::vector<QuantityDrift> quantities;

    const QuantityDrift& operator[](const std::string& name) const;
};

// Incremental drift bookkeeping, shared by the in-memory report below and by
// the streaming experiment runner.  Feed step 0 first; it sets the baseline.
class DriftTracker {
public:
    DriftTracker(std::vector<QuantityEvaluator> quantities, std::int64_t sample_stride);

    void observe(std::int64_t step, double t, const PhaseState& x);
    ConservationReport report() const { return report_; }
    const std::vector<QuantityEvaluator>& quantities() const { return quantities_; }

private:
    std::vector<QuantityEvaluator> quantities_;
    std::int64_t stride_;
    ConservationReport report_;
};

ConservationReport conservation_report(const TimeSeries& series,
                                       const std::vector<QuantityEvaluator>& quantities,
                                       std::int64_t sample_stride = 1);

struct ConvergencePoint {
    double tau;
    double error;  // max-norm trajectory error at t_final
};

struct ConvergenceTable {
    std::vector<ConvergencePoint> points;
    double slope = 0.0;          // least-squares fit of log error vs log tau
    double fit_residual = 0.0;   // rms residual of the fit
    bool slope_reliable = false; // false when fewer than 2 points sit above the noise floor
};

// Fit a slope through (log tau, log error); points with error below
// noise_floor are dropped (solver tolerance noise would bias the fit).
ConvergenceTable fit_loglog_slope(std::span<const ConvergencePoint> points,
                                  double noise_floor = 1e-12);

// Raised when a run inside estimate_order fails to converge; carries the
// points gathered so far.
class OrderEstimationError : public SolverError {
public:
    OrderEstimationError(const std::string& msg, ConvergenceTable partial)
        : SolverError(msg), partial_table(std::move(partial)) {}
    ConvergenceTable partial_table;
};

struct AnalyticReference {
    std::function<PhaseState(double t)> solution;
};
struct FineTauReference {
    int factor = 64;  // reference runs at tau/factor
};
using OrderReference = std::variant<AnalyticReference, FineTauReference>;

// Integrates to t_final for each tau (t_final must be an integer number of
// steps) and fits the global-error slope.  Nonconvergence at some tau aborts
// with the partial table attached to the thrown message.
ConvergenceTable estimate_order(const OneStepScheme& scheme, const PhaseState& x0, double t0,
                                double t_final, std::span<const double> taus,
                                const OrderReference& reference, const SolverConfig& config);

// Max-norm of x - Phi^{-tau}(Phi^tau(x)); vanishes (to solver tolerance) for
// symmetric schemes.
double symmetry_check(const OneStepScheme& scheme, const PhaseState& x, double t, double tau,
                      const SolverConfig& config);

}  // namespace conint
