#pragma once

#include <string>

#include "flatwalk/error.hpp"

namespace flatwalk {

struct GradientBoundInputs {
    double second_moment = 0.0;     // measured or exact second moment of the objective
    double sum_generator_sq = 0.0;  // sum over parameters of squared generator norms
    double h_norm = 0.0;            // upper bound on the observable's operator norm
};

struct GradientInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool consistent() const { return lower <= upper; }
};

struct CappedBound {
    double value = 0.0;
    bool vacuous = false;  // true when the raw formula exceeded 1 and was capped
};

struct BoundReport {
    double lower = 0.0;
    double upper = 0.0;
    std::string lower_formula;
    std::string upper_formula;
    bool vacuous_upper = false;
};

/// Interval for the parameter-averaged squared gradient norm implied by the
/// second moment: [v, 4 * sum_generator_sq * h_norm * sqrt(v)]. Inputs that
/// do not come from an actual landscape can produce an inverted interval;
/// check consistent().
GradientInterval gradient_interval(const GradientBoundInputs& inputs);

/// General coverage lower bound:
/// max{ (1/(q+1))^weight (1/(q^2+1))^crossing_gates, (1/(q+1))^n }.
double coverage_lower_general(int q, int n, int weight, int crossing_gates);

/// General coverage upper bound:
/// (2q/(q+1))^n (2q/(q^2+1))^floor(d/r) q^(-weight) + (q^n+1)^(-1), capped at 1.
CappedBound coverage_upper_general(int q, int n, int weight, int d, int r);

/// 1D brickwork lower bound for supports inside k adjacent sites:
/// max{ (1/(q+1))^k (1/(q^2+1))^(d+1), (1/(q+1))^n }.
double coverage_lower_1d(int q, int n, int k, int d);

/// 1D brickwork upper bound, requiring d >= 2; with n' = min(n, k+2d):
/// (q^n'+1)^(-1) + q^(-weight) (2q/(q^2+1))^(d-1) n' (1 + (2q/(q^2+1))^(d-1))^n',
/// capped at 1.
CappedBound coverage_upper_1d(int q, int n, int k, int weight, int d);

/// Probability bound for the walk ending in the all-S configuration: (q^n+1)^(-1).
double absorption_bound(int q, int n);

BoundReport make_general_report(int q, int n, int weight, int crossing_gates, int d, int r);
BoundReport make_1d_report(int q, int n, int k, int weight, int d);

}  // namespace flatwalk
