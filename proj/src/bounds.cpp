#include "flatwalk/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace flatwalk {

namespace {

void check_sites(int q, int n) {
    if (q < 2) throw DomainError("local dimension q must be at least 2");
    if (n < 1) throw DomainError("site count must be positive");
}

CappedBound cap(double raw) {
    if (raw > 1.0) return {1.0, true};
    return {raw, false};
}

}  // namespace

GradientInterval gradient_interval(const GradientBoundInputs& inputs) {
    if (inputs.second_moment < 0.0 || inputs.sum_generator_sq < 0.0 || inputs.h_norm < 0.0)
        throw DomainError("gradient interval inputs must be nonnegative");
    const double v = inputs.second_moment;
    return {v, 4.0 * inputs.sum_generator_sq * inputs.h_norm * std::sqrt(v)};
}

double coverage_lower_general(int q, int n, int weight, int crossing_gates) {
    check_sites(q, n);
    if (weight < 1 || weight > n) throw DomainError("weight must lie in [1, n]");
    if (crossing_gates < 0) throw DomainError("crossing gate count must be nonnegative");
    const double qd = static_cast<double>(q);
    const double survive = std::pow(1.0 / (qd + 1.0), weight) *
                           std::pow(1.0 / (qd * qd + 1.0), crossing_gates);
    const double all_s_start = std::pow(1.0 / (qd + 1.0), n);
    return std::max(survive, all_s_start);
}

CappedBound coverage_upper_general(int q, int n, int weight, int d, int r) {
    check_sites(q, n);
    if (weight < 1) throw DomainError("weight must be at least 1");
    if (d < 1) throw DomainError("depth must be at least 1");
    if (r < 1) throw DomainError("regular connectivity must be at least 1");
    const double qd = static_cast<double>(q);
    const double decay = std::pow(2.0 * qd / (qd + 1.0), n) *
                         std::pow(2.0 * qd / (qd * qd + 1.0), static_cast<double>(d / r)) *
                         std::pow(qd, -static_cast<double>(weight));
    return cap(decay + absorption_bound(q, n));
}

double coverage_lower_1d(int q, int n, int k, int d) {
    check_sites(q, n);
    if (k < 1 || k > n) throw DomainError("locality k must lie in [1, n]");
    if (d < 1) throw DomainError("depth must be at least 1");
    const double qd = static_cast<double>(q);
    const double survive =
        std::pow(1.0 / (qd + 1.0), k) * std::pow(1.0 / (qd * qd + 1.0), d + 1);
    const double all_s_start = std::pow(1.0 / (qd + 1.0), n);
    return std::max(survive, all_s_start);
}

CappedBound coverage_upper_1d(int q, int n, int k, int weight, int d) {
    check_sites(q, n);
    if (d < 2) throw DomainError("1D upper bound not applicable below depth 2");
    if (k < 1 || k > n) throw DomainError("locality k must lie in [1, n]");
    if (weight < 1 || weight > k) throw DomainError("weight must lie in [1, k]");
    const double qd = static_cast<double>(q);
    const int n_prime = std::min(n, k + 2 * d);
    const double decay = std::pow(2.0 * qd / (qd * qd + 1.0), d - 1);
    const double raw = 1.0 / (std::pow(qd, n_prime) + 1.0) +
                       std::pow(qd, -static_cast<double>(weight)) * decay *
                           static_cast<double>(n_prime) * std::pow(1.0 + decay, n_prime);
    return cap(raw);
}

double absorption_bound(int q, int n) {
    check_sites(q, n);
    return 1.0 / (std::pow(static_cast<double>(q), n) + 1.0);
}

BoundReport make_general_report(int q, int n, int weight, int crossing_gates, int d, int r) {
    BoundReport report;
    report.lower = coverage_lower_general(q, n, weight, crossing_gates);
    const CappedBound upper = coverage_upper_general(q, n, weight, d, r);
    report.upper = upper.value;
    report.vacuous_upper = upper.vacuous;
    report.lower_formula = "eq4";
    report.upper_formula = "eq5";
    return report;
}

BoundReport make_1d_report(int q, int n, int k, int weight, int d) {
    BoundReport report;
    report.lower = coverage_lower_1d(q, n, k, d);
    const CappedBound upper = coverage_upper_1d(q, n, k, weight, d);
    report.upper = upper.value;
    report.vacuous_upper = upper.vacuous;
    report.lower_formula = "1d_lower";
    report.upper_formula = "1d_upper";
    return report;
}

}  // namespace flatwalk
