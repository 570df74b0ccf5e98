#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flatwalk/error.hpp"
#include "flatwalk/rng.hpp"

namespace flatwalk {

/// Sparse non-identity tensor factor pattern of one observable term: a map
/// site -> basis-operator index in {1, ..., q^2-1}. Identity factors are
/// implicit; an empty pattern is the identity.
class SupportPattern {
public:
    SupportPattern() = default;
    explicit SupportPattern(std::vector<std::pair<int, int>> entries);

    /// Pattern with the given support, every factor set to `op_index`.
    static SupportPattern from_support(const std::vector<int>& sites, int op_index = 1);

    const std::vector<std::pair<int, int>>& entries() const { return entries_; }
    int weight() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }
    std::vector<int> support() const;

    bool operator==(const SupportPattern& other) const { return entries_ == other.entries_; }
    bool operator<(const SupportPattern& other) const { return entries_ < other.entries_; }

private:
    std::vector<std::pair<int, int>> entries_;  // sorted by site
};

struct Term {
    SupportPattern pattern;
    std::complex<double> coeff;
};

/// An observable decomposed over tensor products of basis operators, with a
/// complex coefficient per pattern. Identity terms are rejected (traceless
/// convention), duplicate patterns are merged by coefficient addition, and
/// the total squared-coefficient mass must be positive.
class HamiltonianSpec {
public:
    HamiltonianSpec(int n, int q, std::vector<Term> terms);

    int n() const { return n_; }
    int q() const { return q_; }
    const std::vector<Term>& terms() const { return terms_; }
    double sum_c2() const { return sum_c2_; }
    /// Number of duplicate patterns merged during construction (callers may warn).
    int merged_duplicates() const { return merged_duplicates_; }

private:
    int n_;
    int q_;
    std::vector<Term> terms_;
    double sum_c2_ = 0.0;
    int merged_duplicates_ = 0;
};

/// Cumulative |c_x|^2 weights for sampling term indices with
/// Pr[i] = |c_i|^2 / sum_c2.
class TermDistribution {
public:
    explicit TermDistribution(const HamiltonianSpec& spec);

    std::size_t sample(Rng& rng) const;
    double total() const { return total_; }
    const std::vector<double>& cumulative() const { return cumulative_; }

private:
    std::vector<double> cumulative_;
    double total_ = 0.0;
};

const SupportPattern& sample_term(const HamiltonianSpec& spec, const TermDistribution& dist,
                                  Rng& rng);

/// Qubit shorthand: strings over {I, X, Y, Z}, all of length n, with
/// X -> 1, Y -> 2, Z -> 3. Identity-only strings are rejected.
HamiltonianSpec parse_pauli(const std::vector<std::pair<std::string, std::complex<double>>>& strings);

struct ClockShiftFactor {
    int site;
    int shift_exp;  // a in [0, q)
    int clock_exp;  // b in [0, q)
};

struct ClockShiftTerm {
    std::vector<ClockShiftFactor> factors;
    std::complex<double> coeff;
};

/// General-q shorthand: per listed site a pair of (shift, clock) exponents
/// (a, b) in [q]^2 with (a, b) != (0, 0), encoded as basis index a*q + b.
HamiltonianSpec parse_clock_shift(const std::vector<ClockShiftTerm>& terms, int n, int q);

/// Triangle-inequality upper bound on the observable's operator norm:
/// sum of coefficient moduli (every basis factor is unitary).
double operator_norm_bound(const HamiltonianSpec& spec);

}  // namespace flatwalk
