#pragma once

#include <cstdint>
#include <vector>

#include "flatwalk/architecture.hpp"
#include "flatwalk/hamiltonian.hpp"

namespace flatwalk {

/// Dense probability vector over all 2^n walk configurations, indexed by
/// bitmask with S sites as 1 bits. Supports exact propagation of the biased
/// walk one gate at a time.
class StateDistribution {
public:
    /// Product measure with Pr[S] = 1/(q+1) per site.
    static StateDistribution initial_biased(int n, int q);

    int n() const { return n_; }
    const std::vector<double>& probabilities() const { return p_; }

    /// Exact 4-outcome stochastic update of one gate.
    void apply_gate(const Gate& gate, int q);

    /// Total mass on configurations whose S-set contains `support_mask`.
    double coverage_mass(std::uint32_t support_mask) const;
    double mass_all_s() const { return p_.back(); }
    double total_mass() const;

private:
    StateDistribution(int n, std::vector<double> p) : n_(n), p_(std::move(p)) {}

    int n_;
    std::vector<double> p_;
};

inline constexpr int kDefaultTransferMatrixCap = 20;
inline constexpr int kDefaultEnumerationSiteCap = 8;
inline constexpr int kDefaultEnumerationGateCap = 12;

std::uint32_t support_mask_of(const SupportPattern& pattern, int n);

/// Exact Pr[support covered by the final configuration] via full transfer-
/// matrix propagation. Capped at max_n sites (dense 2^n vector).
double exact_coverage(const Architecture& arch, const SupportPattern& pattern,
                      int max_n = kDefaultTransferMatrixCap);

/// Exact second moment of the objective: sum over terms of |c_x|^2 times the
/// coverage mass of supp(x), all read from one propagated distribution.
double exact_second_moment(const Architecture& arch, const HamiltonianSpec& spec,
                           int max_n = kDefaultTransferMatrixCap);

/// Independent route to the same number: enumerates every valid trajectory
/// (mixed-label gate encounters branch two ways) and sums closed-form
/// trajectory weights. Exponential in both n and the gate count, so capped
/// hard; exists to cross-check exact_coverage.
double exact_coverage_enumeration(const Architecture& arch, const SupportPattern& pattern,
                                  int max_n = kDefaultEnumerationSiteCap,
                                  int max_m = kDefaultEnumerationGateCap);

/// Final-distribution mass on the all-S configuration.
double exact_absorption_probability(const Architecture& arch,
                                    int max_n = kDefaultTransferMatrixCap);

}  // namespace flatwalk
