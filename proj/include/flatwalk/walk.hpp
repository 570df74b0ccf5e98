#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatwalk/architecture.hpp"
#include "flatwalk/hamiltonian.hpp"
#include "flatwalk/rng.hpp"

namespace flatwalk {

/// One I/S label per site; S is stored as 1.
class Configuration {
public:
    explicit Configuration(int n) : labels_(static_cast<std::size_t>(n), 0) {}

    static Configuration all_s(int n) {
        Configuration c(n);
        std::fill(c.labels_.begin(), c.labels_.end(), std::uint8_t{1});
        return c;
    }
    static Configuration all_i(int n) { return Configuration(n); }

    int size() const { return static_cast<int>(labels_.size()); }
    bool is_s(int site) const { return labels_[static_cast<std::size_t>(site)] != 0; }
    void set_s(int site, bool s) { labels_[static_cast<std::size_t>(site)] = s ? 1 : 0; }

    int s_count() const;
    /// True when every site of the pattern's support carries label S.
    bool covers(const SupportPattern& pattern) const;

    bool operator==(const Configuration& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::uint8_t> labels_;
};

struct Trajectory {
    Configuration final;
    std::uint64_t flips = 0;
    /// Populated only when history recording is requested: configurations
    /// before the first gate and after each gate.
    std::vector<Configuration> history;
};

enum class WalkMethod { biased, unbiased };

struct EstimatorConfig {
    double epsilon = 0.05;                          // additive error tolerance
    double delta = 0.01;                            // failure probability
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> sample_override;   // bypasses the Hoeffding count
    WalkMethod method = WalkMethod::biased;
    unsigned workers = 1;
    /// Variance-reduction extension: reuse each trajectory for every term
    /// instead of pairing one sampled term with one trajectory.
    bool reuse_trajectory = false;
};

struct EstimateReport {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    double sum_c2 = 1.0;
    std::string method;
};

/// Hoeffding sample count: ceil( (1/2) ln(2/delta) (sum_c2/epsilon)^2 ).
std::uint64_t hoeffding_sample_count(double epsilon, double delta, double sum_c2 = 1.0);

/// Independent site labels, Pr[S] = 1/(q+1).
Configuration sample_initial(int n, int q, Rng& rng);
/// Independent site labels, Pr[S] = 1/2 (importance-sampled variant).
Configuration sample_initial_unbiased(int n, Rng& rng);

/// Applies one gate. Equal labels are left unchanged; a mixed pair resolves
/// to (S,S) with probability 1/(q^2+1) and to (I,I) otherwise. Returns 1 if
/// a label changed.
int step_biased(Configuration& config, const Gate& gate, int q, Rng& rng);
/// Mixed pairs resolve to (S,S) or (I,I) with probability 1/2 each.
int step_unbiased(Configuration& config, const Gate& gate, Rng& rng);

Trajectory run_biased(const Architecture& arch, Rng& rng, bool record_history = false);
Trajectory run_unbiased(const Architecture& arch, Rng& rng, bool record_history = false);
/// Runs the biased transition rules from a forced initial configuration
/// (test hook; skips initial sampling).
Trajectory run_biased_from(const Architecture& arch, Configuration start, Rng& rng,
                           bool record_history = false);

/// Importance weight of an unbiased-walk trajectory:
/// (2q/(q+1))^n (2q/(q^2+1))^flips q^(-#S in final).
double importance_weight(int n, int q, std::uint64_t flips, int final_s_count);

/// Monte Carlo estimate of the probability that the final configuration's
/// S-set covers the pattern's support. An empty pattern short-circuits to
/// exactly 1. Deterministic for fixed (seed, sample count) at any worker count.
EstimateReport estimate_coverage(const Architecture& arch, const SupportPattern& pattern,
                                 const EstimatorConfig& config);

/// Same expectation as estimate_coverage, computed over the unbiased walk
/// with importance weights. Generally different variance; empty patterns are
/// genuinely sampled (weights fluctuate with mean 1).
EstimateReport estimate_coverage_unbiased(const Architecture& arch, const SupportPattern& pattern,
                                          const EstimatorConfig& config);

/// Estimates the parameter-and-gate-averaged second moment of the objective:
/// per sample, one trajectory and one term drawn with Pr ~ |c_x|^2, recording
/// the coverage indicator; returns sum_c2 * mean. Per-sample cost is
/// O(n + m + log #terms).
EstimateReport estimate_second_moment(const Architecture& arch, const HamiltonianSpec& spec,
                                      const EstimatorConfig& config);

}  // namespace flatwalk
