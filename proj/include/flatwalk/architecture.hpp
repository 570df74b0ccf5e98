#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatwalk/error.hpp"

namespace flatwalk {

/// One entangling gate: an unordered pair of distinct site indices.
struct Gate {
    int a = 0;
    int b = 0;
};

struct Violation {
    std::string code;
    int layer = -1;  // -1 when not tied to a layer
    int site = -1;   // -1 when not tied to a site
    std::string message;
};

struct CutStats {
    int gates_crossing = 0;
    std::vector<int> subset;
};

struct Lightcone {
    std::vector<int> sites;  // sorted
    int n_prime = 0;
};

/// A layered two-site entangling-gate layout on n qudits of local dimension q,
/// plus optional parameter metadata (parameter count and generator norms).
/// Gate matrices are never represented: the walk estimators and the analytic
/// bounds consume only the layout, and the statevector oracle draws its gates
/// at random.
class Architecture {
public:
    Architecture(int n, int q, std::vector<std::vector<Gate>> layers,
                 std::optional<int> param_count = std::nullopt,
                 std::optional<std::vector<double>> generator_norms = std::nullopt,
                 bool lenient = false);

    int n() const { return n_; }
    int q() const { return q_; }
    int depth() const { return static_cast<int>(layers_.size()); }
    int num_gates() const { return num_gates_; }
    const std::vector<std::vector<Gate>>& layers() const { return layers_; }
    std::optional<int> param_count() const { return param_count_; }
    const std::optional<std::vector<double>>& generator_norms() const { return generator_norms_; }
    bool lenient() const { return lenient_; }

    /// Sum of squared generator norms, for the gradient interval. Uses the
    /// explicit norm list when present, otherwise param_count * (1/2)^2.
    std::optional<double> sum_generator_norms_sq() const;

    /// Throws DomainError describing the first few violations, if any.
    void ensure_valid() const;

private:
    int n_;
    int q_;
    std::vector<std::vector<Gate>> layers_;
    int num_gates_;
    std::optional<int> param_count_;
    std::optional<std::vector<double>> generator_norms_;
    bool lenient_;
};

/// Checks all structural invariants. Violations are data, not failures:
///  - gate endpoints distinct and in range,
///  - no site touched twice within one layer,
///  - every site entangled at least once (skipped for lenient architectures),
///  - generator_norms nonnegative and, when param_count is present, of matching length.
std::vector<Violation> validate(const Architecture& arch);

/// (total gate count m, layer count d). Requires a valid architecture.
std::pair<int, int> stats(const Architecture& arch);

/// Exact regular connectivity r: the smallest window length such that every
/// window of r consecutive layers contains a gate crossing every proper
/// nonempty cut. Enumerates all cuts, so it is capped at max_exact_n sites;
/// returns nullopt above the cap or when some cut is never crossed at all.
std::optional<int> regular_connectivity(const Architecture& arch, int max_exact_n = 16);

/// Number of gates with exactly one endpoint in `support`. The support must
/// be a proper nonempty subset of the sites.
CutStats gates_crossing(const Architecture& arch, const std::vector<int>& support);

/// Periodic one-dimensional brickwork: odd layers pair (2j, 2j+1), even
/// layers pair (2j, 2j-1 mod n). n must be even.
Architecture brickwork_1d(int n, int q, int d);

/// Sites reachable from `support` by walking gates from the last layer back
/// to the first.
Lightcone backward_lightcone(const Architecture& arch, const std::vector<int>& support);

}  // namespace flatwalk
