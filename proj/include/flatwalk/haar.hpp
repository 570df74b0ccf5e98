#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "flatwalk/architecture.hpp"
#include "flatwalk/hamiltonian.hpp"
#include "flatwalk/rng.hpp"
#include "flatwalk/walk.hpp"

namespace flatwalk {

/// The q^2 single-site basis matrices, Hilbert-Schmidt orthogonal with
/// tr(Mi† Mj) = q δij and M0 = identity. Qubits use the Pauli order
/// I, X, Y, Z; general q uses shift/clock products indexed a*q + b.
class OperatorBasis {
public:
    enum class Kind { pauli, clock_shift };

    OperatorBasis(int q, Kind kind);
    /// Pauli for q = 2, shift/clock otherwise.
    static OperatorBasis standard(int q);

    int q() const { return q_; }
    Kind kind() const { return kind_; }
    int size() const { return static_cast<int>(ops_.size()); }
    const Eigen::MatrixXcd& op(int index) const;

private:
    int q_;
    Kind kind_;
    std::vector<Eigen::MatrixXcd> ops_;
};

/// Dense amplitude vector on n qudits of dimension q; site 0 is the least
/// significant digit.
class Statevector {
public:
    static Statevector zero_state(int n, int q);

    int n() const { return n_; }
    int q() const { return q_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

    void apply_one_site(const Eigen::MatrixXcd& u, int site);
    void apply_two_site(const Eigen::MatrixXcd& u, int site_a, int site_b);

    double norm_sq() const;
    /// <psi| M_x |psi> for a sparse operator pattern.
    std::complex<double> expectation(const OperatorBasis& basis,
                                     const SupportPattern& pattern) const;

private:
    Statevector(int n, int q, std::vector<std::complex<double>> amps)
        : n_(n), q_(q), amps_(std::move(amps)) {}

    int n_;
    int q_;
    std::vector<std::complex<double>> amps_;
};

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// R-diagonal phase fix.
Eigen::MatrixXcd haar_unitary(int dim, Rng& rng);

inline constexpr std::uint64_t kDefaultStatevectorDimCap = std::uint64_t{1} << 20;

struct FirstMomentReport {
    double estimate = 0.0;      // mean of the real part
    double std_error = 0.0;
    double imag_mean = 0.0;     // should vanish for Hermitian observables
    double imag_std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// Statevector estimate of the coverage probability: over `samples`
/// independent draws of all entangling gates, averages the squared modulus
/// of <0|V† M_x V|0>.
EstimateReport haar_coverage(const Architecture& arch, const SupportPattern& pattern,
                             const OperatorBasis& basis, std::uint64_t samples, std::uint64_t seed,
                             std::uint64_t dim_cap = kDefaultStatevectorDimCap);

/// Averages <0|V† H V|0> over gate draws; expectation is zero for any
/// traceless observable. The raw-terms overload is the test hook that admits
/// an identity term (empty pattern) with a constant coefficient.
FirstMomentReport haar_first_moment(const Architecture& arch, const std::vector<Term>& terms,
                                    const OperatorBasis& basis, std::uint64_t samples,
                                    std::uint64_t seed,
                                    std::uint64_t dim_cap = kDefaultStatevectorDimCap);
FirstMomentReport haar_first_moment(const Architecture& arch, const HamiltonianSpec& spec,
                                    const OperatorBasis& basis, std::uint64_t samples,
                                    std::uint64_t seed,
                                    std::uint64_t dim_cap = kDefaultStatevectorDimCap);

}  // namespace flatwalk
