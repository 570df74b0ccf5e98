#include "flatwalk/haar.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace flatwalk {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::vector<Eigen::MatrixXcd> pauli_matrices() {
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, -kI, kI, 0;
    z << 1, 0, 0, -1;
    return {id, x, y, z};
}

std::vector<Eigen::MatrixXcd> clock_shift_matrices(int q) {
    // shift: <k|S1|l> = delta_{k-1,l};  clock: <k|S3|l> = exp(2 pi i k / q) delta_{k,l}
    Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(q, q);
    for (int l = 0; l < q; ++l) shift((l + 1) % q, l) = 1.0;
    Eigen::MatrixXcd clock = Eigen::MatrixXcd::Zero(q, q);
    for (int k = 0; k < q; ++k)
        clock(k, k) = std::exp(kI * (2.0 * std::numbers::pi * k / static_cast<double>(q)));

    std::vector<Eigen::MatrixXcd> ops;
    ops.reserve(static_cast<std::size_t>(q) * q);
    Eigen::MatrixXcd shift_pow = Eigen::MatrixXcd::Identity(q, q);
    for (int a = 0; a < q; ++a) {
        Eigen::MatrixXcd m = shift_pow;
        for (int b = 0; b < q; ++b) {
            ops.push_back(m);
            m = m * clock;
        }
        shift_pow = shift_pow * shift;
    }
    return ops;
}

}  // namespace

OperatorBasis::OperatorBasis(int q, Kind kind) : q_(q), kind_(kind) {
    if (q < 2) throw DomainError("local dimension q must be at least 2");
    if (kind == Kind::pauli) {
        if (q != 2) throw DomainError("the Pauli basis is only defined for q = 2");
        ops_ = pauli_matrices();
    } else {
        ops_ = clock_shift_matrices(q);
    }
}

OperatorBasis OperatorBasis::standard(int q) {
    return OperatorBasis(q, q == 2 ? Kind::pauli : Kind::clock_shift);
}

const Eigen::MatrixXcd& OperatorBasis::op(int index) const {
    if (index < 0 || index >= size()) throw DomainError("basis operator index out of range");
    return ops_[static_cast<std::size_t>(index)];
}

Statevector Statevector::zero_state(int n, int q) {
    std::uint64_t dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= static_cast<std::uint64_t>(q);
        if (dim > (std::uint64_t{1} << 40)) throw DomainError("statevector dimension overflow");
    }
    std::vector<std::complex<double>> amps(dim);
    amps[0] = 1.0;
    return Statevector(n, q, std::move(amps));
}

void Statevector::apply_one_site(const Eigen::MatrixXcd& u, int site) {
    const std::size_t dim = amps_.size();
    const std::size_t stride = [&] {
        std::size_t s = 1;
        for (int i = 0; i < site; ++i) s *= static_cast<std::size_t>(q_);
        return s;
    }();
    const int q = q_;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(q));
    for (std::size_t idx = 0; idx < dim; ++idx) {
        if ((idx / stride) % static_cast<std::size_t>(q) != 0) continue;
        for (int d = 0; d < q; ++d) scratch[static_cast<std::size_t>(d)] = amps_[idx + d * stride];
        for (int r = 0; r < q; ++r) {
            std::complex<double> acc = 0.0;
            for (int c = 0; c < q; ++c) acc += u(r, c) * scratch[static_cast<std::size_t>(c)];
            amps_[idx + static_cast<std::size_t>(r) * stride] = acc;
        }
    }
}

void Statevector::apply_two_site(const Eigen::MatrixXcd& u, int site_a, int site_b) {
    if (site_a == site_b) throw DomainError("two-site gate needs distinct sites");
    const std::size_t dim = amps_.size();
    auto stride_of = [&](int site) {
        std::size_t s = 1;
        for (int i = 0; i < site; ++i) s *= static_cast<std::size_t>(q_);
        return s;
    };
    const std::size_t sa = stride_of(site_a);
    const std::size_t sb = stride_of(site_b);
    const int q = q_;
    const int block = q * q;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(block));
    for (std::size_t idx = 0; idx < dim; ++idx) {
        if ((idx / sa) % static_cast<std::size_t>(q) != 0) continue;
        if ((idx / sb) % static_cast<std::size_t>(q) != 0) continue;
        for (int da = 0; da < q; ++da)
            for (int db = 0; db < q; ++db)
                scratch[static_cast<std::size_t>(da * q + db)] =
                    amps_[idx + static_cast<std::size_t>(da) * sa +
                          static_cast<std::size_t>(db) * sb];
        for (int r = 0; r < block; ++r) {
            std::complex<double> acc = 0.0;
            for (int c = 0; c < block; ++c) acc += u(r, c) * scratch[static_cast<std::size_t>(c)];
            amps_[idx + static_cast<std::size_t>(r / q) * sa + static_cast<std::size_t>(r % q) * sb] =
                acc;
        }
    }
}

double Statevector::norm_sq() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

std::complex<double> Statevector::expectation(const OperatorBasis& basis,
                                              const SupportPattern& pattern) const {
    if (basis.q() != q_) throw DomainError("basis and state disagree on q");
    Statevector transformed = *this;
    for (const auto& [site, op] : pattern.entries()) {
        if (site >= n_) throw DomainError("pattern site index out of range");
        transformed.apply_one_site(basis.op(op), site);
    }
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * transformed.amps_[i];
    return acc;
}

Eigen::MatrixXcd haar_unitary(int dim, Rng& rng) {
    Eigen::MatrixXcd gauss(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            gauss(r, c) = std::complex<double>(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gauss);
    Eigen::MatrixXcd unitary = qr.householderQ();
    const Eigen::MatrixXcd r_matrix = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < dim; ++c) {
        const std::complex<double> diag = r_matrix(c, c);
        const double mag = std::abs(diag);
        const std::complex<double> phase = mag > 0.0 ? diag / mag : std::complex<double>(1.0, 0.0);
        unitary.col(c) *= phase;
    }
    return unitary;
}

namespace {

void check_statevector_job(const Architecture& arch, const OperatorBasis& basis,
                           std::uint64_t samples, std::uint64_t dim_cap) {
    arch.ensure_valid();
    if (basis.q() != arch.q()) throw DomainError("basis and architecture disagree on q");
    if (samples == 0) throw DomainError("need at least one sample");
    std::uint64_t dim = 1;
    for (int i = 0; i < arch.n(); ++i) {
        dim *= static_cast<std::uint64_t>(arch.q());
        if (dim > dim_cap) {
            std::ostringstream msg;
            msg << "statevector dimension q^n exceeds the cap of " << dim_cap;
            throw DomainError(msg.str());
        }
    }
}

Statevector random_circuit_state(const Architecture& arch, Rng& rng) {
    Statevector psi = Statevector::zero_state(arch.n(), arch.q());
    const int gate_dim = arch.q() * arch.q();
    for (const auto& layer : arch.layers())
        for (const Gate& gate : layer)
            psi.apply_two_site(haar_unitary(gate_dim, rng), gate.a, gate.b);
    return psi;
}

struct MeanAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double v) {
        sum += v;
        sum_sq += v * v;
    }
    double mean(std::uint64_t n) const { return sum / static_cast<double>(n); }
    double std_error(std::uint64_t n) const {
        if (n < 2) return 0.0;
        const double m = mean(n);
        const double var =
            std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
        return std::sqrt(var / static_cast<double>(n));
    }
};

}  // namespace

EstimateReport haar_coverage(const Architecture& arch, const SupportPattern& pattern,
                             const OperatorBasis& basis, std::uint64_t samples, std::uint64_t seed,
                             std::uint64_t dim_cap) {
    check_statevector_job(arch, basis, samples, dim_cap);
    for (const auto& [site, op] : pattern.entries()) {
        if (site >= arch.n()) throw DomainError("pattern site index out of range");
        if (op >= basis.size()) throw DomainError("pattern operator index exceeds q^2-1");
    }

    MeanAccumulator acc;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Rng rng(seed, i);
        const Statevector psi = random_circuit_state(arch, rng);
        acc.add(std::norm(psi.expectation(basis, pattern)));
    }

    EstimateReport report;
    report.estimate = acc.mean(samples);
    report.std_error = acc.std_error(samples);
    report.n_samples = samples;
    report.seed = seed;
    report.sum_c2 = 1.0;
    report.method = "haar";
    return report;
}

FirstMomentReport haar_first_moment(const Architecture& arch, const std::vector<Term>& terms,
                                    const OperatorBasis& basis, std::uint64_t samples,
                                    std::uint64_t seed, std::uint64_t dim_cap) {
    check_statevector_job(arch, basis, samples, dim_cap);
    for (const Term& t : terms)
        for (const auto& [site, op] : t.pattern.entries()) {
            if (site >= arch.n()) throw DomainError("term site index out of range");
            if (op >= basis.size()) throw DomainError("term operator index exceeds q^2-1");
        }

    MeanAccumulator real_acc, imag_acc;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Rng rng(seed, i);
        const Statevector psi = random_circuit_state(arch, rng);
        std::complex<double> value = 0.0;
        for (const Term& t : terms) value += t.coeff * psi.expectation(basis, t.pattern);
        real_acc.add(value.real());
        imag_acc.add(value.imag());
    }

    FirstMomentReport report;
    report.estimate = real_acc.mean(samples);
    report.std_error = real_acc.std_error(samples);
    report.imag_mean = imag_acc.mean(samples);
    report.imag_std_error = imag_acc.std_error(samples);
    report.n_samples = samples;
    report.seed = seed;
    return report;
}

FirstMomentReport haar_first_moment(const Architecture& arch, const HamiltonianSpec& spec,
                                    const OperatorBasis& basis, std::uint64_t samples,
                                    std::uint64_t seed, std::uint64_t dim_cap) {
    if (arch.n() != spec.n() || arch.q() != spec.q())
        throw DomainError("architecture and observable disagree on (n, q)");
    return haar_first_moment(arch, spec.terms(), basis, samples, seed, dim_cap);
}

}  // namespace flatwalk
