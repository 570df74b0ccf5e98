#include "flatwalk/exact.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace flatwalk {

namespace {

void check_cap(const Architecture& arch, int max_n, const char* what) {
    arch.ensure_valid();
    if (arch.n() > max_n) {
        std::ostringstream msg;
        msg << what << ": n = " << arch.n() << " exceeds the cap of " << max_n
            << " sites; raise the cap or use the Monte Carlo estimator";
        throw DomainError(msg.str());
    }
}

}  // namespace

StateDistribution StateDistribution::initial_biased(int n, int q) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> p(dim);
    const double qd = static_cast<double>(q);
    // Pr[mask] = (q/(q+1))^n * q^(-popcount): precompute by S-count.
    std::vector<double> by_count(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        by_count[static_cast<std::size_t>(k)] =
            std::pow(qd / (qd + 1.0), n) * std::pow(qd, -static_cast<double>(k));
    for (std::size_t mask = 0; mask < dim; ++mask)
        p[mask] = by_count[static_cast<std::size_t>(std::popcount(mask))];
    return StateDistribution(n, std::move(p));
}

void StateDistribution::apply_gate(const Gate& gate, int q) {
    const std::uint32_t bit_a = 1u << gate.a;
    const std::uint32_t bit_b = 1u << gate.b;
    const std::uint32_t pair = bit_a | bit_b;
    const double qd = static_cast<double>(q);
    const double p_to_s = 1.0 / (qd * qd + 1.0);
    const std::size_t dim = p_.size();
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & pair) continue;  // visit each 4-state group once, at its 00 member
        const std::size_t i01 = base | bit_b;
        const std::size_t i10 = base | bit_a;
        const std::size_t i11 = base | pair;
        const double mixed = p_[i01] + p_[i10];
        if (mixed == 0.0) continue;
        p_[base] += mixed * (1.0 - p_to_s);
        p_[i11] += mixed * p_to_s;
        p_[i01] = 0.0;
        p_[i10] = 0.0;
    }
}

double StateDistribution::coverage_mass(std::uint32_t support_mask) const {
    double mass = 0.0;
    for (std::size_t mask = 0; mask < p_.size(); ++mask)
        if ((mask & support_mask) == support_mask) mass += p_[mask];
    return mass;
}

double StateDistribution::total_mass() const {
    double total = 0.0;
    for (double v : p_) total += v;
    return total;
}

std::uint32_t support_mask_of(const SupportPattern& pattern, int n) {
    std::uint32_t mask = 0;
    for (const auto& [site, op] : pattern.entries()) {
        if (site >= n) throw DomainError("pattern site index out of range");
        mask |= 1u << site;
    }
    return mask;
}

namespace {

StateDistribution propagate(const Architecture& arch) {
    StateDistribution dist = StateDistribution::initial_biased(arch.n(), arch.q());
    for (const auto& layer : arch.layers())
        for (const Gate& gate : layer) dist.apply_gate(gate, arch.q());
    return dist;
}

}  // namespace

double exact_coverage(const Architecture& arch, const SupportPattern& pattern, int max_n) {
    check_cap(arch, max_n, "exact_coverage");
    const std::uint32_t mask = support_mask_of(pattern, arch.n());
    return propagate(arch).coverage_mass(mask);
}

double exact_second_moment(const Architecture& arch, const HamiltonianSpec& spec, int max_n) {
    check_cap(arch, max_n, "exact_second_moment");
    if (arch.n() != spec.n() || arch.q() != spec.q())
        throw DomainError("architecture and observable disagree on (n, q)");
    const StateDistribution dist = propagate(arch);
    double total = 0.0;
    for (const Term& t : spec.terms())
        total += std::norm(t.coeff) * dist.coverage_mass(support_mask_of(t.pattern, arch.n()));
    return total;
}

namespace {

struct EnumerationContext {
    std::vector<Gate> gates;
    std::uint32_t support_mask = 0;
    std::uint32_t full_mask = 0;
    std::vector<double> flip_factor;    // (q/(q^2+1))^f
    std::vector<double> s_count_factor; // (q/(q+1))^n * q^(-s)
    double total = 0.0;
};

// Branches at every mixed-label gate encounter; equal-label encounters are
// deterministic. Weights are the closed-form trajectory weights, evaluated
// at the leaves -- deliberately not the product of transition probabilities,
// so this path is independent of the transfer-matrix update rule.
void enumerate(EnumerationContext& ctx, std::uint32_t config, std::size_t gate_idx, int flips) {
    if (gate_idx == ctx.gates.size()) {
        if ((config & ctx.support_mask) != ctx.support_mask) return;
        const int s = std::popcount(config);
        ctx.total += ctx.s_count_factor[static_cast<std::size_t>(s)] *
                     ctx.flip_factor[static_cast<std::size_t>(flips)];
        return;
    }
    const Gate& g = ctx.gates[gate_idx];
    const std::uint32_t bit_a = 1u << g.a;
    const std::uint32_t bit_b = 1u << g.b;
    const bool sa = config & bit_a;
    const bool sb = config & bit_b;
    if (sa == sb) {
        enumerate(ctx, config, gate_idx + 1, flips);
    } else {
        enumerate(ctx, config | bit_a | bit_b, gate_idx + 1, flips + 1);
        enumerate(ctx, config & ~(bit_a | bit_b), gate_idx + 1, flips + 1);
    }
}

}  // namespace

double exact_coverage_enumeration(const Architecture& arch, const SupportPattern& pattern,
                                  int max_n, int max_m) {
    check_cap(arch, max_n, "exact_coverage_enumeration");
    if (arch.num_gates() > max_m) {
        std::ostringstream msg;
        msg << "exact_coverage_enumeration: m = " << arch.num_gates() << " exceeds the cap of "
            << max_m << " gates";
        throw DomainError(msg.str());
    }

    EnumerationContext ctx;
    for (const auto& layer : arch.layers())
        for (const Gate& gate : layer) ctx.gates.push_back(gate);
    ctx.support_mask = support_mask_of(pattern, arch.n());
    ctx.full_mask = (arch.n() == 32) ? ~0u : ((1u << arch.n()) - 1u);

    const int n = arch.n();
    const double qd = static_cast<double>(arch.q());
    ctx.flip_factor.resize(ctx.gates.size() + 1);
    for (std::size_t f = 0; f < ctx.flip_factor.size(); ++f)
        ctx.flip_factor[f] = std::pow(qd / (qd * qd + 1.0), static_cast<double>(f));
    ctx.s_count_factor.resize(static_cast<std::size_t>(n) + 1);
    for (int s = 0; s <= n; ++s)
        ctx.s_count_factor[static_cast<std::size_t>(s)] =
            std::pow(qd / (qd + 1.0), n) * std::pow(qd, -static_cast<double>(s));

    for (std::uint32_t config = 0; config <= ctx.full_mask; ++config)
        enumerate(ctx, config, 0, 0);
    return ctx.total;
}

double exact_absorption_probability(const Architecture& arch, int max_n) {
    check_cap(arch, max_n, "exact_absorption_probability");
    return propagate(arch).mass_all_s();
}

}  // namespace flatwalk
