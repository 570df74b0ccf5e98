#include "flatwalk/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flatwalk {

SupportPattern::SupportPattern(std::vector<std::pair<int, int>> entries)
    : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].second == 0)
            throw DomainError("pattern entries must not carry the identity index 0");
        if (entries_[i].second < 0) throw DomainError("pattern operator index must be positive");
        if (entries_[i].first < 0) throw DomainError("pattern site index must be nonnegative");
        if (i > 0 && entries_[i].first == entries_[i - 1].first)
            throw DomainError("pattern lists a site twice");
    }
}

SupportPattern SupportPattern::from_support(const std::vector<int>& sites, int op_index) {
    std::vector<std::pair<int, int>> entries;
    entries.reserve(sites.size());
    for (int s : sites) entries.emplace_back(s, op_index);
    return SupportPattern(std::move(entries));
}

std::vector<int> SupportPattern::support() const {
    std::vector<int> sites;
    sites.reserve(entries_.size());
    for (const auto& [site, op] : entries_) sites.push_back(site);
    return sites;
}

HamiltonianSpec::HamiltonianSpec(int n, int q, std::vector<Term> terms) : n_(n), q_(q) {
    if (n_ < 1) throw DomainError("observable needs at least one site");
    if (q_ < 2) throw DomainError("local dimension q must be at least 2");

    const int max_op = q_ * q_ - 1;
    for (const Term& t : terms) {
        if (t.pattern.empty())
            throw DomainError("identity term not allowed (traceless convention)");
        for (const auto& [site, op] : t.pattern.entries()) {
            if (site >= n_) throw DomainError("term site index out of range");
            if (op > max_op) {
                std::ostringstream msg;
                msg << "operator index " << op << " exceeds q^2-1 = " << max_op;
                throw DomainError(msg.str());
            }
        }
    }

    // The decomposition is unique, so duplicate patterns are merged by
    // coefficient addition. Terms that cancel exactly are dropped.
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.pattern < b.pattern; });
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!terms_.empty() && terms_.back().pattern == terms[i].pattern) {
            terms_.back().coeff += terms[i].coeff;
            ++merged_duplicates_;
        } else {
            terms_.push_back(terms[i]);
        }
    }
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return std::abs(t.coeff) == 0.0; }),
                 terms_.end());

    for (const Term& t : terms_) sum_c2_ += std::norm(t.coeff);
    if (!(sum_c2_ > 0.0))
        throw DomainError("observable must have positive total coefficient weight");
}

TermDistribution::TermDistribution(const HamiltonianSpec& spec) {
    cumulative_.reserve(spec.terms().size());
    for (const Term& t : spec.terms()) {
        total_ += std::norm(t.coeff);
        cumulative_.push_back(total_);
    }
    if (cumulative_.empty()) throw DomainError("cannot sample from an empty term list");
}

std::size_t TermDistribution::sample(Rng& rng) const {
    const double u = rng.uniform() * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;  // u == total_ edge
    return static_cast<std::size_t>(it - cumulative_.begin());
}

const SupportPattern& sample_term(const HamiltonianSpec& spec, const TermDistribution& dist,
                                  Rng& rng) {
    return spec.terms()[dist.sample(rng)].pattern;
}

HamiltonianSpec parse_pauli(
    const std::vector<std::pair<std::string, std::complex<double>>>& strings) {
    if (strings.empty()) throw ParseError("no terms given");
    const std::size_t n = strings.front().first.size();
    if (n == 0) throw ParseError("empty operator string");

    std::vector<Term> terms;
    terms.reserve(strings.size());
    for (const auto& [str, coeff] : strings) {
        if (str.size() != n) throw ParseError("operator strings have mixed lengths");
        std::vector<std::pair<int, int>> entries;
        for (std::size_t i = 0; i < str.size(); ++i) {
            int op;
            switch (str[i]) {
                case 'I': continue;
                case 'X': op = 1; break;
                case 'Y': op = 2; break;
                case 'Z': op = 3; break;
                default:
                    throw ParseError(std::string("unknown operator letter '") + str[i] + "'");
            }
            entries.emplace_back(static_cast<int>(i), op);
        }
        if (entries.empty())
            throw DomainError("identity string not allowed (traceless convention)");
        terms.push_back({SupportPattern(std::move(entries)), coeff});
    }
    return HamiltonianSpec(static_cast<int>(n), 2, std::move(terms));
}

HamiltonianSpec parse_clock_shift(const std::vector<ClockShiftTerm>& terms, int n, int q) {
    if (q < 2) throw DomainError("local dimension q must be at least 2");
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const ClockShiftTerm& t : terms) {
        std::vector<std::pair<int, int>> entries;
        entries.reserve(t.factors.size());
        for (const ClockShiftFactor& f : t.factors) {
            if (f.shift_exp < 0 || f.shift_exp >= q || f.clock_exp < 0 || f.clock_exp >= q)
                throw ParseError("clock/shift exponents must lie in [0, q)");
            if (f.shift_exp == 0 && f.clock_exp == 0)
                throw ParseError("identity factor (0,0) not allowed on a listed site");
            entries.emplace_back(f.site, f.shift_exp * q + f.clock_exp);
        }
        out.push_back({SupportPattern(std::move(entries)), t.coeff});
    }
    return HamiltonianSpec(n, q, std::move(out));
}

double operator_norm_bound(const HamiltonianSpec& spec) {
    double total = 0.0;
    for (const Term& t : spec.terms()) total += std::abs(t.coeff);
    return total;
}

}  // namespace flatwalk
