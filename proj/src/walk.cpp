#include "flatwalk/walk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace flatwalk {

int Configuration::s_count() const {
    int count = 0;
    for (std::uint8_t l : labels_) count += l;
    return count;
}

bool Configuration::covers(const SupportPattern& pattern) const {
    for (const auto& [site, op] : pattern.entries()) {
        if (site >= size() || !is_s(site)) return false;
    }
    return true;
}

std::uint64_t hoeffding_sample_count(double epsilon, double delta, double sum_c2) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
    const double ratio = sum_c2 / epsilon;
    const double n = 0.5 * std::log(2.0 / delta) * ratio * ratio;
    if (n >= 9.0e18) throw DomainError("requested sample count does not fit in 64 bits");
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n)));
}

Configuration sample_initial(int n, int q, Rng& rng) {
    Configuration c(n);
    const double p_s = 1.0 / (static_cast<double>(q) + 1.0);
    for (int s = 0; s < n; ++s) c.set_s(s, rng.uniform() < p_s);
    return c;
}

Configuration sample_initial_unbiased(int n, Rng& rng) {
    Configuration c(n);
    for (int s = 0; s < n; ++s) c.set_s(s, rng.uniform() < 0.5);
    return c;
}

int step_biased(Configuration& config, const Gate& gate, int q, Rng& rng) {
    const bool sa = config.is_s(gate.a);
    const bool sb = config.is_s(gate.b);
    if (sa == sb) return 0;
    const double qd = static_cast<double>(q);
    const bool to_s = rng.uniform() < 1.0 / (qd * qd + 1.0);
    config.set_s(gate.a, to_s);
    config.set_s(gate.b, to_s);
    return 1;
}

int step_unbiased(Configuration& config, const Gate& gate, Rng& rng) {
    const bool sa = config.is_s(gate.a);
    const bool sb = config.is_s(gate.b);
    if (sa == sb) return 0;
    const bool to_s = rng.uniform() < 0.5;
    config.set_s(gate.a, to_s);
    config.set_s(gate.b, to_s);
    return 1;
}

namespace {

template <typename StepFn>
Trajectory run_walk(const Architecture& arch, Configuration config, Rng& rng, bool record_history,
                    StepFn step) {
    Trajectory traj{std::move(config), 0, {}};
    if (record_history) traj.history.push_back(traj.final);
    for (const auto& layer : arch.layers()) {
        for (const Gate& gate : layer) {
            traj.flips += static_cast<std::uint64_t>(step(traj.final, gate, rng));
            if (record_history) traj.history.push_back(traj.final);
        }
    }
    return traj;
}

}  // namespace

Trajectory run_biased(const Architecture& arch, Rng& rng, bool record_history) {
    arch.ensure_valid();
    Configuration start = sample_initial(arch.n(), arch.q(), rng);
    const int q = arch.q();
    return run_walk(arch, std::move(start), rng, record_history,
                    [q](Configuration& c, const Gate& g, Rng& r) { return step_biased(c, g, q, r); });
}

Trajectory run_unbiased(const Architecture& arch, Rng& rng, bool record_history) {
    arch.ensure_valid();
    Configuration start = sample_initial_unbiased(arch.n(), rng);
    return run_walk(arch, std::move(start), rng, record_history,
                    [](Configuration& c, const Gate& g, Rng& r) { return step_unbiased(c, g, r); });
}

Trajectory run_biased_from(const Architecture& arch, Configuration start, Rng& rng,
                           bool record_history) {
    arch.ensure_valid();
    if (start.size() != arch.n()) throw DomainError("start configuration has wrong length");
    const int q = arch.q();
    return run_walk(arch, std::move(start), rng, record_history,
                    [q](Configuration& c, const Gate& g, Rng& r) { return step_biased(c, g, q, r); });
}

double importance_weight(int n, int q, std::uint64_t flips, int final_s_count) {
    const double qd = static_cast<double>(q);
    return std::pow(2.0 * qd / (qd + 1.0), n) * std::pow(2.0 * qd / (qd * qd + 1.0),
                                                         static_cast<double>(flips)) *
           std::pow(qd, -static_cast<double>(final_s_count));
}

namespace {

void kahan_add(double& sum, double& comp, double value) {
    const double y = value - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

struct MomentSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

// Samples are grouped into fixed-size blocks keyed by sample index. Each block
// is summed sequentially by whichever worker claims it, and blocks are reduced
// in index order afterwards, so the float result is identical for any worker
// count.
constexpr std::uint64_t kBlockSize = 4096;

template <typename SampleFn>
MomentSums run_samples(std::uint64_t n_samples, unsigned workers, const SampleFn& sample_value) {
    const std::uint64_t n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<MomentSums> blocks(static_cast<std::size_t>(n_blocks));

    auto run_block = [&](std::uint64_t block) {
        const std::uint64_t begin = block * kBlockSize;
        const std::uint64_t end = std::min(begin + kBlockSize, n_samples);
        double sum = 0.0, sum_comp = 0.0, sq = 0.0, sq_comp = 0.0;
        for (std::uint64_t i = begin; i < end; ++i) {
            const double v = sample_value(i);
            kahan_add(sum, sum_comp, v);
            kahan_add(sq, sq_comp, v * v);
        }
        blocks[static_cast<std::size_t>(block)] = {sum, sq};
    };

    if (workers <= 1 || n_blocks == 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        const unsigned count = std::min<unsigned>(workers, static_cast<unsigned>(n_blocks));
        pool.reserve(count);
        for (unsigned w = 0; w < count; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1))
                    run_block(b);
            });
        }
        for (auto& t : pool) t.join();
    }

    MomentSums total;
    double sum_comp = 0.0, sq_comp = 0.0;
    for (const MomentSums& b : blocks) {
        kahan_add(total.sum, sum_comp, b.sum);
        kahan_add(total.sum_sq, sq_comp, b.sum_sq);
    }
    return total;
}

EstimateReport finalize(const MomentSums& sums, std::uint64_t n, std::uint64_t seed, double scale,
                        double sum_c2, std::string method) {
    const double mean = sums.sum / static_cast<double>(n);
    double variance = 0.0;
    if (n > 1) {
        variance = (sums.sum_sq - static_cast<double>(n) * mean * mean) /
                   static_cast<double>(n - 1);
        variance = std::max(variance, 0.0);
    }
    EstimateReport report;
    report.estimate = scale * mean;
    report.std_error = scale * std::sqrt(variance / static_cast<double>(n));
    report.n_samples = n;
    report.seed = seed;
    report.sum_c2 = sum_c2;
    report.method = std::move(method);
    return report;
}

std::uint64_t resolve_samples(const EstimatorConfig& config, double sum_c2) {
    if (config.sample_override) {
        if (*config.sample_override == 0) throw DomainError("sample override must be positive");
        return *config.sample_override;
    }
    return hoeffding_sample_count(config.epsilon, config.delta, sum_c2);
}

void check_pattern_sites(const Architecture& arch, const SupportPattern& pattern) {
    for (const auto& [site, op] : pattern.entries())
        if (site >= arch.n()) throw DomainError("pattern site index out of range");
}

}  // namespace

EstimateReport estimate_coverage(const Architecture& arch, const SupportPattern& pattern,
                                 const EstimatorConfig& config) {
    arch.ensure_valid();
    check_pattern_sites(arch, pattern);
    if (pattern.empty()) {
        // The empty support is contained in every set.
        EstimateReport report;
        report.estimate = 1.0;
        report.std_error = 0.0;
        report.n_samples = 1;
        report.seed = config.seed;
        report.sum_c2 = 1.0;
        report.method = "biased";
        return report;
    }
    const std::uint64_t n = resolve_samples(config, 1.0);
    const auto sums = run_samples(n, config.workers, [&](std::uint64_t i) {
        Rng rng(config.seed, i);
        const Trajectory traj = run_biased(arch, rng);
        return traj.final.covers(pattern) ? 1.0 : 0.0;
    });
    return finalize(sums, n, config.seed, 1.0, 1.0, "biased");
}

EstimateReport estimate_coverage_unbiased(const Architecture& arch, const SupportPattern& pattern,
                                          const EstimatorConfig& config) {
    arch.ensure_valid();
    check_pattern_sites(arch, pattern);
    const std::uint64_t n = resolve_samples(config, 1.0);
    const int sites = arch.n();
    const int q = arch.q();
    const auto sums = run_samples(n, config.workers, [&](std::uint64_t i) {
        Rng rng(config.seed, i);
        const Trajectory traj = run_unbiased(arch, rng);
        if (!traj.final.covers(pattern)) return 0.0;
        return importance_weight(sites, q, traj.flips, traj.final.s_count());
    });
    return finalize(sums, n, config.seed, 1.0, 1.0, "unbiased");
}

EstimateReport estimate_second_moment(const Architecture& arch, const HamiltonianSpec& spec,
                                      const EstimatorConfig& config) {
    arch.ensure_valid();
    if (arch.n() != spec.n() || arch.q() != spec.q())
        throw DomainError("architecture and observable disagree on (n, q)");

    const double sum_c2 = spec.sum_c2();
    const TermDistribution dist(spec);
    const std::uint64_t n = resolve_samples(config, sum_c2);
    const bool unbiased = config.method == WalkMethod::unbiased;
    const int sites = arch.n();
    const int q = arch.q();

    auto sample_value = [&](std::uint64_t i) {
        Rng rng(config.seed, i);
        const Trajectory traj = unbiased ? run_unbiased(arch, rng) : run_biased(arch, rng);
        const double weight =
            unbiased ? importance_weight(sites, q, traj.flips, traj.final.s_count()) : 1.0;
        if (config.reuse_trajectory) {
            double mass = 0.0;
            for (const Term& t : spec.terms())
                if (traj.final.covers(t.pattern)) mass += std::norm(t.coeff);
            return weight * mass / sum_c2;
        }
        const SupportPattern& x = sample_term(spec, dist, rng);
        return traj.final.covers(x) ? weight : 0.0;
    };

    const auto sums = run_samples(n, config.workers, sample_value);
    return finalize(sums, n, config.seed, sum_c2, sum_c2, unbiased ? "unbiased" : "biased");
}

}  // namespace flatwalk
