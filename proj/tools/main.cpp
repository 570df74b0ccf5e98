// flatwalk CLI: validation, Monte Carlo estimation, exact oracles, analytic
// bounds, and brickwork depth sweeps. Results go to stdout as JSON (or CSV
// for sweeps); diagnostics go to stderr. Exit codes: 0 success, 1 domain
// error, 2 I/O or parse error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatwalk/architecture.hpp"
#include "flatwalk/bounds.hpp"
#include "flatwalk/exact.hpp"
#include "flatwalk/haar.hpp"
#include "flatwalk/io.hpp"
#include "flatwalk/walk.hpp"

namespace {

using namespace flatwalk;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw flatwalk::ParseError("cannot parse integer list entry '" + item + "'");
        }
    }
    return out;
}

std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void warn_default_seed(bool seed_given) {
    if (!seed_given)
        std::cerr << "warning: --seed not given; defaulting to 0 for reproducibility\n";
}

/// Width of the smallest contiguous arc (on the n-site ring) containing the
/// pattern's support. Sites are sorted; the hull is n minus the widest
/// site-free arc, plus one.
int ring_hull_width(const SupportPattern& pattern, int n) {
    const std::vector<int> sites = pattern.support();
    if (sites.empty()) throw DomainError("hull of an empty support is undefined");
    int max_gap = 0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const int cur = sites[i];
        const int next = (i + 1 < sites.size()) ? sites[i + 1] : sites[0] + n;
        max_gap = std::max(max_gap, next - cur);
    }
    return n - max_gap + 1;
}

struct CommonEstimateFlags {
    double epsilon = 0.05;
    double delta = 0.01;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;  // 0 = use the Hoeffding count
    unsigned workers = 1;
    std::string method = "biased";
    bool reuse_trajectory = false;

    EstimatorConfig to_config() const {
        EstimatorConfig cfg;
        cfg.epsilon = epsilon;
        cfg.delta = delta;
        cfg.seed = seed;
        if (samples > 0) cfg.sample_override = samples;
        if (method == "unbiased")
            cfg.method = WalkMethod::unbiased;
        else if (method == "biased")
            cfg.method = WalkMethod::biased;
        else
            throw DomainError("method must be 'biased' or 'unbiased'");
        cfg.workers = workers;
        cfg.reuse_trajectory = reuse_trajectory;
        return cfg;
    }
};

int run_validate(const std::string& arch_path) {
    const Architecture arch = load_architecture(arch_path);
    const auto violations = validate(arch);
    nlohmann::ordered_json out;
    out["valid"] = violations.empty();
    out["violations"] = violations_to_json(violations);
    std::cout << out.dump() << '\n';
    return violations.empty() ? 0 : 1;
}

int run_estimate(const std::string& arch_path, const std::string& ham_path,
                 const CommonEstimateFlags& flags, bool seed_given) {
    warn_default_seed(seed_given);
    const Architecture arch = load_architecture(arch_path);
    const HamiltonianSpec spec = load_hamiltonian(ham_path);
    if (spec.merged_duplicates() > 0)
        std::cerr << "warning: merged " << spec.merged_duplicates()
                  << " duplicate term pattern(s) by coefficient addition\n";
    const EstimateReport report = estimate_second_moment(arch, spec, flags.to_config());
    std::cout << report_to_json(report).dump() << '\n';
    return 0;
}

int run_exact(const std::string& arch_path, const std::string& ham_path, int max_n) {
    const Architecture arch = load_architecture(arch_path);
    const HamiltonianSpec spec = load_hamiltonian(ham_path);
    const double value = exact_second_moment(arch, spec, max_n);
    nlohmann::ordered_json out;
    out["exact"] = value;
    out["sum_c2"] = spec.sum_c2();
    std::cout << out.dump() << '\n';
    return 0;
}

int run_bounds(const std::string& arch_path, const std::string& support_text,
               std::optional<int> abs_x, bool one_d, std::optional<int> k, std::optional<int> r_flag,
               int max_exact_n) {
    const Architecture arch = load_architecture(arch_path);
    arch.ensure_valid();
    std::vector<int> support = parse_int_list(support_text);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (support.empty()) throw DomainError("--support must list at least one site");
    const int weight = abs_x ? *abs_x : static_cast<int>(support.size());
    if (weight < 1 || weight > static_cast<int>(support.size()))
        throw DomainError("--abs-x must lie in [1, |support|]");
    const int n = arch.n();
    const int q = arch.q();
    const int d = arch.depth();

    BoundReport report;
    nlohmann::json inputs;
    if (one_d) {
        if (!k) throw DomainError("--one-d requires --k");
        report = make_1d_report(q, n, *k, weight, d);
        inputs = {{"q", q}, {"n", n}, {"k", *k}, {"abs_x", weight}, {"d", d}};
    } else {
        const CutStats cut = gates_crossing(arch, support);
        std::optional<int> r = regular_connectivity(arch, max_exact_n);
        if (!r) r = r_flag;
        if (!r)
            throw DomainError(
                "regular connectivity not computable at this size; supply it with --r");
        report = make_general_report(q, n, weight, cut.gates_crossing, d, *r);
        inputs = {{"q", q},         {"n", n}, {"abs_x", weight}, {"gates_x", cut.gates_crossing},
                  {"d", d},         {"r", *r}};
    }
    std::cout << bound_report_to_json(report, inputs).dump() << '\n';
    return 0;
}

int run_sweep(int n, int q, int k, int d_min, int d_max, const std::string& ham_path,
              const CommonEstimateFlags& flags, const std::string& out_path, int max_exact_n,
              bool seed_given) {
    warn_default_seed(seed_given);
    if (d_min < 2) throw DomainError("--d-min must be at least 2 (1D upper bound needs d >= 2)");
    if (d_max < d_min) throw DomainError("--d-max must be >= --d-min");
    const HamiltonianSpec spec = load_hamiltonian(ham_path);
    if (spec.n() != n || spec.q() != q)
        throw DomainError("observable file disagrees with --n/--q");

    struct TermGeometry {
        double c2;
        int hull;
        int weight;
    };
    std::vector<TermGeometry> geometry;
    for (const Term& t : spec.terms()) {
        const int hull = ring_hull_width(t.pattern, n);
        if (hull > k) {
            std::ostringstream msg;
            msg << "term support spans " << hull << " adjacent sites, more than --k " << k;
            throw DomainError(msg.str());
        }
        geometry.push_back({std::norm(t.coeff), hull, t.pattern.weight()});
    }

    std::ofstream out(out_path);
    if (!out) throw flatwalk::ParseError("cannot write file: " + out_path);
    out << "d,estimate,std_error,lower,upper,exact,vacuous_upper\n";

    std::vector<double> exact_column;
    for (int d = d_min; d <= d_max; ++d) {
        const Architecture arch = brickwork_1d(n, q, d);
        const EstimateReport est = estimate_second_moment(arch, spec, flags.to_config());

        double lower = 0.0, upper = 0.0;
        bool vacuous = false;
        for (const TermGeometry& g : geometry) {
            lower += g.c2 * coverage_lower_1d(q, n, g.hull, d);
            const CappedBound ub = coverage_upper_1d(q, n, g.hull, g.weight, d);
            upper += g.c2 * ub.value;
            vacuous = vacuous || ub.vacuous;
        }

        std::optional<double> exact;
        if (n <= max_exact_n) {
            exact = exact_second_moment(arch, spec, max_exact_n);
            exact_column.push_back(*exact);
        }

        out << d << ',' << format_sig(est.estimate) << ',' << format_sig(est.std_error) << ','
            << format_sig(lower) << ',' << format_sig(upper) << ','
            << (exact ? format_sig(*exact) : std::string{}) << ',' << (vacuous ? 1 : 0) << '\n';
    }
    out.close();
    if (!out) throw flatwalk::ParseError("failed writing " + out_path);

    for (std::size_t i = 1; i < exact_column.size(); ++i) {
        if (exact_column[i] > exact_column[i - 1] + 1e-15) {
            std::cerr << "warning: exact second moment is not monotone between depths "
                      << d_min + static_cast<int>(i) - 1 << " and " << d_min + static_cast<int>(i)
                      << '\n';
        }
    }
    std::cerr << "wrote " << out_path << '\n';
    return 0;
}

int run_haar_check(const std::string& arch_path, const std::string& pauli,
                   const std::string& sites_text, const std::string& ops_text,
                   std::uint64_t samples, std::uint64_t seed, const std::string& basis_name,
                   bool seed_given) {
    warn_default_seed(seed_given);
    const Architecture arch = load_architecture(arch_path);

    SupportPattern pattern;
    if (!pauli.empty()) {
        if (arch.q() != 2) throw DomainError("--pauli requires q = 2");
        if (static_cast<int>(pauli.size()) != arch.n())
            throw DomainError("--pauli string length must equal n");
        std::vector<std::pair<int, int>> entries;
        for (std::size_t i = 0; i < pauli.size(); ++i) {
            switch (pauli[i]) {
                case 'I': break;
                case 'X': entries.emplace_back(static_cast<int>(i), 1); break;
                case 'Y': entries.emplace_back(static_cast<int>(i), 2); break;
                case 'Z': entries.emplace_back(static_cast<int>(i), 3); break;
                default:
                    throw flatwalk::ParseError(std::string("unknown operator letter '") +
                                               pauli[i] + "'");
            }
        }
        pattern = SupportPattern(std::move(entries));
    } else {
        const std::vector<int> sites = parse_int_list(sites_text);
        const std::vector<int> ops = parse_int_list(ops_text);
        if (sites.size() != ops.size())
            throw DomainError("--sites and --ops must have equal length");
        std::vector<std::pair<int, int>> entries;
        for (std::size_t i = 0; i < sites.size(); ++i) entries.emplace_back(sites[i], ops[i]);
        pattern = SupportPattern(std::move(entries));
    }

    OperatorBasis basis = [&] {
        if (basis_name == "auto") return OperatorBasis::standard(arch.q());
        if (basis_name == "pauli") return OperatorBasis(arch.q(), OperatorBasis::Kind::pauli);
        if (basis_name == "clock-shift")
            return OperatorBasis(arch.q(), OperatorBasis::Kind::clock_shift);
        throw DomainError("basis must be auto, pauli, or clock-shift");
    }();

    const EstimateReport haar = haar_coverage(arch, pattern, basis, samples, seed);
    const double exact = exact_coverage(arch, pattern);
    const double diff = haar.estimate - exact;
    double z = 0.0;
    if (std::abs(diff) > 1e-9) z = haar.std_error > 0.0 ? diff / haar.std_error : INFINITY;

    nlohmann::ordered_json out;
    out["haar_gx"] = haar.estimate;
    out["std_error"] = haar.std_error;
    out["exact_gx"] = exact;
    out["z_score"] = z;
    out["n_samples"] = haar.n_samples;
    out["seed"] = haar.seed;
    std::cout << out.dump() << '\n';
    return 0;
}

int run_gen_1d(int n, int q, int d, const std::string& out_path) {
    const Architecture arch = brickwork_1d(n, q, d);
    save_architecture(arch, out_path);
    std::cerr << "wrote " << out_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flatness analysis of layered random-entangler circuit landscapes"};
    app.require_subcommand(1);
    int rc = 0;

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "check an architecture file");
    std::string v_arch;
    validate_cmd->add_option("arch", v_arch, "architecture JSON file")->required();
    validate_cmd->callback([&] { rc = run_validate(v_arch); });

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "Monte Carlo second-moment estimate");
    std::string e_arch, e_ham;
    CommonEstimateFlags e_flags;
    est_cmd->add_option("arch", e_arch, "architecture JSON file")->required();
    est_cmd->add_option("ham", e_ham, "observable JSON file")->required();
    est_cmd->add_option("--epsilon", e_flags.epsilon, "additive error tolerance");
    est_cmd->add_option("--delta", e_flags.delta, "failure probability");
    auto* e_seed = est_cmd->add_option("--seed", e_flags.seed, "RNG seed");
    est_cmd->add_option("--samples", e_flags.samples, "override the Hoeffding sample count");
    est_cmd->add_option("--method", e_flags.method, "biased | unbiased");
    est_cmd->add_option("--workers", e_flags.workers, "worker thread count");
    est_cmd->add_flag("--reuse-trajectory", e_flags.reuse_trajectory,
                      "variance reduction: score every term on each trajectory");
    est_cmd->callback([&] { rc = run_estimate(e_arch, e_ham, e_flags, e_seed->count() > 0); });

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "exact second moment (transfer matrix)");
    std::string x_arch, x_ham;
    int x_max_n = kDefaultTransferMatrixCap;
    exact_cmd->add_option("arch", x_arch, "architecture JSON file")->required();
    exact_cmd->add_option("ham", x_ham, "observable JSON file")->required();
    exact_cmd->add_option("--max-n", x_max_n, "site cap for the dense distribution");
    exact_cmd->callback([&] { rc = run_exact(x_arch, x_ham, x_max_n); });

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "analytic coverage bounds");
    std::string b_arch, b_support;
    std::optional<int> b_abs_x, b_k, b_r;
    bool b_one_d = false;
    int b_max_exact_n = 16;
    bounds_cmd->add_option("arch", b_arch, "architecture JSON file")->required();
    bounds_cmd->add_option("--support", b_support, "comma-separated site list")->required();
    bounds_cmd->add_option("--abs-x", b_abs_x, "pattern weight (default: support size)");
    bounds_cmd->add_flag("--one-d", b_one_d, "use the 1D brickwork bounds");
    bounds_cmd->add_option("--k", b_k, "spatial locality for the 1D bounds");
    bounds_cmd->add_option("--r", b_r, "regular connectivity when not computable");
    bounds_cmd->add_option("--max-exact-n", b_max_exact_n,
                           "site cap for exact regular connectivity");
    bounds_cmd->callback(
        [&] { rc = run_bounds(b_arch, b_support, b_abs_x, b_one_d, b_k, b_r, b_max_exact_n); });

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "brickwork depth sweep to CSV");
    int s_n = 0, s_q = 0, s_k = 0, s_d_min = 0, s_d_max = 0;
    std::string s_ham, s_out = "sweep.csv";
    CommonEstimateFlags s_flags;
    int s_max_exact_n = kDefaultTransferMatrixCap;
    sweep_cmd->add_option("--n", s_n, "site count (even)")->required();
    sweep_cmd->add_option("--q", s_q, "local dimension")->required();
    sweep_cmd->add_option("--k", s_k, "declared spatial locality of the observable")->required();
    sweep_cmd->add_option("--d-min", s_d_min, "first depth (>= 2)")->required();
    sweep_cmd->add_option("--d-max", s_d_max, "last depth")->required();
    sweep_cmd->add_option("ham", s_ham, "observable JSON file")->required();
    auto* s_seed = sweep_cmd->add_option("--seed", s_flags.seed, "RNG seed");
    sweep_cmd->add_option("--epsilon", s_flags.epsilon, "additive error tolerance");
    sweep_cmd->add_option("--delta", s_flags.delta, "failure probability");
    sweep_cmd->add_option("--samples", s_flags.samples, "override the Hoeffding sample count");
    sweep_cmd->add_option("--workers", s_flags.workers, "worker thread count");
    sweep_cmd->add_option("--out", s_out, "output CSV path");
    sweep_cmd->add_option("--max-exact-n", s_max_exact_n, "site cap for the exact column");
    sweep_cmd->callback([&] {
        rc = run_sweep(s_n, s_q, s_k, s_d_min, s_d_max, s_ham, s_flags, s_out, s_max_exact_n,
                       s_seed->count() > 0);
    });

    // haar-check
    auto* haar_cmd = app.add_subcommand("haar-check", "statevector cross-check of one pattern");
    std::string h_arch, h_pauli, h_sites, h_ops, h_basis = "auto";
    std::uint64_t h_samples = 10000, h_seed = 0;
    haar_cmd->add_option("arch", h_arch, "architecture JSON file")->required();
    haar_cmd->add_option("--pauli", h_pauli, "pattern as a Pauli string (q = 2)");
    haar_cmd->add_option("--sites", h_sites, "comma-separated pattern sites");
    haar_cmd->add_option("--ops", h_ops, "comma-separated basis indices, parallel to --sites");
    haar_cmd->add_option("--samples", h_samples, "gate-draw count");
    auto* h_seed_opt = haar_cmd->add_option("--seed", h_seed, "RNG seed");
    haar_cmd->add_option("--basis", h_basis, "auto | pauli | clock-shift");
    haar_cmd->callback([&] {
        rc = run_haar_check(h_arch, h_pauli, h_sites, h_ops, h_samples, h_seed, h_basis,
                            h_seed_opt->count() > 0);
    });

    // gen-1d
    auto* gen_cmd = app.add_subcommand("gen-1d", "generate a periodic brickwork architecture");
    int g_n = 0, g_q = 2, g_d = 1;
    std::string g_out;
    gen_cmd->add_option("--n", g_n, "site count (even)")->required();
    gen_cmd->add_option("--q", g_q, "local dimension");
    gen_cmd->add_option("--d", g_d, "layer count");
    gen_cmd->add_option("--out", g_out, "output JSON path")->required();
    gen_cmd->callback([&] { rc = run_gen_1d(g_n, g_q, g_d, g_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const flatwalk::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const flatwalk::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
