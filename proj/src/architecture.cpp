#include "flatwalk/architecture.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace flatwalk {

Architecture::Architecture(int n, int q, std::vector<std::vector<Gate>> layers,
                           std::optional<int> param_count,
                           std::optional<std::vector<double>> generator_norms, bool lenient)
    : n_(n),
      q_(q),
      layers_(std::move(layers)),
      num_gates_(0),
      param_count_(param_count),
      generator_norms_(std::move(generator_norms)),
      lenient_(lenient) {
    if (n_ < 1) throw DomainError("architecture needs at least one site");
    if (q_ < 2) throw DomainError("local dimension q must be at least 2");
    if (param_count_ && *param_count_ < 0) throw DomainError("param count must be nonnegative");
    for (const auto& layer : layers_) num_gates_ += static_cast<int>(layer.size());
}

std::optional<double> Architecture::sum_generator_norms_sq() const {
    if (generator_norms_) {
        double total = 0.0;
        for (double v : *generator_norms_) total += v * v;
        return total;
    }
    if (param_count_) return 0.25 * static_cast<double>(*param_count_);
    return std::nullopt;
}

void Architecture::ensure_valid() const {
    auto violations = validate(*this);
    if (violations.empty()) return;
    std::ostringstream msg;
    msg << "invalid architecture:";
    std::size_t shown = std::min<std::size_t>(violations.size(), 3);
    for (std::size_t i = 0; i < shown; ++i) msg << " [" << violations[i].message << "]";
    if (violations.size() > shown) msg << " (+" << violations.size() - shown << " more)";
    throw DomainError(msg.str());
}

std::vector<Violation> validate(const Architecture& arch) {
    std::vector<Violation> out;
    const int n = arch.n();
    std::vector<char> covered(static_cast<std::size_t>(n), 0);

    for (int li = 0; li < arch.depth(); ++li) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (const Gate& g : arch.layers()[static_cast<std::size_t>(li)]) {
            const bool a_ok = g.a >= 0 && g.a < n;
            const bool b_ok = g.b >= 0 && g.b < n;
            if (!a_ok || !b_ok) {
                std::ostringstream msg;
                msg << "gate (" << g.a << "," << g.b << ") in layer " << li << " out of range";
                out.push_back({"gate_out_of_range", li, a_ok ? g.b : g.a, msg.str()});
                continue;
            }
            if (g.a == g.b) {
                std::ostringstream msg;
                msg << "gate in layer " << li << " has equal endpoints " << g.a;
                out.push_back({"gate_endpoints_equal", li, g.a, msg.str()});
                continue;
            }
            for (int s : {g.a, g.b}) {
                if (seen[static_cast<std::size_t>(s)]) {
                    std::ostringstream msg;
                    msg << "site " << s << " repeated in layer " << li;
                    out.push_back({"site_repeated_in_layer", li, s, msg.str()});
                }
                seen[static_cast<std::size_t>(s)] = 1;
                covered[static_cast<std::size_t>(s)] = 1;
            }
        }
    }

    if (!arch.lenient()) {
        for (int s = 0; s < n; ++s) {
            if (!covered[static_cast<std::size_t>(s)]) {
                std::ostringstream msg;
                msg << "site " << s << " never entangled";
                out.push_back({"site_never_entangled", -1, s, msg.str()});
            }
        }
    }

    if (arch.generator_norms()) {
        const auto& norms = *arch.generator_norms();
        for (std::size_t i = 0; i < norms.size(); ++i) {
            if (norms[i] < 0.0) {
                std::ostringstream msg;
                msg << "generator norm " << i << " is negative";
                out.push_back({"generator_norm_negative", -1, -1, msg.str()});
            }
        }
        if (arch.param_count() && static_cast<std::size_t>(*arch.param_count()) != norms.size()) {
            out.push_back({"generator_norms_length", -1, -1,
                           "generator_norms length does not match param count"});
        }
    }

    return out;
}

std::pair<int, int> stats(const Architecture& arch) {
    arch.ensure_valid();
    return {arch.num_gates(), arch.depth()};
}

std::optional<int> regular_connectivity(const Architecture& arch, int max_exact_n) {
    arch.ensure_valid();
    const int n = arch.n();
    const int d = arch.depth();
    if (d == 0) throw DomainError("regular connectivity undefined for zero layers");
    if (n > max_exact_n || n > 30) return std::nullopt;  // enumeration too large
    if (n < 2) return std::nullopt;

    // Cuts are symmetric under complementation, so only subsets containing
    // site 0 need to be checked.
    int r = 1;
    const std::uint32_t half = 1u << (n - 1);
    std::vector<char> crossed(static_cast<std::size_t>(d), 0);
    for (std::uint32_t upper = 0; upper < half; ++upper) {
        const std::uint32_t subset = (upper << 1) | 1u;
        if (subset == (1u << n) - 1u) continue;  // full set is not a proper cut
        for (int li = 0; li < d; ++li) {
            char c = 0;
            for (const Gate& g : arch.layers()[static_cast<std::size_t>(li)]) {
                const bool ina = (subset >> g.a) & 1u;
                const bool inb = (subset >> g.b) & 1u;
                if (ina != inb) {
                    c = 1;
                    break;
                }
            }
            crossed[static_cast<std::size_t>(li)] = c;
        }
        int longest_gap = 0;
        int run = 0;
        bool any = false;
        for (int li = 0; li < d; ++li) {
            if (crossed[static_cast<std::size_t>(li)]) {
                any = true;
                run = 0;
            } else {
                ++run;
                longest_gap = std::max(longest_gap, run);
            }
        }
        if (!any) return std::nullopt;  // this cut is never crossed; no finite r
        r = std::max(r, longest_gap + 1);
    }
    return r;
}

namespace {

std::vector<char> membership(int n, const std::vector<int>& support, const char* what) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int s : support) {
        if (s < 0 || s >= n) throw DomainError(std::string(what) + ": site index out of range");
        in[static_cast<std::size_t>(s)] = 1;
    }
    return in;
}

}  // namespace

CutStats gates_crossing(const Architecture& arch, const std::vector<int>& support) {
    arch.ensure_valid();
    auto in = membership(arch.n(), support, "gates_crossing");
    const int size = static_cast<int>(std::count(in.begin(), in.end(), 1));
    if (size == 0 || size == arch.n())
        throw DomainError("gates_crossing: support must be a proper nonempty subset");

    CutStats cut;
    for (int s = 0; s < arch.n(); ++s)
        if (in[static_cast<std::size_t>(s)]) cut.subset.push_back(s);
    for (const auto& layer : arch.layers())
        for (const Gate& g : layer)
            if (in[static_cast<std::size_t>(g.a)] != in[static_cast<std::size_t>(g.b)])
                ++cut.gates_crossing;
    return cut;
}

Architecture brickwork_1d(int n, int q, int d) {
    if (n < 2 || n % 2 != 0) throw DomainError("brickwork needs an even number of sites, n >= 2");
    if (d < 1) throw DomainError("brickwork needs at least one layer");
    std::vector<std::vector<Gate>> layers;
    layers.reserve(static_cast<std::size_t>(d));
    for (int t = 1; t <= d; ++t) {
        std::vector<Gate> layer;
        layer.reserve(static_cast<std::size_t>(n / 2));
        for (int j = 0; j < n / 2; ++j) {
            if (t % 2 == 1) {
                layer.push_back({2 * j, 2 * j + 1});
            } else {
                layer.push_back({2 * j, (2 * j - 1 + n) % n});
            }
        }
        layers.push_back(std::move(layer));
    }
    return Architecture(n, q, std::move(layers));
}

Lightcone backward_lightcone(const Architecture& arch, const std::vector<int>& support) {
    arch.ensure_valid();
    if (support.empty()) throw DomainError("backward_lightcone: support must be nonempty");
    auto cone = membership(arch.n(), support, "backward_lightcone");

    for (int li = arch.depth() - 1; li >= 0; --li) {
        for (const Gate& g : arch.layers()[static_cast<std::size_t>(li)]) {
            if (cone[static_cast<std::size_t>(g.a)] || cone[static_cast<std::size_t>(g.b)]) {
                cone[static_cast<std::size_t>(g.a)] = 1;
                cone[static_cast<std::size_t>(g.b)] = 1;
            }
        }
    }

    Lightcone lc;
    for (int s = 0; s < arch.n(); ++s)
        if (cone[static_cast<std::size_t>(s)]) lc.sites.push_back(s);
    lc.n_prime = static_cast<int>(lc.sites.size());
    return lc;
}

}  // namespace flatwalk
