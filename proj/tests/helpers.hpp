#pragma once

#include <numeric>
#include <vector>

#include "flatwalk/architecture.hpp"
#include "flatwalk/hamiltonian.hpp"
#include "flatwalk/rng.hpp"

namespace testutil {

using flatwalk::Architecture;
using flatwalk::Gate;
using flatwalk::Rng;
using flatwalk::SupportPattern;

inline Architecture single_gate(int q = 2) { return Architecture(2, q, {{{0, 1}}}); }

/// Layered n=6 fixture with m=8 gates over d=3 layers and regular
/// connectivity 2 (the shape used in docs and tests).
inline Architecture layered_fixture() {
    return Architecture(6, 2,
                        {{{0, 1}, {2, 3}, {4, 5}}, {{1, 2}, {3, 4}}, {{0, 1}, {2, 3}, {4, 5}}},
                        36);
}

/// Valid random architecture: a coverage layer pairing consecutive sites,
/// then random disjoint-pair layers up to at most max_m gates total.
inline Architecture random_architecture(Rng& rng, int n, int q, int max_m) {
    std::vector<std::vector<Gate>> layers;
    int placed = 0;

    std::vector<Gate> base;
    for (int s = 0; s + 1 < n; s += 2) base.push_back({s, s + 1});
    placed += static_cast<int>(base.size());
    layers.push_back(std::move(base));
    if (n % 2 == 1 && n > 1) {
        const int partner = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n - 1));
        layers.push_back({Gate{n - 1, partner}});
        ++placed;
    }

    if (max_m > placed) {
        const int extra =
            static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_m - placed + 1));
        const int target = placed + extra;
        while (placed < target) {
            std::vector<int> sites(static_cast<std::size_t>(n));
            std::iota(sites.begin(), sites.end(), 0);
            for (int i = n - 1; i > 0; --i) {
                const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
                std::swap(sites[static_cast<std::size_t>(i)], sites[static_cast<std::size_t>(j)]);
            }
            const int pairs =
                1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n / 2));
            std::vector<Gate> layer;
            for (int p = 0; p < pairs && placed < target; ++p) {
                layer.push_back({sites[static_cast<std::size_t>(2 * p)],
                                 sites[static_cast<std::size_t>(2 * p + 1)]});
                ++placed;
            }
            layers.push_back(std::move(layer));
        }
    }
    return Architecture(n, q, std::move(layers));
}

/// Nonempty random pattern with distinct sites and operator indices in [1, q^2-1].
inline SupportPattern random_pattern(Rng& rng, int n, int q) {
    const int weight = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n));
    std::vector<int> sites(static_cast<std::size_t>(n));
    std::iota(sites.begin(), sites.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
        std::swap(sites[static_cast<std::size_t>(i)], sites[static_cast<std::size_t>(j)]);
    }
    std::vector<std::pair<int, int>> entries;
    const int op_range = q * q - 1;
    for (int i = 0; i < weight; ++i) {
        const int op = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(op_range));
        entries.emplace_back(sites[static_cast<std::size_t>(i)], op);
    }
    return SupportPattern(std::move(entries));
}

}  // namespace testutil
