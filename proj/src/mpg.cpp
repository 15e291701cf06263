/*
 * Copyright 2026 The cstn-dc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cstn/mpg.hpp"

#include <algorithm>
#include <ostream>

#include "cstn/error.hpp"

namespace cstn {

std::uint32_t Mpg::add_node(std::string name, Owner owner)
{
    names_.push_back(std::move(name));
    owners_.push_back(owner);
    return static_cast<std::uint32_t>(owners_.size() - 1);
}

void Mpg::add_edge(std::uint32_t from, std::uint32_t to, std::int64_t weight)
{
    if (from >= node_count() || to >= node_count()) throw InputError("game edge endpoint out of range");
    edges_.push_back({from, to, weight});
}

void Mpg::require_total() const
{
    std::vector<bool> has_out(node_count(), false);
    for (const auto& e : edges_) has_out[e.from] = true;
    for (std::size_t v = 0; v < node_count(); ++v) {
        if (!has_out[v]) throw InputError("game node " + names_[v] + " has no outgoing edge");
    }
}

void write_edge_list(std::ostream& os, const Mpg& g)
{
    for (const auto& e : g.edges()) {
        os << g.names()[e.from] << ' ' << (g.owner(e.from) == Owner::Max ? "max" : "min") << ' ' << g.names()[e.to]
           << ' ' << e.weight << '\n';
    }
}

Mpg hytn_to_mpg(const Hytn& h)
{
    Mpg g;
    for (const auto& name : h.nodes()) g.add_node(name, Owner::Min);
    std::vector<bool> has_out(h.node_count(), false);
    for (std::size_t a = 0; a < h.hyperarc_count(); ++a) {
        auto node = g.add_node("#a" + std::to_string(a), Owner::Max);
        g.add_edge(h.tail(a), node, 0);
        has_out[h.tail(a)] = true;
        for (const auto& hd : h.heads(a)) g.add_edge(node, hd.node, hd.weight);
    }
    // A constraint-free event cannot be challenged: close it off with a 0-weight two-cycle.
    for (std::uint32_t v = 0; v < h.node_count(); ++v) {
        if (has_out[v]) continue;
        auto c = g.add_node("#sink:" + h.nodes()[v], Owner::Max);
        g.add_edge(v, c, 0);
        g.add_edge(c, v, 0);
    }
    return g;
}

namespace {

struct Csr {
    std::vector<std::size_t> offset;
    std::vector<std::uint32_t> other;
    std::vector<std::int64_t> weight;

    std::size_t begin(std::uint32_t v) const { return offset[v]; }
    std::size_t end(std::uint32_t v) const { return offset[v + 1]; }
};

Csr build_csr(const Mpg& g, bool reverse)
{
    Csr c;
    const std::size_t n = g.node_count();
    c.offset.assign(n + 1, 0);
    for (const auto& e : g.edges()) ++c.offset[(reverse ? e.to : e.from) + 1];
    for (std::size_t v = 0; v < n; ++v) c.offset[v + 1] += c.offset[v];
    c.other.resize(g.edges().size());
    c.weight.resize(g.edges().size());
    std::vector<std::size_t> fill(c.offset.begin(), c.offset.end() - 1);
    for (const auto& e : g.edges()) {
        auto at = fill[reverse ? e.to : e.from]++;
        c.other[at] = reverse ? e.from : e.to;
        c.weight[at] = e.weight;
    }
    return c;
}

std::int64_t sat_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) return kInfiniteEnergy - 1;
    return std::min(r, kInfiniteEnergy - 1);
}

std::int64_t drop(std::int64_t w) { return w < 0 ? -w : 0; }

} // namespace

std::int64_t worst_energy_cap(const Mpg& g)
{
    std::int64_t w = 0;
    for (const auto& e : g.edges()) w = std::max(w, e.weight < 0 ? -e.weight : e.weight);
    std::int64_t r;
    if (__builtin_mul_overflow(static_cast<std::int64_t>(g.node_count()), w, &r)) return kInfiniteEnergy - 1;
    return std::min(r, kInfiniteEnergy - 1);
}

std::int64_t path_drop_bound(const Mpg& g)
{
    // Group every node whose only incoming edge comes from a distinct node p
    // under p. A simple path meets a group along one downward chain, except
    // for the group it starts in, which it may enter mid-chain.
    const std::size_t n = g.node_count();
    Csr out = build_csr(g, false);
    std::vector<std::uint32_t> indeg(n, 0);
    std::vector<std::uint32_t> parent(n, 0);
    for (const auto& e : g.edges()) {
        ++indeg[e.to];
        parent[e.to] = e.from;
    }
    auto grouped = [&](std::uint32_t v) { return indeg[v] == 1 && parent[v] != v; };

    std::vector<std::int64_t> best(n, -1);
    std::vector<std::uint32_t> stack;
    auto solve = [&](std::uint32_t root) {
        // post-order over the single-predecessor forest below root
        stack.push_back(root);
        while (!stack.empty()) {
            auto v = stack.back();
            bool ready = true;
            for (auto i = out.begin(v); i < out.end(v); ++i) {
                auto y = out.other[i];
                if (grouped(y) && parent[y] == v && best[y] < 0) {
                    stack.push_back(y);
                    ready = false;
                }
            }
            if (!ready) continue;
            stack.pop_back();
            if (best[v] >= 0) continue;
            std::int64_t b = 0;
            for (auto i = out.begin(v); i < out.end(v); ++i) {
                auto y = out.other[i];
                std::int64_t below = (grouped(y) && parent[y] == v) ? best[y] : 0;
                b = std::max(b, sat_add(drop(out.weight[i]), below));
            }
            best[v] = b;
        }
    };

    std::int64_t total = 0, partial = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (grouped(v)) continue;
        solve(v);
        total = sat_add(total, best[v]);
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        if (best[v] >= 0) {
            partial = std::max(partial, best[v]);
            continue;
        }
        // on a cycle of single-predecessor nodes unreachable from any root
        std::int64_t b = 0;
        for (auto i = out.begin(v); i < out.end(v); ++i) b = std::max(b, drop(out.weight[i]));
        total = sat_add(total, b);
    }
    return sat_add(total, partial);
}

EnergyFunction solve_energy(const Mpg& g, const EnergyOptions& opts)
{
    g.require_total();
    const std::size_t n = g.node_count();
    Csr out = build_csr(g, false);
    Csr in = build_csr(g, true);

    EnergyFunction ef;
    ef.stats.game_nodes = n;
    ef.stats.game_edges = g.edges().size();
    ef.stats.worst_cap = worst_energy_cap(g);
    ef.stats.cap = opts.worst_cap_only ? ef.stats.worst_cap : std::min(ef.stats.worst_cap, path_drop_bound(g));
    const std::int64_t cap = ef.stats.cap;

    auto& E = ef.value;
    E.assign(n, 0);

    auto lifted = [cap](std::int64_t e, std::int64_t w) -> std::int64_t {
        if (e == kInfiniteEnergy) return kInfiniteEnergy;
        __int128 d = static_cast<__int128>(e) - w;
        if (d <= 0) return 0;
        if (d > cap) return kInfiniteEnergy;
        return static_cast<std::int64_t>(d);
    };
    auto eval = [&](std::uint32_t v) {
        bool is_min = g.owner(v) == Owner::Min;
        std::int64_t best = is_min ? 0 : kInfiniteEnergy;
        for (auto i = out.begin(v); i < out.end(v); ++i) {
            auto x = lifted(E[out.other[i]], out.weight[i]);
            best = is_min ? std::max(best, x) : std::min(best, x);
        }
        return best;
    };

    // FIFO of nodes whose value changed and whose predecessors must be re-examined.
    std::vector<std::uint32_t> ring(n + 1);
    std::size_t head = 0, tail = 0;
    std::vector<bool> queued(n, false);
    auto push = [&](std::uint32_t v) {
        if (queued[v]) return;
        queued[v] = true;
        ring[tail] = v;
        tail = (tail + 1) % ring.size();
    };

    for (std::uint32_t v = 0; v < n; ++v) {
        auto x = eval(v);
        if (x > E[v]) {
            E[v] = x;
            ++ef.stats.lifts;
            push(v);
        }
    }
    while (head != tail) {
        auto v = ring[head];
        head = (head + 1) % ring.size();
        queued[v] = false;
        for (auto i = in.begin(v); i < in.end(v); ++i) {
            auto p = in.other[i];
            if (E[p] == kInfiniteEnergy) continue;
            auto cand = lifted(E[v], in.weight[i]);
            if (cand <= E[p]) continue;
            if (g.owner(p) == Owner::Max) cand = eval(p);
            if (cand > E[p]) {
                E[p] = cand;
                ++ef.stats.lifts;
                push(p);
            }
        }
    }
    return ef;
}

std::vector<bool> brute_force_mpg(const Mpg& g, std::uint64_t max_strategies)
{
    g.require_total();
    const std::size_t n = g.node_count();
    Csr out = build_csr(g, false);

    std::vector<std::uint32_t> max_nodes;
    std::uint64_t count = 1;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (g.owner(v) != Owner::Max) continue;
        max_nodes.push_back(v);
        auto deg = out.end(v) - out.begin(v);
        if (count > max_strategies / deg) throw CapacityError("too many positional strategies for brute force");
        count *= deg;
    }
    if (count > max_strategies) throw CapacityError("too many positional strategies for brute force");

    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    constexpr std::int64_t floor_value = -(std::int64_t{1} << 50);
    std::vector<bool> wins(n, false);
    std::vector<std::size_t> choice(max_nodes.size(), 0);
    std::vector<std::int64_t> d(n * n);

    for (std::uint64_t s = 0; s < count; ++s) {
        std::fill(d.begin(), d.end(), inf);
        std::size_t mi = 0;
        for (std::uint32_t v = 0; v < n; ++v) {
            auto lo = out.begin(v), hi = out.end(v);
            if (g.owner(v) == Owner::Max) {
                lo = out.begin(v) + choice[mi++];
                hi = lo + 1;
            }
            for (auto i = lo; i < hi; ++i) {
                auto& cell = d[v * n + out.other[i]];
                cell = std::min(cell, out.weight[i]);
            }
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                if (d[i * n + k] == inf) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (d[k * n + j] == inf) continue;
                    auto via = std::max(d[i * n + k] + d[k * n + j], floor_value);
                    if (via < d[i * n + j]) d[i * n + j] = via;
                }
            }
        for (std::size_t v = 0; v < n; ++v) {
            if (wins[v]) continue;
            bool ok = d[v * n + v] >= 0 || d[v * n + v] == inf;
            for (std::size_t c = 0; c < n && ok; ++c) {
                if (d[v * n + c] != inf && d[c * n + c] < 0) ok = false;
            }
            if (ok) wins[v] = true;
        }
        // next strategy in mixed radix
        for (std::size_t i = 0; i < max_nodes.size(); ++i) {
            auto deg = out.end(max_nodes[i]) - out.begin(max_nodes[i]);
            if (++choice[i] < deg) break;
            choice[i] = 0;
        }
    }
    return wins;
}

} // namespace cstn
