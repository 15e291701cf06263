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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cstn/hytn.hpp"

namespace cstn {

enum class Owner : std::uint8_t { Max, Min };

inline constexpr std::int64_t kInfiniteEnergy = std::numeric_limits<std::int64_t>::max();

/**
 * Two-player game graph. Max is the scheduler (it picks a head), Min the
 * adversary (it picks which constraint to challenge). Edges are kept in
 * insertion order; out/in adjacency is built on demand by the solver.
 */
class Mpg {
public:
    struct Edge {
        std::uint32_t from;
        std::uint32_t to;
        std::int64_t weight;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    std::uint32_t add_node(std::string name, Owner owner);
    void add_edge(std::uint32_t from, std::uint32_t to, std::int64_t weight);

    std::size_t node_count() const { return owners_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Owner>& owners() const { return owners_; }
    const std::vector<Edge>& edges() const { return edges_; }
    Owner owner(std::uint32_t v) const { return owners_[v]; }

    /// Throws InputError if some node has no outgoing edge.
    void require_total() const;

private:
    std::vector<std::string> names_;
    std::vector<Owner> owners_;
    std::vector<Edge> edges_;
};

/// Writes one edge per line: "<from> <owner of from> <to> <weight>".
void write_edge_list(std::ostream& os, const Mpg& g);

/**
 * Game for HyTN consistency. Nodes [0, |V|) are the Min-owned HyTN nodes in
 * order, followed by one Max node per hyperarc in order, followed by a Max
 * companion (0-weight two-cycle) for every HyTN node with no outgoing hyperarc.
 */
Mpg hytn_to_mpg(const Hytn& h);

struct EnergyOptions {
    /// Use |V_G| * W_max as the cap instead of the tighter path-drop bound.
    bool worst_cap_only = false;
};

struct EnergyFunction {
    std::vector<std::int64_t> value;  ///< kInfiniteEnergy stands for TOP
    LiftStats stats;

    bool finite(std::uint32_t v) const { return value[v] != kInfiniteEnergy; }
};

/// |V_G| * max |w|, at least 0.
std::int64_t worst_energy_cap(const Mpg& g);
/// Upper bound on any finite least energy via the largest negative drop of a simple path.
std::int64_t path_drop_bound(const Mpg& g);

/**
 * Least fixpoint of the energy lifting operator:
 *   Min node: E(u) = max over edges (u,v,w) of max(0, E(v) - w)
 *   Max node: E(u) = min over edges (u,v,w) of max(0, E(v) - w)
 * with values above the cap promoted to TOP.
 */
EnergyFunction solve_energy(const Mpg& g, const EnergyOptions& opts = {});

/**
 * Enumerates positional Max strategies. Max wins at n under a strategy iff
 * no negative cycle is reachable from n once Max's choices are fixed.
 * Throws CapacityError if there are more than max_strategies strategies.
 */
std::vector<bool> brute_force_mpg(const Mpg& g, std::uint64_t max_strategies = std::uint64_t{1} << 16);

} // namespace cstn
