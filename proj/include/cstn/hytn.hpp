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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cstn/rational.hpp"

namespace cstn {

struct Head {
    std::uint32_t node;
    std::int64_t weight;

    friend bool operator==(const Head&, const Head&) = default;
};

/**
 * Hyper temporal network with integer head weights.
 *
 * Hyperarc a stands for phi(tail) >= min over heads h of phi(h) - w(h).
 * Storage is flat: heads of hyperarc a are heads_[offsets_[a] .. offsets_[a+1]).
 * A head may equal the tail only for a single-head arc (a standard self-loop).
 */
class Hytn {
public:
    Hytn() = default;
    explicit Hytn(std::vector<std::string> nodes) : nodes_(std::move(nodes)) {}

    const std::vector<std::string>& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t hyperarc_count() const { return tails_.size(); }

    std::uint32_t tail(std::size_t a) const { return tails_[a]; }
    std::span<const Head> heads(std::size_t a) const
    {
        return {heads_.data() + offsets_[a], heads_.data() + offsets_[a + 1]};
    }

    /// Throws InputError on unknown nodes, empty heads, duplicate heads or a tail among several heads.
    void add_hyperarc(std::uint32_t tail, std::span<const Head> heads);
    void add_arc(std::uint32_t tail, std::uint32_t head, std::int64_t w)
    {
        Head h{head, w};
        add_hyperarc(tail, std::span<const Head>(&h, 1));
    }
    /// Appends pre-validated flat storage; used by the parallel builders.
    void append_unchecked(std::span<const std::uint32_t> tails, std::span<const std::size_t> sizes,
                          std::span<const Head> heads);

    /// m_A = sum over hyperarcs of |heads u {tail}|.
    std::size_t size_measure() const;
    /// W = max |w_A(v)|.
    std::int64_t max_abs_weight() const;

    friend bool operator==(const Hytn&, const Hytn&) = default;

private:
    std::vector<std::string> nodes_;
    std::vector<std::uint32_t> tails_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Head> heads_;
};

/// Node-indexed rational times.
using HytnSchedule = std::vector<Rational>;

/**
 * Exact check of every hyperarc with weights read as w / scale.
 * Throws InputError when phi does not cover every node.
 */
bool verify_hytn_schedule(const Hytn& h, const HytnSchedule& phi, std::int64_t scale = 1);

struct LiftStats {
    std::uint64_t lifts = 0;          ///< number of strict value increases
    std::int64_t worst_cap = 0;        ///< |V_G| * W_max
    std::int64_t cap = 0;             ///< cap actually used (<= worst_cap)
    std::size_t game_nodes = 0;
    std::size_t game_edges = 0;
};

struct HytnResult {
    bool consistent = false;
    /// Present iff consistent; integral and feasible.
    std::optional<HytnSchedule> schedule;
    /// Node indices whose energy is infinite; empty iff consistent.
    std::vector<std::uint32_t> losing;
    /// Energy per HyTN node, kInfiniteEnergy for losing ones.
    std::vector<std::int64_t> energy;
    LiftStats stats;
};

HytnResult check_hytn_consistency(const Hytn& h);

} // namespace cstn
