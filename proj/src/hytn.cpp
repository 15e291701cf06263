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

#include "cstn/hytn.hpp"

#include <algorithm>
#include <cstdlib>

#include "cstn/error.hpp"
#include "cstn/mpg.hpp"

namespace cstn {

void Hytn::add_hyperarc(std::uint32_t tail, std::span<const Head> heads)
{
    if (heads.empty()) throw InputError("hyperarc with no heads");
    if (tail >= nodes_.size()) throw InputError("hyperarc tail out of range");
    for (std::size_t i = 0; i < heads.size(); ++i) {
        if (heads[i].node >= nodes_.size()) throw InputError("hyperarc head out of range");
        if (heads.size() > 1 && heads[i].node == tail)
            throw InputError("hyperarc tail " + nodes_[tail] + " is also one of its heads");
        for (std::size_t j = 0; j < i; ++j) {
            if (heads[j].node == heads[i].node) throw InputError("duplicate head " + nodes_[heads[i].node]);
        }
    }
    tails_.push_back(tail);
    heads_.insert(heads_.end(), heads.begin(), heads.end());
    offsets_.push_back(heads_.size());
}

void Hytn::append_unchecked(std::span<const std::uint32_t> tails, std::span<const std::size_t> sizes,
                            std::span<const Head> heads)
{
    tails_.insert(tails_.end(), tails.begin(), tails.end());
    heads_.insert(heads_.end(), heads.begin(), heads.end());
    std::size_t at = offsets_.back();
    for (auto s : sizes) offsets_.push_back(at += s);
}

std::size_t Hytn::size_measure() const
{
    std::size_t m = 0;
    for (std::size_t a = 0; a < hyperarc_count(); ++a) {
        auto hs = heads(a);
        bool loop = hs.size() == 1 && hs[0].node == tails_[a];
        m += hs.size() + (loop ? 0 : 1);
    }
    return m;
}

std::int64_t Hytn::max_abs_weight() const
{
    std::int64_t w = 0;
    for (const auto& h : heads_) w = std::max(w, h.weight < 0 ? -h.weight : h.weight);
    return w;
}

bool verify_hytn_schedule(const Hytn& h, const HytnSchedule& phi, std::int64_t scale)
{
    if (phi.size() != h.node_count())
        throw InputError("schedule covers " + std::to_string(phi.size()) + " of " + std::to_string(h.node_count()) + " nodes");
    if (scale <= 0) throw InputError("weight scale must be positive");
    for (std::size_t a = 0; a < h.hyperarc_count(); ++a) {
        const Rational& t = phi[h.tail(a)];
        bool ok = false;
        for (const auto& hd : h.heads(a)) {
            if (t >= phi[hd.node] - Rational(hd.weight, scale)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

HytnResult check_hytn_consistency(const Hytn& h)
{
    Mpg game = hytn_to_mpg(h);
    EnergyFunction e = solve_energy(game);

    HytnResult r;
    r.stats = e.stats;
    r.energy.assign(e.value.begin(), e.value.begin() + static_cast<std::ptrdiff_t>(h.node_count()));
    for (std::uint32_t v = 0; v < h.node_count(); ++v) {
        if (!e.finite(v)) r.losing.push_back(v);
    }
    r.consistent = r.losing.empty();
    if (r.consistent) {
        HytnSchedule phi;
        phi.reserve(h.node_count());
        for (std::uint32_t v = 0; v < h.node_count(); ++v) phi.emplace_back(e.value[v]);
        if (!verify_hytn_schedule(h, phi)) throw InternalError("energy-derived schedule is not feasible");
        r.schedule = std::move(phi);
    }
    return r;
}

} // namespace cstn
