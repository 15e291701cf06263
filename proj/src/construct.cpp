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

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "cstn/dc.hpp"
#include "cstn/error.hpp"

namespace cstn {

EpsilonRational::EpsilonRational(std::int64_t numerator, std::int64_t denominator)
{
    if (numerator < 1 || denominator < 1)
        throw InputError("epsilon must be N/D with N, D >= 1, got " + std::to_string(numerator) + "/" +
                         std::to_string(denominator));
    value_ = Rational(numerator, denominator);
}

EpsilonRational EpsilonRational::parse(std::string_view text)
{
    Rational r = Rational::parse(text);
    if (r <= Rational(0)) throw InputError("epsilon must be positive, got " + std::string(text));
    return EpsilonRational(r);
}

EpsilonRational dc_epsilon(const Cstn& g)
{
    auto events = std::max<std::uint64_t>(g.nodes().size(), 1);
    auto denom = g.scenario_count() * events;
    if (denom > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw OverflowError("|Sigma_P||V| does not fit in 64 bits");
    return EpsilonRational(1, static_cast<std::int64_t>(denom));
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::DC: return "DC";
    case Verdict::NotDC: return "NotDC";
    case Verdict::EpsDC: return "EpsDC";
    case Verdict::NotEpsDC: return "NotEpsDC";
    }
    return "?";
}

namespace {

struct ArcBuffer {
    std::vector<std::uint32_t> tails;
    std::vector<std::size_t> sizes;
    std::vector<Head> heads;
};

std::uint64_t alpha_count(const Cstn& g)
{
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        std::uint64_t c = 0;
        for (std::uint64_t k = 0; k < g.scenario_count(); ++k) c += g.active_node(static_cast<ScenarioIndex>(k), v);
        total += c * (c > 0 ? c - 1 : 0);
    }
    return total;
}

/// Common part: expansion index, scaled standard arcs, capacity checks.
EpsilonHytn begin_h(const Cstn& g, const EpsilonRational& eps, const ExpansionLimits& limits)
{
    EpsilonHytn h;
    h.index = ExpandedIndex(g, limits);
    h.eps = eps;
    h.scale = eps.denominator();

    std::vector<std::string> names;
    names.reserve(h.index.size());
    for (std::size_t i = 0; i < h.index.size(); ++i) names.push_back(expanded_name(g, h.index.scenario_of(i), h.index.node_of(i)));
    h.hytn = Hytn(std::move(names));

    std::uint64_t alphas = alpha_count(g);
    std::uint64_t standard_bound = g.scenario_count() * g.constraints().size();
    if (alphas + standard_bound > limits.max_hyperarcs)
        throw CapacityError("H_eps needs up to " + std::to_string(alphas + standard_bound) + " hyperarcs, limit is " +
                            std::to_string(limits.max_hyperarcs));

    std::vector<std::int64_t> scaled;
    scaled.reserve(g.constraints().size());
    for (const auto& c : g.constraints()) scaled.push_back(checked_mul(c.w, h.scale));

    for (std::uint64_t k = 0; k < h.index.scenario_count(); ++k) {
        auto s = static_cast<ScenarioIndex>(k);
        for (std::size_t c = 0; c < g.constraints().size(); ++c) {
            if (!g.active_constraint(s, c)) continue;
            auto u = h.index.slot(s, g.constraint_tail(c));
            auto v = h.index.slot(s, g.constraint_head(c));
            if (u < 0 || v < 0) throw InputError("constraint active on a scenario where an endpoint is absent (WD1)");
            if (u == v && scaled[c] >= 0) continue;
            h.hytn.add_arc(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), scaled[c]);
        }
    }
    h.standard_arcs = h.hytn.hyperarc_count();
    return h;
}

/// Observation nodes with their proposition index, in node order.
std::vector<std::pair<std::size_t, std::size_t>> observation_nodes(const Cstn& g)
{
    std::vector<std::pair<std::size_t, std::size_t>> obs;
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        if (auto p = g.observed_by(v)) obs.emplace_back(v, *p);
    }
    return obs;
}

/// All alpha hyperarcs with tail scenario s1.
void alpha_row(const Cstn& g, const EpsilonHytn& h, const std::vector<std::pair<std::size_t, std::size_t>>& obs,
               ScenarioIndex s1, ArcBuffer& out)
{
    const std::int64_t minus_n = -h.eps.numerator();
    const std::size_t events = g.nodes().size();
    std::vector<std::size_t> delta;
    for (std::uint64_t k2 = 0; k2 < h.index.scenario_count(); ++k2) {
        auto s2 = static_cast<ScenarioIndex>(k2);
        if (s2 == s1) continue;
        delta.clear();
        ScenarioIndex diff = s1 ^ s2;
        for (const auto& [v, p] : obs) {
            if (g.truth(diff, p) && h.index.slot(s1, v) >= 0) delta.push_back(v);
        }
        for (std::size_t u = 0; u < events; ++u) {
            auto tail = h.index.slot(s1, u);
            auto twin = h.index.slot(s2, u);
            if (tail < 0 || twin < 0) continue;
            std::size_t n = 1;
            out.heads.push_back({static_cast<std::uint32_t>(twin), 0});
            for (auto v : delta) {
                if (v == u) continue;
                out.heads.push_back({static_cast<std::uint32_t>(h.index.slot(s1, v)), minus_n});
                ++n;
            }
            out.tails.push_back(static_cast<std::uint32_t>(tail));
            out.sizes.push_back(n);
        }
    }
}

} // namespace

EpsilonHytn construct_h_epsilon(const Cstn& g, const EpsilonRational& eps, const ExpansionLimits& limits)
{
    EpsilonHytn h = begin_h(g, eps, limits);
    const auto obs = observation_nodes(g);
    const auto scenarios = static_cast<std::int64_t>(h.index.scenario_count());
    std::vector<ArcBuffer> rows(static_cast<std::size_t>(scenarios));

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < scenarios; ++k) {
        alpha_row(g, h, obs, static_cast<ScenarioIndex>(k), rows[static_cast<std::size_t>(k)]);
    }

    for (auto& row : rows) {
        h.hytn.append_unchecked(row.tails, row.sizes, row.heads);
        row = ArcBuffer{};
    }
    h.alpha_arcs = h.hytn.hyperarc_count() - h.standard_arcs;
    return h;
}

EpsilonHytn construct_h_epsilon_serial(const Cstn& g, const EpsilonRational& eps, const ExpansionLimits& limits)
{
    EpsilonHytn h = begin_h(g, eps, limits);
    const std::int64_t minus_n = -eps.numerator();
    for (std::uint64_t k1 = 0; k1 < h.index.scenario_count(); ++k1) {
        for (std::uint64_t k2 = 0; k2 < h.index.scenario_count(); ++k2) {
            if (k1 == k2) continue;
            auto s1 = static_cast<ScenarioIndex>(k1), s2 = static_cast<ScenarioIndex>(k2);
            auto delta = difference_set(g, s1, s2);
            for (std::size_t u = 0; u < g.nodes().size(); ++u) {
                auto tail = h.index.slot(s1, u), twin = h.index.slot(s2, u);
                if (tail < 0 || twin < 0) continue;
                std::vector<Head> heads{{static_cast<std::uint32_t>(twin), 0}};
                for (auto v : delta) {
                    if (v != u) heads.push_back({static_cast<std::uint32_t>(h.index.slot(s1, v)), minus_n});
                }
                h.hytn.add_hyperarc(static_cast<std::uint32_t>(tail), heads);
            }
        }
    }
    h.alpha_arcs = h.hytn.hyperarc_count() - h.standard_arcs;
    return h;
}

} // namespace cstn
