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

#include "cstn/network.hpp"

#include <unordered_set>

#include "cstn/error.hpp"

namespace cstn {

Cstn::Cstn(std::vector<std::string> propositions, std::vector<CstnNode> nodes, std::vector<LabeledConstraint> constraints)
    : propositions_(std::move(propositions)), nodes_(std::move(nodes)), constraints_(std::move(constraints))
{
    if (propositions_.size() > kMaxPropositions)
        throw CapacityError("too many propositions: " + std::to_string(propositions_.size()) + " > " +
                            std::to_string(kMaxPropositions));
    for (std::size_t i = 0; i < propositions_.size(); ++i) {
        if (propositions_[i].empty()) throw InputError("empty proposition name");
        if (!prop_ix_.emplace(propositions_[i], i).second)
            throw InputError("duplicate proposition '" + propositions_[i] + "'");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].id.empty()) throw InputError("empty node id");
        if (!node_ix_.emplace(nodes_[i].id, i).second) throw InputError("duplicate node id '" + nodes_[i].id + "'");
    }

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    observer_.assign(propositions_.size(), none);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        if (!n.observes) continue;
        auto p = proposition_index(*n.observes);
        if (!p) throw InputError("node '" + n.id + "' observes unknown proposition '" + *n.observes + "'");
        if (observer_[*p] != none)
            throw InputError("proposition '" + *n.observes + "' observed by both '" + nodes_[observer_[*p]].id +
                             "' and '" + n.id + "'");
        observer_[*p] = i;
    }
    for (std::size_t p = 0; p < propositions_.size(); ++p) {
        if (observer_[p] == none) throw InputError("proposition '" + propositions_[p] + "' has no observation event");
    }

    node_masks_.reserve(nodes_.size());
    for (const auto& n : nodes_) node_masks_.push_back(compile(n.label));

    for (const auto& c : constraints_) {
        auto u = node_index(c.u);
        auto v = node_index(c.v);
        if (!u) throw InputError("constraint references unknown node '" + c.u + "'");
        if (!v) throw InputError("constraint references unknown node '" + c.v + "'");
        if (c.w > kMaxInputWeight || c.w < -kMaxInputWeight)
            throw InputError("constraint " + c.u + "->" + c.v + " weight " + std::to_string(c.w) + " out of range");
        ctail_.push_back(*u);
        chead_.push_back(*v);
        constraint_masks_.push_back(compile(c.label));
    }
}

LabelMask Cstn::compile(const Label& l) const
{
    LabelMask m;
    const std::size_t n = propositions_.size();
    for (const auto& lit : l.literals()) {
        auto p = proposition_index(lit.proposition);
        if (!p) throw InputError("label mentions unknown proposition '" + lit.proposition + "'");
        std::uint32_t bit = std::uint32_t{1} << (n - 1 - *p);
        m.care |= bit;
        if (!lit.negated) m.value |= bit;
    }
    return m;
}

std::optional<std::size_t> Cstn::node_index(std::string_view id) const
{
    auto it = node_ix_.find(std::string(id));
    if (it == node_ix_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Cstn::proposition_index(std::string_view p) const
{
    auto it = prop_ix_.find(std::string(p));
    if (it == prop_ix_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Cstn::observed_by(std::size_t v) const
{
    if (!nodes_[v].observes) return std::nullopt;
    return proposition_index(*nodes_[v].observes);
}

std::uint64_t Cstn::scenario_count() const { return std::uint64_t{1} << propositions_.size(); }

Scenario Cstn::scenario(ScenarioIndex k) const
{
    Scenario::Assignment a;
    for (std::size_t p = 0; p < propositions_.size(); ++p) a.emplace(propositions_[p], truth(k, p));
    return Scenario(std::move(a));
}

ScenarioIndex Cstn::scenario_index(const Scenario& s) const
{
    if (s.assignment().size() != propositions_.size())
        throw InputError("scenario domain does not match the network's propositions");
    ScenarioIndex k = 0;
    for (std::size_t p = 0; p < propositions_.size(); ++p) {
        k = (k << 1) | (s.value(propositions_[p]) ? 1U : 0U);
    }
    return k;
}

std::string to_string(WdRule r)
{
    switch (r) {
    case WdRule::WD1: return "WD1";
    case WdRule::WD2: return "WD2";
    case WdRule::WD3: return "WD3";
    }
    return "?";
}

std::string to_string(const Violation& v) { return to_string(v.rule) + " [" + v.entity + "]: " + v.message; }

namespace {

std::string constraint_name(const LabeledConstraint& c)
{
    std::string s = c.u + "->" + c.v + " (" + std::to_string(c.w);
    if (!c.label.empty()) s += ", " + c.label.to_string();
    return s + ")";
}

} // namespace

std::vector<Violation> validate_wd(const Cstn& g)
{
    std::vector<Violation> out;
    const auto& nodes = g.nodes();

    for (std::size_t c = 0; c < g.constraints().size(); ++c) {
        const auto& k = g.constraints()[c];
        const auto& lu = nodes[g.constraint_tail(c)].label;
        const auto& lv = nodes[g.constraint_head(c)].label;
        if (!label_sub(k.label, lu))
            out.push_back({WdRule::WD1, constraint_name(k),
                           "label '" + k.label.to_string() + "' does not subsume L(" + k.u + ") = '" + lu.to_string() + "'"});
        if (!label_sub(k.label, lv))
            out.push_back({WdRule::WD1, constraint_name(k),
                           "label '" + k.label.to_string() + "' does not subsume L(" + k.v + ") = '" + lv.to_string() + "'"});
        for (const auto& lit : k.label.literals()) {
            auto p = *g.proposition_index(lit.proposition);
            const auto& obs = nodes[g.observer(p)];
            if (!label_sub(k.label, obs.label))
                out.push_back({WdRule::WD3, constraint_name(k),
                               "label mentions " + lit.proposition + " but does not subsume L(" + obs.id + ") = '" +
                                   obs.label.to_string() + "'"});
        }
    }

    for (std::size_t u = 0; u < nodes.size(); ++u) {
        const auto& lu = nodes[u].label;
        for (const auto& lit : lu.literals()) {
            auto p = *g.proposition_index(lit.proposition);
            std::size_t o = g.observer(p);
            const auto& obs = nodes[o];
            if (!label_sub(lu, obs.label))
                out.push_back({WdRule::WD2, nodes[u].id,
                               "L(" + nodes[u].id + ") does not subsume L(" + obs.id + ") = '" + obs.label.to_string() + "'"});
            bool found = false;
            for (std::size_t c = 0; c < g.constraints().size() && !found; ++c) {
                const auto& k = g.constraints()[c];
                found = g.constraint_tail(c) == u && g.constraint_head(c) == o && k.w <= -1 && label_sub(lu, k.label);
            }
            if (!found)
                out.push_back({WdRule::WD2, nodes[u].id,
                               "missing constraint <" + obs.id + " - " + nodes[u].id + " <= w, l> with w <= -1 and Sub(L(" +
                                   nodes[u].id + "), l): " + obs.id + " must precede " + nodes[u].id});
        }
    }
    return out;
}

std::vector<std::string> wd_warnings(const Cstn& g)
{
    std::vector<std::string> out;
    const auto& nodes = g.nodes();
    for (std::size_t u = 0; u < nodes.size(); ++u) {
        for (const auto& lit : nodes[u].label.literals()) {
            std::size_t o = g.observer(*g.proposition_index(lit.proposition));
            bool exact = false, loose = false;
            for (std::size_t c = 0; c < g.constraints().size(); ++c) {
                const auto& k = g.constraints()[c];
                if (g.constraint_tail(c) != u || g.constraint_head(c) != o || k.w > -1) continue;
                if (k.label == nodes[u].label) exact = true;
                else if (label_sub(nodes[u].label, k.label)) loose = true;
            }
            if (!exact && loose)
                out.push_back("WD2 [" + nodes[u].id + "]: precedence on " + nodes[o].id +
                              " is only carried by a constraint with a weaker label than L(" + nodes[u].id + ")");
        }
    }
    for (const auto& k : g.constraints()) {
        if (k.u == k.v && k.w < 0)
            out.push_back("self-loop " + constraint_name(k) + " is unsatisfiable in every scenario where its label holds");
    }
    return out;
}

void require_wd(const Cstn& g)
{
    auto v = validate_wd(g);
    if (v.empty()) return;
    std::string msg = "network is not well defined:";
    for (const auto& x : v) msg += "\n  " + to_string(x);
    throw InputError(msg);
}

std::vector<Scenario> enumerate_scenarios(const Cstn& g)
{
    std::vector<Scenario> out;
    const auto n = g.scenario_count();
    out.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) out.push_back(g.scenario(static_cast<ScenarioIndex>(k)));
    return out;
}

Stn restrict(const Cstn& g, ScenarioIndex k)
{
    Stn stn;
    std::vector<std::size_t> local(g.nodes().size(), static_cast<std::size_t>(-1));
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        if (!g.active_node(k, v)) continue;
        local[v] = stn.nodes.size();
        stn.nodes.push_back(g.nodes()[v].id);
    }
    for (std::size_t c = 0; c < g.constraints().size(); ++c) {
        if (!g.active_constraint(k, c)) continue;
        std::size_t u = local[g.constraint_tail(c)], v = local[g.constraint_head(c)];
        if (u == static_cast<std::size_t>(-1) || v == static_cast<std::size_t>(-1))
            throw InputError("constraint " + constraint_name(g.constraints()[c]) +
                             " is active on a scenario where an endpoint is absent (WD1)");
        stn.arcs.push_back({u, v, Rational(g.constraints()[c].w)});
    }
    return stn;
}

Stn restrict(const Cstn& g, const Scenario& s) { return restrict(g, g.scenario_index(s)); }

std::vector<std::size_t> difference_set(const Cstn& g, ScenarioIndex k1, ScenarioIndex k2)
{
    std::vector<std::size_t> out;
    ScenarioIndex diff = k1 ^ k2;
    if (diff == 0) return out;
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        auto p = g.observed_by(v);
        if (!p || !g.active_node(k1, v)) continue;
        if (g.truth(diff, *p)) out.push_back(v);
    }
    return out;
}

std::vector<std::string> difference_set(const Cstn& g, const Scenario& s1, const Scenario& s2)
{
    std::vector<std::string> out;
    for (auto v : difference_set(g, g.scenario_index(s1), g.scenario_index(s2))) out.push_back(g.nodes()[v].id);
    return out;
}

ExpandedIndex::ExpandedIndex(const Cstn& g, const ExpansionLimits& limits)
    : node_count_(g.nodes().size()), scenarios_(g.scenario_count())
{
    const auto bound = scenarios_ * std::max<std::uint64_t>(node_count_, 1);
    if (bound > limits.max_expanded_nodes)
        throw CapacityError("expansion needs up to " + std::to_string(bound) + " nodes (" + std::to_string(scenarios_) +
                            " scenarios x " + std::to_string(node_count_) + " events), limit is " +
                            std::to_string(limits.max_expanded_nodes));
    slot_.assign(scenarios_ * node_count_, -1);
    begin_.reserve(scenarios_ + 1);
    for (std::uint64_t k = 0; k < scenarios_; ++k) {
        begin_.push_back(origin_.size());
        for (std::size_t v = 0; v < node_count_; ++v) {
            if (!g.active_node(static_cast<ScenarioIndex>(k), v)) continue;
            slot_[k * node_count_ + v] = static_cast<std::int64_t>(origin_.size());
            origin_.emplace_back(static_cast<ScenarioIndex>(k), v);
        }
    }
    begin_.push_back(origin_.size());
}

std::string expanded_name(const Cstn& g, ScenarioIndex k, std::size_t v) { return g.nodes()[v].id + "@" + std::to_string(k); }

Expansion expansion(const Cstn& g, const ExpansionLimits& limits)
{
    Expansion ex{{}, ExpandedIndex(g, limits)};
    const auto& ix = ex.index;
    ex.stn.nodes.reserve(ix.size());
    for (std::size_t i = 0; i < ix.size(); ++i) ex.stn.nodes.push_back(expanded_name(g, ix.scenario_of(i), ix.node_of(i)));
    for (std::uint64_t k = 0; k < ix.scenario_count(); ++k) {
        auto s = static_cast<ScenarioIndex>(k);
        for (std::size_t c = 0; c < g.constraints().size(); ++c) {
            if (!g.active_constraint(s, c)) continue;
            auto u = ix.slot(s, g.constraint_tail(c));
            auto v = ix.slot(s, g.constraint_head(c));
            if (u < 0 || v < 0) throw InputError("constraint active on a scenario where an endpoint is absent (WD1)");
            ex.stn.arcs.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), Rational(g.constraints()[c].w)});
        }
    }
    return ex;
}

} // namespace cstn
