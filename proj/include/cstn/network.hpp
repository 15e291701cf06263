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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cstn/label.hpp"
#include "cstn/rational.hpp"

namespace cstn {

/// Largest |w| accepted on an input constraint.
inline constexpr std::int64_t kMaxInputWeight = 1'000'000'000;
/// Propositions beyond this make the scenario space unaddressable.
inline constexpr std::size_t kMaxPropositions = 30;

struct CstnNode {
    std::string id;
    Label label;
    std::optional<std::string> observes;

    friend bool operator==(const CstnNode&, const CstnNode&) = default;
};

/// <v - u <= w, label>
struct LabeledConstraint {
    std::string u;
    std::string v;
    std::int64_t w = 0;
    Label label;

    friend bool operator==(const LabeledConstraint&, const LabeledConstraint&) = default;
};

/// A label compiled against a proposition order: holds in scenario bits b iff (b & care) == value.
struct LabelMask {
    std::uint32_t care = 0;
    std::uint32_t value = 0;

    bool holds(std::uint32_t scenario) const { return (scenario & care) == value; }
};

/// Index of a scenario in lexicographic order over the proposition list (false before true).
using ScenarioIndex = std::uint32_t;

/**
 * Conditional simple temporal network.
 *
 * Construction checks structure only (unique ids, known references, the
 * observation bijection, weight range) and throws InputError. The semantic
 * well-definedness conditions are checked by validate_wd.
 *
 * Scenarios are addressed by ScenarioIndex: with n propositions, proposition i
 * is bit (n - 1 - i) of the index, so index order is the lexicographic order.
 */
class Cstn {
public:
    Cstn() = default;
    Cstn(std::vector<std::string> propositions, std::vector<CstnNode> nodes, std::vector<LabeledConstraint> constraints);

    const std::vector<std::string>& propositions() const { return propositions_; }
    const std::vector<CstnNode>& nodes() const { return nodes_; }
    const std::vector<LabeledConstraint>& constraints() const { return constraints_; }

    std::optional<std::size_t> node_index(std::string_view id) const;
    std::optional<std::size_t> proposition_index(std::string_view p) const;
    /// Node index of O_p for proposition index p.
    std::size_t observer(std::size_t p) const { return observer_[p]; }
    /// Proposition index observed by node v, if v is an observation event.
    std::optional<std::size_t> observed_by(std::size_t v) const;

    std::size_t constraint_tail(std::size_t c) const { return ctail_[c]; }
    std::size_t constraint_head(std::size_t c) const { return chead_[c]; }
    const LabelMask& node_mask(std::size_t v) const { return node_masks_[v]; }
    const LabelMask& constraint_mask(std::size_t c) const { return constraint_masks_[c]; }

    /// 2^|P|. Throws CapacityError if |P| exceeds kMaxPropositions.
    std::uint64_t scenario_count() const;
    Scenario scenario(ScenarioIndex k) const;
    ScenarioIndex scenario_index(const Scenario& s) const;
    bool truth(ScenarioIndex k, std::size_t p) const { return (k >> (propositions_.size() - 1 - p)) & 1U; }

    bool active_node(ScenarioIndex k, std::size_t v) const { return node_masks_[v].holds(k); }
    bool active_constraint(ScenarioIndex k, std::size_t c) const { return constraint_masks_[c].holds(k); }

    friend bool operator==(const Cstn& a, const Cstn& b)
    {
        return a.propositions_ == b.propositions_ && a.nodes_ == b.nodes_ && a.constraints_ == b.constraints_;
    }

private:
    LabelMask compile(const Label& l) const;

    std::vector<std::string> propositions_;
    std::vector<CstnNode> nodes_;
    std::vector<LabeledConstraint> constraints_;

    std::unordered_map<std::string, std::size_t> node_ix_;
    std::unordered_map<std::string, std::size_t> prop_ix_;
    std::vector<std::size_t> observer_;
    std::vector<std::size_t> ctail_, chead_;
    std::vector<LabelMask> node_masks_, constraint_masks_;
};

enum class WdRule { WD1, WD2, WD3 };

struct Violation {
    WdRule rule;
    std::string entity;  ///< node id, or "u->v" for a constraint
    std::string message;
};

std::string to_string(WdRule r);
std::string to_string(const Violation& v);

/// Empty iff WD1, WD2 and WD3 hold.
std::vector<Violation> validate_wd(const Cstn& g);
/// Stricter readings that are not errors: WD2 constraints carrying a label other than
/// exactly L(u), and negative self-loops.
std::vector<std::string> wd_warnings(const Cstn& g);
/// Throws InputError listing every violation.
void require_wd(const Cstn& g);

/// Simple temporal network; an arc (from, to, w) means phi(to) <= phi(from) + w.
struct Stn {
    struct Arc {
        std::size_t from;
        std::size_t to;
        Rational w;
        friend bool operator==(const Arc&, const Arc&) = default;
    };
    std::vector<std::string> nodes;
    std::vector<Arc> arcs;
};

std::vector<Scenario> enumerate_scenarios(const Cstn& g);

/// Gamma^+_s. Nodes keep their original ids, in network order.
Stn restrict(const Cstn& g, const Scenario& s);
Stn restrict(const Cstn& g, ScenarioIndex k);

/// Delta(s1;s2), in network node order.
std::vector<std::string> difference_set(const Cstn& g, const Scenario& s1, const Scenario& s2);
/// Index form: node indices of Delta(k1;k2).
std::vector<std::size_t> difference_set(const Cstn& g, ScenarioIndex k1, ScenarioIndex k2);

struct ExpansionLimits {
    std::uint64_t max_expanded_nodes = std::uint64_t{1} << 20;
    std::uint64_t max_hyperarcs = std::uint64_t{1} << 26;
};

/// Maps (scenario, node) pairs to expanded node slots.
class ExpandedIndex {
public:
    ExpandedIndex() = default;
    ExpandedIndex(const Cstn& g, const ExpansionLimits& limits);

    std::size_t size() const { return origin_.size(); }
    std::size_t node_count() const { return node_count_; }
    std::uint64_t scenario_count() const { return scenarios_; }
    /// Slot of v_s, or -1 when v is not in V^+_s.
    std::int64_t slot(ScenarioIndex k, std::size_t v) const { return slot_[k * node_count_ + v]; }
    ScenarioIndex scenario_of(std::size_t slot) const { return origin_[slot].first; }
    std::size_t node_of(std::size_t slot) const { return origin_[slot].second; }
    /// First slot of scenario k; slots of one scenario are contiguous.
    std::size_t scenario_begin(ScenarioIndex k) const { return begin_[k]; }
    std::size_t scenario_end(ScenarioIndex k) const { return begin_[k + 1]; }

private:
    std::size_t node_count_ = 0;
    std::uint64_t scenarios_ = 0;
    std::vector<std::int64_t> slot_;
    std::vector<std::pair<ScenarioIndex, std::size_t>> origin_;
    std::vector<std::size_t> begin_;
};

/// Name of v_s: "<id>@<scenario index>".
std::string expanded_name(const Cstn& g, ScenarioIndex k, std::size_t v);

struct Expansion {
    Stn stn;
    ExpandedIndex index;
};

/// Disjoint union of all restrictions. Throws CapacityError past the limits.
Expansion expansion(const Cstn& g, const ExpansionLimits& limits = {});

} // namespace cstn
