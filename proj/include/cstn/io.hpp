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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cstn/dc.hpp"
#include "cstn/hytn.hpp"
#include "cstn/network.hpp"

namespace cstn {

/**
 * Network document, one record per line, '#' starts a comment:
 *
 *   propositions p q
 *   node A
 *   node Op observes p
 *   node B label "p -q"
 *   constraint A B 3 label "p -q"     # B - A <= 3 under p and not q
 *
 * Syntax errors carry "name:line:col". With check_wd the well-definedness
 * rules are applied afterwards and all violations are reported together.
 */
Cstn parse_cstn(std::string_view text, std::string_view source = "<input>", bool check_wd = true);
Cstn read_cstn_file(const std::string& path, bool check_wd = true);
/// Canonical form; parse_cstn(serialize_cstn(g)) == g.
std::string serialize_cstn(const Cstn& g);

/**
 * Strategy document: for each scenario a header `scenario "<label>"` naming
 * every proposition, then one `<node> N/D` line per node of V+_s.
 */
ExecutionStrategy parse_strategy(const Cstn& g, std::string_view text, std::string_view source = "<input>");
ExecutionStrategy read_strategy_file(const Cstn& g, const std::string& path);
std::string serialize_strategy(const Cstn& g, const ExecutionStrategy& sigma);

std::string export_dot(const Cstn& g);
/// One point-shaped junction per hyperarc: tail -> junction -> each head.
std::string export_dot(const Hytn& h);

/**
 * Steps through a strategy in time order. An event is executed once its time
 * is the same in every scenario still consistent with the outcomes seen so
 * far; observations executed in a step must be answered before the next one.
 */
class Simulator {
public:
    struct Step {
        Rational time;
        std::vector<std::size_t> events;
    };

    Simulator(const Cstn& g, const ExecutionStrategy& sigma);

    bool finished() const;
    /// Executes the next batch of events. Throws InputError if the strategy
    /// disagrees on the earliest event across consistent scenarios.
    Step step();
    /// Propositions whose observer was just executed and are still undecided.
    const std::vector<std::size_t>& pending() const { return pending_; }
    void observe(std::size_t prop, bool value);

    std::vector<ScenarioIndex> consistent() const;
    const std::vector<std::optional<Rational>>& schedule() const { return done_; }
    /// Conjunction of the outcomes observed so far.
    Label realized() const;
    /// Checks the executed events against the restriction of a consistent scenario.
    bool reverify() const;

private:
    const Cstn* g_;
    const ExecutionStrategy* sigma_;
    std::vector<std::optional<bool>> outcome_;
    std::vector<std::optional<Rational>> done_;
    std::vector<std::size_t> pending_;
};

/// Interactive session on streams. Returns 0 when the run completes and re-verifies, 1 otherwise, 2 on abort.
int simulate_repl(const Cstn& g, const ExecutionStrategy& sigma, std::istream& in, std::ostream& out);
/// Tree view of a strategy: shared events once, branching at each observation.
std::string render_strategy_tree(const Cstn& g, const ExecutionStrategy& sigma);

} // namespace cstn
