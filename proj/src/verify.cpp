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
#include <string>
#include <vector>

#include "cstn/dc.hpp"
#include "cstn/error.hpp"

namespace cstn {

namespace {

constexpr std::size_t kMaxFailures = 5;

void note(std::vector<std::string>& list, std::string msg)
{
    if (list.size() < kMaxFailures) list.push_back(std::move(msg));
}

std::string pair_name(const Cstn& g, ScenarioIndex s1, ScenarioIndex s2, std::size_t u)
{
    return "s1=\"" + g.scenario(s1).as_label().to_string() + "\" s2=\"" + g.scenario(s2).as_label().to_string() +
           "\" u=" + g.nodes()[u].id;
}

void check_domain(const Cstn& g, const ExecutionStrategy& sigma)
{
    if (sigma.scenario_count() != g.scenario_count() || sigma.node_count() != g.nodes().size())
        throw InputError("strategy shape does not match the network");
    for (std::uint64_t k = 0; k < g.scenario_count(); ++k) {
        auto s = static_cast<ScenarioIndex>(k);
        for (std::size_t v = 0; v < g.nodes().size(); ++v) {
            bool has = sigma.time(s, v).has_value();
            if (has != g.active_node(s, v))
                throw InputError("strategy " + std::string(has ? "schedules" : "omits") + " node " + g.nodes()[v].id +
                                 " in scenario \"" + g.scenario(s).as_label().to_string() + "\"");
        }
    }
}

struct RowReport {
    bool viable = true, dynamic = true, eps = true;
    std::vector<std::string> viable_failures, dynamic_failures, eps_failures;
};

void check_row(const Cstn& g, const ExecutionStrategy& sigma, const std::optional<EpsilonRational>& eps,
               const std::vector<std::pair<std::size_t, std::size_t>>& obs, ScenarioIndex s1, RowReport& r)
{
    for (std::size_t c = 0; c < g.constraints().size(); ++c) {
        if (!g.active_constraint(s1, c)) continue;
        const auto& tu = *sigma.time(s1, g.constraint_tail(c));
        const auto& tv = *sigma.time(s1, g.constraint_head(c));
        if (tv - tu > Rational(g.constraints()[c].w)) {
            r.viable = false;
            const auto& lc = g.constraints()[c];
            note(r.viable_failures, "scenario \"" + g.scenario(s1).as_label().to_string() + "\": " + lc.v + " - " +
                                        lc.u + " = " + (tv - tu).to_string() + " > " + std::to_string(lc.w));
        }
    }

    std::vector<std::size_t> delta;
    for (std::uint64_t k2 = 0; k2 < g.scenario_count(); ++k2) {
        auto s2 = static_cast<ScenarioIndex>(k2);
        if (s2 == s1) continue;
        delta.clear();
        for (const auto& [v, p] : obs) {
            if (g.truth(s1 ^ s2, p) && g.active_node(s1, v)) delta.push_back(v);
        }
        for (std::size_t u = 0; u < g.nodes().size(); ++u) {
            const auto& a = sigma.time(s1, u);
            const auto& b = sigma.time(s2, u);
            if (!a || !b) continue;

            bool first = true;
            for (auto v : delta) {
                if (*sigma.time(s1, v) < *a) {
                    first = false;
                    break;
                }
            }
            if (first && *a != *b) {
                r.dynamic = false;
                note(r.dynamic_failures, pair_name(g, s1, s2, u) + ": " + a->to_string() + " != " + b->to_string());
            }

            if (eps) {
                bool ok = *a >= *b;
                for (auto v : delta) {
                    if (ok) break;
                    if (v != u && *a >= *sigma.time(s1, v) + eps->value()) ok = true;
                }
                if (!ok) {
                    r.eps = false;
                    note(r.eps_failures, pair_name(g, s1, s2, u) + ": no observation in Delta is eps earlier");
                }
            }
        }
    }
}

std::vector<std::pair<std::size_t, std::size_t>> observations(const Cstn& g)
{
    std::vector<std::pair<std::size_t, std::size_t>> obs;
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        if (auto p = g.observed_by(v)) obs.emplace_back(v, *p);
    }
    return obs;
}

VerifyReport merge(std::vector<RowReport>& rows, bool with_eps)
{
    VerifyReport out;
    if (with_eps) out.eps_dynamic = true;
    for (auto& r : rows) {
        out.viable = out.viable && r.viable;
        out.dynamic = out.dynamic && r.dynamic;
        if (with_eps) out.eps_dynamic = *out.eps_dynamic && r.eps;
        for (auto& m : r.viable_failures) note(out.viable_failures, std::move(m));
        for (auto& m : r.dynamic_failures) note(out.dynamic_failures, std::move(m));
        for (auto& m : r.eps_failures) note(out.eps_failures, std::move(m));
    }
    return out;
}

} // namespace

VerifyReport verify_strategy(const Cstn& g, const ExecutionStrategy& sigma, const std::optional<EpsilonRational>& eps)
{
    check_domain(g, sigma);
    const auto obs = observations(g);
    const auto scenarios = static_cast<std::int64_t>(g.scenario_count());
    std::vector<RowReport> rows(static_cast<std::size_t>(scenarios));
    // Rational arithmetic can throw on overflow; capture it per row and rethrow after the loop.
    std::vector<std::string> errors(rows.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < scenarios; ++k) {
        try {
            check_row(g, sigma, eps, obs, static_cast<ScenarioIndex>(k), rows[static_cast<std::size_t>(k)]);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(k)] = e.what();
        }
    }
    for (const auto& e : errors) {
        if (!e.empty()) throw OverflowError(e);
    }
    return merge(rows, eps.has_value());
}

VerifyReport verify_strategy_serial(const Cstn& g, const ExecutionStrategy& sigma,
                                    const std::optional<EpsilonRational>& eps)
{
    check_domain(g, sigma);
    VerifyReport out;
    if (eps) out.eps_dynamic = true;
    const std::uint64_t n = g.scenario_count();

    // Viability: every arc of every restriction.
    for (std::uint64_t k = 0; k < n; ++k) {
        auto s = static_cast<ScenarioIndex>(k);
        for (std::size_t c = 0; c < g.constraints().size(); ++c) {
            if (!g.active_constraint(s, c)) continue;
            const auto& lc = g.constraints()[c];
            Rational d = *sigma.time(s, g.constraint_head(c)) - *sigma.time(s, g.constraint_tail(c));
            if (d > Rational(lc.w)) {
                out.viable = false;
                note(out.viable_failures, "scenario \"" + g.scenario(s).as_label().to_string() + "\": " + lc.v +
                                              " - " + lc.u + " = " + d.to_string() + " > " + std::to_string(lc.w));
            }
        }
    }

    for (std::uint64_t k1 = 0; k1 < n; ++k1) {
        for (std::uint64_t k2 = 0; k2 < n; ++k2) {
            if (k1 == k2) continue;
            auto s1 = static_cast<ScenarioIndex>(k1), s2 = static_cast<ScenarioIndex>(k2);
            auto delta = difference_set(g, s1, s2);
            for (std::size_t u = 0; u < g.nodes().size(); ++u) {
                if (!g.active_node(s1, u) || !g.active_node(s2, u)) continue;
                Rational a = *sigma.time(s1, u), b = *sigma.time(s2, u);
                bool first = std::all_of(delta.begin(), delta.end(), [&](auto v) { return a <= *sigma.time(s1, v); });
                if (first && a != b) {
                    out.dynamic = false;
                    note(out.dynamic_failures, pair_name(g, s1, s2, u) + ": " + a.to_string() + " != " + b.to_string());
                }
                if (!eps) continue;
                Rational bound = b;
                for (auto v : delta) {
                    if (v != u) bound = std::min(bound, *sigma.time(s1, v) + eps->value());
                }
                if (a < bound) {
                    out.eps_dynamic = false;
                    note(out.eps_failures, pair_name(g, s1, s2, u) + ": no observation in Delta is eps earlier");
                }
            }
        }
    }
    return out;
}

ExecutionStrategy strategy_from_schedule(const Cstn& g, const ExpandedIndex& index, const HytnSchedule& phi)
{
    if (phi.size() < index.size()) throw InputError("schedule does not cover the expansion");
    ExecutionStrategy sigma(g.scenario_count(), g.nodes().size());
    for (std::size_t i = 0; i < index.size(); ++i) sigma.set(index.scenario_of(i), index.node_of(i), phi[i]);
    return sigma;
}

HytnSchedule schedule_from_strategy(const ExpandedIndex& index, const ExecutionStrategy& sigma)
{
    HytnSchedule phi;
    phi.reserve(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto& t = sigma.time(index.scenario_of(i), index.node_of(i));
        if (!t) throw InputError("strategy leaves an expanded node unscheduled");
        phi.push_back(*t);
    }
    return phi;
}

} // namespace cstn
