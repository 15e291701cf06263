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

#include <chrono>

#include "cstn/dc.hpp"
#include "cstn/error.hpp"

namespace cstn {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

DcReport solve(const Cstn& g, const EpsilonRational& eps, const ExpansionLimits& limits, bool dc_mode)
{
    require_wd(g);
    DcReport rep;
    rep.eps = eps;

    auto t0 = Clock::now();
    EpsilonHytn h = construct_h_epsilon(g, eps, limits);
    rep.stats.build_ms = ms_since(t0);

    rep.stats.scenarios = g.scenario_count();
    rep.stats.events = g.nodes().size();
    rep.stats.expanded_nodes = h.index.size();
    rep.stats.standard_arcs = h.standard_arcs;
    rep.stats.alpha_hyperarcs = h.alpha_arcs;
    rep.stats.hytn_size = h.hytn.size_measure();

    t0 = Clock::now();
    HytnResult res = check_hytn_consistency(h.hytn);
    rep.stats.solve_ms = ms_since(t0);
    rep.stats.game_nodes = res.stats.game_nodes;
    rep.stats.game_edges = res.stats.game_edges;
    rep.stats.lifts = res.stats.lifts;
    rep.stats.energy_cap = res.stats.cap;
    rep.stats.worst_energy_cap = res.stats.worst_cap;

    if (!res.consistent) {
        rep.verdict = dc_mode ? Verdict::NotDC : Verdict::NotEpsDC;
        for (auto v : res.losing) rep.certificate.push_back(h.hytn.nodes()[v]);
        return rep;
    }

    HytnSchedule times;
    times.reserve(res.schedule->size());
    for (const auto& t : *res.schedule) times.push_back(t / Rational(h.scale));
    ExecutionStrategy sigma = strategy_from_schedule(g, h.index, times);

    t0 = Clock::now();
    VerifyReport vr = verify_strategy(g, sigma, eps);
    rep.stats.verify_ms = ms_since(t0);
    if (!vr.viable || !vr.eps_dynamic.value_or(false) || (dc_mode && !vr.dynamic))
        throw InternalError("synthesized strategy failed verification");

    rep.verdict = dc_mode ? Verdict::DC : Verdict::EpsDC;
    rep.strategy = std::move(sigma);
    return rep;
}

} // namespace

DcReport check_edc(const Cstn& g, const EpsilonRational& eps, const ExpansionLimits& limits)
{
    return solve(g, eps, limits, false);
}

DcReport check_dc(const Cstn& g, const ExpansionLimits& limits)
{
    return solve(g, dc_epsilon(g), limits, true);
}

} // namespace cstn
