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

#include "cstn/dc.hpp"
#include "cstn/error.hpp"

namespace cstn {

RoundingContext rounding_context(const Cstn& g, const EpsilonRational& eps_src, const HytnSchedule& phi)
{
    EpsilonHytn h = construct_h_epsilon(g, eps_src);
    if (phi.size() != h.hytn.node_count())
        throw InputError("schedule has " + std::to_string(phi.size()) + " entries, H_eps has " +
                         std::to_string(h.hytn.node_count()) + " nodes");
    if (!verify_hytn_schedule(h.hytn, phi, h.scale))
        throw InputError("schedule is not feasible for H_eps with eps = " + eps_src.to_string());

    RoundingContext ctx;
    ctx.fractional.reserve(phi.size());
    for (const auto& t : phi) ctx.fractional.push_back(t.frac());
    ctx.distinct = ctx.fractional;
    std::sort(ctx.distinct.begin(), ctx.distinct.end());
    ctx.distinct.erase(std::unique(ctx.distinct.begin(), ctx.distinct.end()), ctx.distinct.end());

    const EpsilonRational grid = dc_epsilon(g);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        auto it = std::lower_bound(ctx.distinct.begin(), ctx.distinct.end(), ctx.fractional[i]);
        auto pos = static_cast<std::size_t>(it - ctx.distinct.begin()) + 1;
        ctx.position.push_back(pos);
        Rational r = Rational(static_cast<std::int64_t>(pos - 1)) * grid.value();
        ctx.new_fractional.push_back(r);
        ctx.rounded.push_back(Rational(phi[i].floor()) + r);
    }

    const Rational scale(h.scale);
    for (std::size_t a = 0; a < h.hytn.hyperarc_count(); ++a) {
        auto heads = h.hytn.heads(a);
        std::size_t best = 0;
        Rational best_val = phi[heads[0].node] - Rational(heads[0].weight) / scale;
        for (std::size_t j = 1; j < heads.size(); ++j) {
            Rational val = phi[heads[j].node] - Rational(heads[j].weight) / scale;
            if (val < best_val) {
                best = j;
                best_val = val;
            }
        }
        ctx.selected.push_back({h.hytn.tail(a), heads[best].node, Rational(heads[best].weight) / scale});
    }
    return ctx;
}

HytnSchedule round_schedule(const Cstn& g, const EpsilonRational& eps_src, const HytnSchedule& phi)
{
    return rounding_context(g, eps_src, phi).rounded;
}

EpsilonInterval estimate_epsilon_hat(const Cstn& g, std::int64_t resolution, const ExpansionLimits& limits)
{
    if (resolution < 1) throw InputError("resolution must be positive");
    EpsilonInterval out;
    const EpsilonRational base = dc_epsilon(g);

    ++out.probes;
    if (!check_edc(g, base, limits).positive()) return out;
    out.empty = false;

    ++out.probes;
    if (check_edc(g, EpsilonRational(1, 1), limits).positive()) {
        out.lo = Rational(1);
        return out;
    }

    Rational lo = base.value(), hi(1);
    const Rational width(1, resolution);
    while (hi - lo > width) {
        Rational mid = (lo + hi) / Rational(2);
        ++out.probes;
        if (check_edc(g, EpsilonRational(mid), limits).positive())
            lo = mid;
        else
            hi = mid;
    }
    out.lo = lo;
    out.hi = hi;
    return out;
}

} // namespace cstn
