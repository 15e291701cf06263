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
#include <vector>

#include "cstn/hytn.hpp"
#include "cstn/network.hpp"
#include "cstn/rational.hpp"

namespace cstn {

/// Reaction time eps = N/D with N, D >= 1, kept in lowest terms.
class EpsilonRational {
public:
    EpsilonRational(std::int64_t numerator, std::int64_t denominator);
    explicit EpsilonRational(const Rational& r) : EpsilonRational(r.num(), r.den()) {}
    /// "N/D" or "N". Throws InputError unless the value is positive.
    static EpsilonRational parse(std::string_view text);

    std::int64_t numerator() const { return value_.num(); }
    std::int64_t denominator() const { return value_.den(); }
    const Rational& value() const { return value_; }
    std::string to_string() const { return value_.to_string(); }

    friend bool operator==(const EpsilonRational&, const EpsilonRational&) = default;

private:
    Rational value_;
};

/// 1 / (|Sigma_P| |V|): the reaction time at which eps-DC coincides with DC.
EpsilonRational dc_epsilon(const Cstn& g);

/**
 * sigma: scenario -> schedule over V^+_s. Indexed by ScenarioIndex and network
 * node index; an entry is empty exactly when the node is not in V^+_s.
 */
class ExecutionStrategy {
public:
    ExecutionStrategy() = default;
    ExecutionStrategy(std::size_t scenarios, std::size_t nodes)
        : nodes_(nodes), times_(scenarios * nodes)
    {
    }

    std::size_t scenario_count() const { return nodes_ == 0 ? 0 : times_.size() / nodes_; }
    std::size_t node_count() const { return nodes_; }
    const std::optional<Rational>& time(ScenarioIndex k, std::size_t v) const { return times_[k * nodes_ + v]; }
    void set(ScenarioIndex k, std::size_t v, Rational t) { times_[k * nodes_ + v] = t; }
    void clear(ScenarioIndex k, std::size_t v) { times_[k * nodes_ + v].reset(); }

    friend bool operator==(const ExecutionStrategy&, const ExecutionStrategy&) = default;

private:
    std::size_t nodes_ = 0;
    std::vector<std::optional<Rational>> times_;
};

/**
 * H_eps(Gamma) with every weight multiplied by `scale` = D, so that -eps is -N
 * and the whole hypergraph is integral. Node i is the expanded slot i.
 */
struct EpsilonHytn {
    Hytn hytn;
    ExpandedIndex index;
    EpsilonRational eps{1, 1};
    std::int64_t scale = 1;
    std::size_t standard_arcs = 0;  ///< hyperarcs [0, standard_arcs) come from the expansion
    std::size_t alpha_arcs = 0;     ///< the rest are alpha_eps(s1;s2;u), ordered by (s1, s2, u)
};

/**
 * Builds H_eps(Gamma): the expansion's standard arcs followed by one hyperarc
 * alpha_eps(s1;s2;u) per ordered pair s1 != s2 and u in V+_{s1} n V+_{s2},
 * with tail u_{s1}, head u_{s2} (weight 0) and head v_{s1} (weight -eps) for
 * every v in Delta(s1;s2) other than u. Self-loops with w >= 0 are vacuous
 * and dropped. The per-s1 work runs in parallel when OpenMP is available.
 */
EpsilonHytn construct_h_epsilon(const Cstn& g, const EpsilonRational& eps, const ExpansionLimits& limits = {});
/// Single-threaded reference for construct_h_epsilon; identical output.
EpsilonHytn construct_h_epsilon_serial(const Cstn& g, const EpsilonRational& eps, const ExpansionLimits& limits = {});

enum class Verdict { DC, NotDC, EpsDC, NotEpsDC };
std::string to_string(Verdict v);

struct SolveStats {
    std::uint64_t scenarios = 0;
    std::size_t events = 0;
    std::size_t expanded_nodes = 0;
    std::size_t standard_arcs = 0;
    std::size_t alpha_hyperarcs = 0;
    std::size_t hytn_size = 0;  ///< m_A
    std::size_t game_nodes = 0;
    std::size_t game_edges = 0;
    std::uint64_t lifts = 0;
    std::int64_t energy_cap = 0;
    std::int64_t worst_energy_cap = 0;
    double build_ms = 0;
    double solve_ms = 0;
    double verify_ms = 0;
};

struct DcReport {
    Verdict verdict = Verdict::NotDC;
    EpsilonRational eps{1, 1};
    std::optional<ExecutionStrategy> strategy;
    /// Expanded node names ("id@k") whose energy is TOP. Nonempty iff negative.
    std::vector<std::string> certificate;
    SolveStats stats;

    bool positive() const { return verdict == Verdict::DC || verdict == Verdict::EpsDC; }
};

/// Decides eps-dynamic consistency. A positive verdict carries a verified strategy.
DcReport check_edc(const Cstn& g, const EpsilonRational& eps, const ExpansionLimits& limits = {});
/// Decides dynamic consistency via eps = 1/(|Sigma_P||V|); the strategy is also checked dynamic.
DcReport check_dc(const Cstn& g, const ExpansionLimits& limits = {});

struct VerifyReport {
    bool viable = true;
    bool dynamic = true;
    std::optional<bool> eps_dynamic;
    /// First few counterexamples per flag, in (s1, s2, u) order.
    std::vector<std::string> viable_failures;
    std::vector<std::string> dynamic_failures;
    std::vector<std::string> eps_failures;

    bool ok() const { return viable && dynamic && eps_dynamic.value_or(true); }
};

/**
 * Independent checks of a strategy: (a) viable, every restriction satisfied;
 * (b) dynamic in the pairwise form "u no later than every Delta(s1;s2)
 * observation implies equal times"; (c) if eps is given, every
 * H_eps(s1;s2;u) holds. Throws InputError on a domain mismatch.
 */
VerifyReport verify_strategy(const Cstn& g, const ExecutionStrategy& sigma,
                             const std::optional<EpsilonRational>& eps = std::nullopt);
/// Single-threaded reference for verify_strategy; identical output.
VerifyReport verify_strategy_serial(const Cstn& g, const ExecutionStrategy& sigma,
                                    const std::optional<EpsilonRational>& eps = std::nullopt);

/// [sigma_phi(s)]_v = phi(v_s).
ExecutionStrategy strategy_from_schedule(const Cstn& g, const ExpandedIndex& index, const HytnSchedule& phi);
/// phi_sigma(v_s) = [sigma(s)]_v.
HytnSchedule schedule_from_strategy(const ExpandedIndex& index, const ExecutionStrategy& sigma);

struct RoundingContext {
    std::vector<Rational> fractional;     ///< r_v
    std::vector<Rational> distinct;       ///< S, sorted ascending
    std::vector<std::size_t> position;    ///< pos(v), 1-based
    std::vector<Rational> new_fractional; ///< r'_v = (pos(v) - 1) / (|Sigma_P||V|)
    /// T: per hyperarc the head minimizing phi(h) - w(h) (first on ties).
    std::vector<Stn::Arc> selected;
    HytnSchedule rounded;                 ///< phi'_v = floor(phi_v) + r'_v
};

/**
 * Re-spaces the fractional parts of a feasible schedule of H_{eps_src}(Gamma)
 * onto the grid 1/(|Sigma_P||V|), keeping their order and every integral part.
 * Throws InputError if phi is not feasible for H_{eps_src}(Gamma).
 */
RoundingContext rounding_context(const Cstn& g, const EpsilonRational& eps_src, const HytnSchedule& phi);
HytnSchedule round_schedule(const Cstn& g, const EpsilonRational& eps_src, const HytnSchedule& phi);

struct EpsilonInterval {
    bool empty = true;             ///< network is not DC
    Rational lo;                   ///< check_edc(lo) positive
    std::optional<Rational> hi;    ///< check_edc(hi) negative; absent when eps = 1 is still positive
    std::size_t probes = 0;
};

/// Brackets eps-hat by bisection until hi - lo <= 1/resolution.
EpsilonInterval estimate_epsilon_hat(const Cstn& g, std::int64_t resolution, const ExpansionLimits& limits = {});

} // namespace cstn
