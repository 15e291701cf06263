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

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cstn/dc.hpp"
#include "cstn/network.hpp"
#include "cstn/rational.hpp"

namespace cstn {

/// 3-CNF over variables 1..n; a literal is +i or -i.
struct Cnf {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;

    /// Pads 1- and 2-literal clauses by repeating the last literal. Throws InputError otherwise.
    void add_clause(const std::vector<int>& literals);
    bool eval(const std::vector<bool>& assignment) const;
};

/// Standard DIMACS: "c" comments, a "p cnf n m" header, zero-terminated clauses.
Cnf read_dimacs(std::istream& in);

/// The 3-SAT reduction network: DC iff the formula is unsatisfiable.
Cstn gen_from_3cnf(const Cnf& f);

inline constexpr int kMaxBruteForceVariables = 20;
/// Exhaustive search; assignment[i] is variable i+1. Throws CapacityError above 20 variables.
std::optional<std::vector<bool>> sat_witness(const Cnf& f);
bool sat_brute_force(const Cnf& f);

struct GammaNParams {
    int n = 1;
    /// delta_i chosen from (i, Delta_i); must land in (0, Delta_i).
    std::function<Rational(int, const Rational&)> delta_rule = [](int, const Rational& d) { return d / Rational(2); };
};

struct GammaSequences {
    std::vector<Rational> delta;  ///< delta_1..delta_n at [0..n-1]
    std::vector<Rational> Delta;
};

GammaSequences gamma_sequences(const GammaNParams& p);
/// Events X_i, Y_i, Z_i, each observing the proposition of the same name.
Cstn gen_gamma_n(const GammaNParams& p);
ExecutionStrategy gen_gamma_n_strategy(const GammaNParams& p);

struct RandomCstnParams {
    int nodes = 6;
    int props = 2;
    Rational arc_density{1, 3};
    std::int64_t weight_range = 10;
    std::uint64_t seed = 1;
};

inline constexpr int kMaxRandomPropositions = 16;

/**
 * Deterministic random network. Node i < props observes proposition i; labels
 * are closed under observer labels so every output is well defined.
 */
Cstn gen_random_cstn(const RandomCstnParams& p);

} // namespace cstn
