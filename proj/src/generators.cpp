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

#include <cstdlib>
#include <istream>
#include <random>
#include <sstream>
#include <string>

#include "cstn/error.hpp"
#include "cstn/generators.hpp"

namespace cstn {

void Cnf::add_clause(const std::vector<int>& literals)
{
    if (literals.empty() || literals.size() > 3)
        throw InputError("clause must have 1 to 3 literals, got " + std::to_string(literals.size()));
    std::array<int, 3> c{};
    for (std::size_t i = 0; i < 3; ++i) {
        int lit = literals[std::min(i, literals.size() - 1)];
        if (lit == 0 || std::abs(lit) > variables)
            throw InputError("literal " + std::to_string(lit) + " is outside 1.." + std::to_string(variables));
        c[i] = lit;
    }
    clauses.push_back(c);
}

bool Cnf::eval(const std::vector<bool>& assignment) const
{
    for (const auto& c : clauses) {
        bool sat = false;
        for (int lit : c) sat = sat || (assignment[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0));
        if (!sat) return false;
    }
    return true;
}

Cnf read_dimacs(std::istream& in)
{
    Cnf f;
    std::string line;
    bool header = false;
    long declared = 0;
    std::vector<int> pending;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == '%') continue;
        if (tok == "p") {
            std::string fmt;
            long n = -1;
            if (header || !(ls >> fmt >> n >> declared) || fmt != "cnf" || n < 0 || declared < 0)
                throw InputError("dimacs:" + std::to_string(lineno) + ": bad header");
            f.variables = static_cast<int>(n);
            header = true;
            continue;
        }
        if (!header) throw InputError("dimacs:" + std::to_string(lineno) + ": clause before 'p cnf' header");
        do {
            char* end = nullptr;
            long lit = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0') throw InputError("dimacs:" + std::to_string(lineno) + ": bad literal '" + tok + "'");
            if (lit == 0) {
                if (pending.empty()) throw InputError("dimacs:" + std::to_string(lineno) + ": empty clause");
                try {
                    f.add_clause(pending);
                } catch (const InputError& e) {
                    throw InputError("dimacs:" + std::to_string(lineno) + ": " + e.what());
                }
                pending.clear();
            } else {
                pending.push_back(static_cast<int>(lit));
            }
        } while (ls >> tok);
    }
    if (!header) throw InputError("dimacs: missing 'p cnf' header");
    if (!pending.empty()) throw InputError("dimacs: last clause is not terminated by 0");
    if (static_cast<long>(f.clauses.size()) != declared)
        throw InputError("dimacs: header declares " + std::to_string(declared) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    return f;
}

Cstn gen_from_3cnf(const Cnf& f)
{
    if (f.clauses.empty()) throw InputError("the reduction needs at least one clause");
    const int n = f.variables;
    const int m = static_cast<int>(f.clauses.size());
    auto x = [](int i) { return "x" + std::to_string(i); };
    auto c = [](int j) { return "C" + std::to_string(j); };

    std::vector<std::string> props;
    std::vector<CstnNode> nodes;
    for (int i = 1; i <= n; ++i) {
        props.push_back(x(i));
        nodes.push_back({x(i), {}, x(i)});
    }
    for (int j = 0; j < m; ++j) nodes.push_back({c(j), {}, std::nullopt});

    std::vector<LabeledConstraint> arcs;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) arcs.push_back({x(a), x(b), 0, {}});
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < m; ++j) arcs.push_back({c(j), x(i), -1, {}});
    for (int j = 0; j < m; ++j) {
        for (int lit : f.clauses[static_cast<std::size_t>(j)]) {
            Label l = Label::from_literals({{x(std::abs(lit)), lit < 0}});
            arcs.push_back({c((j + 1) % m), c(j), -1, l});
        }
    }
    return Cstn(std::move(props), std::move(nodes), std::move(arcs));
}

std::optional<std::vector<bool>> sat_witness(const Cnf& f)
{
    if (f.variables > kMaxBruteForceVariables)
        throw CapacityError("brute force is limited to " + std::to_string(kMaxBruteForceVariables) + " variables");
    const auto n = static_cast<std::size_t>(f.variables);
    std::vector<bool> a(n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        for (std::size_t i = 0; i < n; ++i) a[i] = (bits >> i) & 1U;
        if (f.eval(a)) return a;
    }
    return std::nullopt;
}

bool sat_brute_force(const Cnf& f) { return sat_witness(f).has_value(); }

GammaSequences gamma_sequences(const GammaNParams& p)
{
    if (p.n < 1) throw InputError("Gamma^n needs n >= 1");
    GammaSequences s;
    Rational big(1);
    for (int i = 1; i <= p.n; ++i) {
        if (i > 1) big = std::min(s.delta.back(), s.Delta.back() - s.delta.back());
        Rational d = p.delta_rule(i, big);
        if (d <= Rational(0) || d >= big)
            throw InputError("delta_" + std::to_string(i) + " = " + d.to_string() + " is outside (0, " +
                             big.to_string() + ")");
        s.Delta.push_back(big);
        s.delta.push_back(d);
    }
    return s;
}

namespace {

std::string gname(char kind, int i) { return std::string(1, kind) + std::to_string(i); }

Label lits(std::initializer_list<std::pair<std::string, bool>> xs)
{
    std::vector<Literal> v;
    for (const auto& [p, neg] : xs) v.push_back({p, neg});
    return Label::from_literals(std::move(v));
}

} // namespace

Cstn gen_gamma_n(const GammaNParams& p)
{
    if (p.n < 1) throw InputError("Gamma^n needs n >= 1");
    const int n = p.n;
    std::vector<std::string> props;
    std::vector<CstnNode> nodes;
    for (int i = 1; i <= n; ++i) {
        for (char k : {'X', 'Y', 'Z'}) {
            props.push_back(gname(k, i));
            nodes.push_back({gname(k, i), {}, gname(k, i)});
        }
    }

    std::vector<LabeledConstraint> arcs;
    auto pair = [&](const std::string& a, const std::string& b, std::int64_t w, const Label& l) {
        // a - b <= w and b - a <= -w
        arcs.push_back({b, a, w, l});
        arcs.push_back({a, b, -w, l});
    };
    auto X = [](int i) { return gname('X', i); };
    auto Y = [](int i) { return gname('Y', i); };
    auto Z = [](int i) { return gname('Z', i); };

    for (const auto& v : nodes) arcs.push_back({v.id, X(1), 0, {}});
    arcs.push_back({X(1), Z(1), 1, lits({{X(1), false}, {Y(1), false}})});

    auto c_family = [&](int i) {
        pair(Y(i), X(i), 2, lits({{X(i), true}}));
        pair(Z(i), Y(i), 2, lits({{Y(i), true}}));
    };
    for (int i = 1; i <= n; ++i) c_family(i);
    for (int i = 1; i < n; ++i) {
        pair(X(i + 1), X(i), 5, lits({{Z(i), false}}));
        pair(X(i + 1), Y(i), 5, lits({{Z(i), true}}));
        pair(Z(i + 1), Y(i), 5, lits({{Z(i), false}, {X(i + 1), false}, {Y(i + 1), false}}));
        pair(Z(i + 1), Z(i), 5, lits({{Z(i), true}, {X(i + 1), false}, {Y(i + 1), false}}));
    }
    c_family(n);  // the final layer repeats C_n
    return Cstn(std::move(props), std::move(nodes), std::move(arcs));
}

ExecutionStrategy gen_gamma_n_strategy(const GammaNParams& p)
{
    const auto seq = gamma_sequences(p);
    const Cstn g = gen_gamma_n(p);
    ExecutionStrategy sigma(g.scenario_count(), g.nodes().size());
    auto ind = [](bool b) { return Rational(b ? 1 : 0); };

    for (std::uint64_t k = 0; k < g.scenario_count(); ++k) {
        auto s = static_cast<ScenarioIndex>(k);
        auto x = [&](int i) { return g.truth(s, static_cast<std::size_t>(3 * (i - 1))); };
        auto y = [&](int i) { return g.truth(s, static_cast<std::size_t>(3 * (i - 1) + 1)); };
        auto z = [&](int i) { return g.truth(s, static_cast<std::size_t>(3 * (i - 1) + 2)); };

        std::vector<Rational> X(static_cast<std::size_t>(p.n) + 1), Y(X.size()), Z(X.size());
        X[1] = 0;
        Y[1] = seq.delta[0] * ind(x(1)) + Rational(2) * ind(!x(1));
        Z[1] = ind(x(1) && y(1)) + (Rational(2) + Y[1]) * ind(!x(1) || !y(1));
        for (int i = 2; i <= p.n; ++i) {
            auto u = static_cast<std::size_t>(i);
            X[u] = Rational(5) + X[u - 1] * ind(z(i - 1)) + Y[u - 1] * ind(!z(i - 1));
            Y[u] = X[u] + seq.delta[u - 1] * ind(x(i)) + Rational(2) * ind(!x(i));
            Z[u] = (Rational(5) + Y[u - 1] * ind(z(i - 1)) + Z[u - 1] * ind(!z(i - 1))) * ind(x(i) && y(i)) +
                   (Rational(2) + Y[u]) * ind(!x(i) || !y(i));
        }
        for (int i = 1; i <= p.n; ++i) {
            auto base = static_cast<std::size_t>(3 * (i - 1));
            auto u = static_cast<std::size_t>(i);
            sigma.set(s, base, X[u]);
            sigma.set(s, base + 1, Y[u]);
            sigma.set(s, base + 2, Z[u]);
        }
    }
    return sigma;
}

namespace {

/// Uniform in [0, bound) from raw 64-bit draws; same sequence on every platform.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

bool chance(std::mt19937_64& rng, const Rational& p)
{
    return static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(p.den()))) < p.num();
}

} // namespace

Cstn gen_random_cstn(const RandomCstnParams& p)
{
    if (p.props < 0 || p.props > kMaxRandomPropositions)
        throw InputError("props must be in 0.." + std::to_string(kMaxRandomPropositions));
    if (p.nodes < p.props) throw InputError("need at least one node per proposition");
    if (p.weight_range < 0 || p.weight_range > kMaxInputWeight) throw InputError("weight range out of bounds");
    if (p.arc_density < Rational(0) || p.arc_density > Rational(1)) throw InputError("arc density must be in [0, 1]");

    std::mt19937_64 rng(p.seed);
    std::vector<std::string> props;
    std::vector<CstnNode> nodes;
    for (int i = 0; i < p.props; ++i) props.push_back("p" + std::to_string(i));
    for (int v = 0; v < p.nodes; ++v) {
        CstnNode node{"n" + std::to_string(v), {}, std::nullopt};
        if (v < p.props) node.observes = props[static_cast<std::size_t>(v)];
        nodes.push_back(std::move(node));
    }

    // Add l and the label of its observer, unless that contradicts what is there.
    auto extend = [&](Label base, int prop) {
        Label add = label_and(Label::from_literals({{props[static_cast<std::size_t>(prop)], draw(rng, 2) == 1}}),
                              nodes[static_cast<std::size_t>(prop)].label);
        return label_con(base, add) ? label_and(base, add) : base;
    };
    for (int v = 0; v < p.nodes; ++v) {
        int limit = v < p.props ? v : p.props;
        Label l;
        for (int q = 0; q < limit; ++q) {
            if (draw(rng, 4) == 0) l = extend(l, q);
        }
        nodes[static_cast<std::size_t>(v)].label = l;
    }

    std::vector<LabeledConstraint> arcs;
    const auto span = static_cast<std::uint64_t>(2 * p.weight_range + 1);
    for (int u = 0; u < p.nodes; ++u) {
        for (int v = 0; v < p.nodes; ++v) {
            if (u == v || !chance(rng, p.arc_density)) continue;
            auto w = static_cast<std::int64_t>(draw(rng, span)) - p.weight_range;
            const auto& lu = nodes[static_cast<std::size_t>(u)].label;
            const auto& lv = nodes[static_cast<std::size_t>(v)].label;
            if (!label_con(lu, lv)) continue;
            Label l = label_and(lu, lv);
            if (p.props > 0 && draw(rng, 3) == 0) l = extend(l, static_cast<int>(draw(rng, static_cast<std::uint64_t>(p.props))));
            arcs.push_back({nodes[static_cast<std::size_t>(u)].id, nodes[static_cast<std::size_t>(v)].id, w, l});
        }
    }
    for (const auto& node : nodes) {
        for (const auto& lit : node.label.literals()) {
            auto q = static_cast<std::size_t>(std::stoi(lit.proposition.substr(1)));
            arcs.push_back({node.id, nodes[q].id, -1, node.label});
        }
    }
    return Cstn(std::move(props), std::move(nodes), std::move(arcs));
}

} // namespace cstn
