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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <set>

#include "cstn/error.hpp"
#include "cstn/generators.hpp"
#include "cstn/io.hpp"
#include "cstn/network.hpp"
#include "cstn/rational.hpp"
#include "oracles.hpp"

using namespace cstn;

namespace {

Cstn five_event() { return read_cstn_file(CSTN_TEST_DATA "/five_event.cstn"); }

Cstn make(std::vector<std::string> props, std::vector<CstnNode> nodes, std::vector<LabeledConstraint> arcs)
{
    return Cstn(std::move(props), std::move(nodes), std::move(arcs));
}

} // namespace

TEST_CASE("rational normalizes and compares exactly")
{
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) * Rational(3, 7) == Rational(1, 7));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).frac() == Rational(1, 2));
    CHECK(Rational(7, 2).frac() == Rational(1, 2));
    CHECK(Rational(5).to_string() == "5/1");
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
    CHECK_THROWS_AS(Rational::parse("1.5"), InputError);
    CHECK_THROWS_AS(Rational(1, 0), InputError);
}

TEST_CASE("rational overflow is reported, never wrapped")
{
    Rational big(std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(big + Rational(1), OverflowError);
    CHECK_THROWS_AS(big * Rational(2), OverflowError);
    // 128-bit intermediates keep reducible products exact
    CHECK(Rational(std::numeric_limits<std::int64_t>::max(), 3) * Rational(3, std::numeric_limits<std::int64_t>::max()) ==
          Rational(1));
}

TEST_CASE("rational arithmetic agrees with a long double reference")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-50, 50), q(1, 40);
    for (int i = 0; i < 500; ++i) {
        int an = d(rng), ad = q(rng), bn = d(rng), bd = q(rng);
        Rational a(an, ad), b(bn, bd);
        long double x = static_cast<long double>(an) / ad, y = static_cast<long double>(bn) / bd;
        auto close = [](const Rational& r, long double v) {
            return std::abs(static_cast<long double>(r.num()) / r.den() - v) < 1e-12L;
        };
        CHECK(close(a + b, x + y));
        CHECK(close(a - b, x - y));
        CHECK(close(a * b, x * y));
        if (bn != 0) CHECK(close(a / b, x / y));
        CHECK((a < b) == (x < y));
    }
}

TEST_CASE("labels are canonical conjunctions")
{
    CHECK(Label::parse("q -p").to_string() == "-p q");
    CHECK(Label::parse("").empty());
    CHECK(Label::parse("p p").size() == 1);
    CHECK_THROWS_AS(Label::parse("p -p"), InputError);
    CHECK_THROWS_AS(Label::parse("p  q"), InputError);
    CHECK_THROWS_AS(Label::parse(" p"), InputError);

    Label pq = Label::parse("p q"), p = Label::parse("p"), np = Label::parse("-p");
    CHECK(label_con(pq, p));
    CHECK_FALSE(label_con(pq, np));
    CHECK(label_sub(pq, p));
    CHECK_FALSE(label_sub(p, pq));
    CHECK(label_sub(p, Label{}));
    CHECK(label_and(p, Label::parse("-q")) == Label::parse("p -q"));
}

TEST_CASE("scenario evaluation")
{
    Scenario s({{"p", true}, {"q", false}});
    CHECK(scenario_eval(s, Label::parse("p -q")));
    CHECK_FALSE(scenario_eval(s, Label::parse("q")));
    CHECK(scenario_eval(s, Label{}));
    CHECK_THROWS_AS(scenario_eval(s, Label::parse("r")), InputError);
    CHECK(s.as_label() == Label::parse("p -q"));
}

TEST_CASE("structure checks")
{
    CHECK_THROWS_AS(make({}, {{"A", {}, {}}, {"A", {}, {}}}, {}), InputError);
    CHECK_THROWS_AS(make({"p"}, {{"A", {}, {}}}, {}), InputError);  // p has no observer
    CHECK_THROWS_AS(make({}, {{"A", {}, {}}}, {{"A", "B", 1, {}}}), InputError);
    CHECK_THROWS_AS(make({}, {{"A", {}, {}}, {"B", {}, {}}}, {{"A", "B", kMaxInputWeight + 1, {}}}), InputError);
    CHECK_THROWS_AS(make({"p"}, {{"A", {}, "p"}, {"B", {}, "p"}}, {}), InputError);
}

TEST_CASE("five-event scenarios, restrictions and difference sets")
{
    Cstn g = five_event();
    REQUIRE(g.nodes().size() == 5);
    REQUIRE(g.constraints().size() == 11);
    CHECK(g.scenario_count() == 4);
    CHECK(g.scenario(0).as_label().to_string() == "-p -q");
    CHECK(g.scenario(1).as_label().to_string() == "-p q");
    CHECK(g.scenario(2).as_label().to_string() == "p -q");
    CHECK(g.scenario(3).as_label().to_string() == "p q");
    for (ScenarioIndex k = 0; k < 4; ++k) CHECK(g.scenario_index(g.scenario(k)) == k);

    // arcs active per scenario: 8 unlabeled plus the labeled ones that hold
    CHECK(restrict(g, 0).arcs.size() == 9);   // -p
    CHECK(restrict(g, 1).arcs.size() == 10);  // -p, q
    CHECK(restrict(g, 2).arcs.size() == 9);   // p -q
    CHECK(restrict(g, 3).arcs.size() == 9);   // q
    for (ScenarioIndex k = 0; k < 4; ++k) {
        CHECK(restrict(g, k).nodes.size() == 5);
        CHECK(oracle::stn_consistent(restrict(g, k)));
    }

    auto s = [&](const char* l) {
        Scenario::Assignment a;
        Label lab = Label::parse(l);
        for (const auto& lit : lab.literals()) a[lit.proposition] = !lit.negated;
        return Scenario(a);
    };
    CHECK(difference_set(g, s("-p -q"), s("p -q")) == std::vector<std::string>{"Op"});
    CHECK(difference_set(g, s("-p -q"), s("-p q")) == std::vector<std::string>{"Oq"});
    CHECK(difference_set(g, s("p q"), s("-p -q")) == std::vector<std::string>{"Op", "Oq"});
    CHECK(difference_set(g, s("p q"), s("p q")).empty());
}

TEST_CASE("difference set is symmetric when all nodes are unlabeled")
{
    Cstn g = five_event();
    for (ScenarioIndex a = 0; a < 4; ++a)
        for (ScenarioIndex b = 0; b < 4; ++b) CHECK(difference_set(g, a, b) == difference_set(g, b, a));
}

TEST_CASE("well-definedness rules")
{
    CHECK(validate_wd(five_event()).empty());

    // WD1: constraint label must subsume the endpoint labels
    Cstn wd1 = make({"p"}, {{"O", {}, "p"}, {"A", Label::parse("p"), {}}},
                    {{"A", "O", -1, Label::parse("p")}, {"O", "A", 4, {}}});
    auto v1 = validate_wd(wd1);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].rule == WdRule::WD1);

    // WD2: a labeled node needs its observer strictly before it
    Cstn wd2 = make({"p"}, {{"O", {}, "p"}, {"A", Label::parse("p"), {}}}, {});
    auto v2 = validate_wd(wd2);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].rule == WdRule::WD2);

    // WD2 is met by a weight <= -1 arc whose label L(u) subsumes
    Cstn ok2 = make({"p"}, {{"O", {}, "p"}, {"A", Label::parse("p"), {}}}, {{"A", "O", -2, Label::parse("p")}});
    CHECK(validate_wd(ok2).empty());

    // WD3: a label mentioning q must subsume L(O_q)
    Cstn wd3 = make({"p", "q"},
                    {{"Op", {}, "p"}, {"Oq", Label::parse("p"), "q"}, {"A", {}, {}}},
                    {{"Oq", "Op", -1, Label::parse("p")}, {"A", "A", 3, Label::parse("q")}});
    auto v3 = validate_wd(wd3);
    REQUIRE(!v3.empty());
    CHECK(std::any_of(v3.begin(), v3.end(), [](const Violation& x) { return x.rule == WdRule::WD3; }));
    CHECK_THROWS_AS(require_wd(wd3), InputError);
}

TEST_CASE("negative self-loops are allowed and warned about")
{
    Cstn g = make({}, {{"A", {}, {}}}, {{"A", "A", -1, {}}});
    CHECK(validate_wd(g).empty());
    CHECK_FALSE(wd_warnings(g).empty());
    CHECK_FALSE(oracle::stn_consistent(restrict(g, 0)));
}

TEST_CASE("expansion is the disjoint union of the restrictions")
{
    Cstn g = five_event();
    Expansion ex = expansion(g);
    CHECK(ex.index.size() == 20);
    CHECK(ex.stn.arcs.size() == 9 + 10 + 9 + 9);
    CHECK(ex.stn.nodes[ex.index.slot(2, *g.node_index("B"))] == "B@2");
    for (std::size_t i = 0; i < ex.index.size(); ++i)
        CHECK(ex.index.slot(ex.index.scenario_of(i), ex.index.node_of(i)) == static_cast<std::int64_t>(i));

    ExpansionLimits tiny;
    tiny.max_expanded_nodes = 19;
    CHECK_THROWS_AS(expansion(g, tiny), CapacityError);
}

TEST_CASE("labeled nodes drop out of scenarios where their label fails")
{
    Cstn g = make({"p"}, {{"O", {}, "p"}, {"A", Label::parse("-p"), {}}}, {{"A", "O", -1, Label::parse("-p")}});
    REQUIRE(validate_wd(g).empty());
    CHECK(restrict(g, 0).nodes.size() == 2);
    CHECK(restrict(g, 1).nodes.size() == 1);
    CHECK(ExpandedIndex(g, {}).slot(1, 1) == -1);
    CHECK(difference_set(g, 0, 1) == std::vector<std::size_t>{0});
}

TEST_CASE("subsumption implies consistency for random labels")
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> pick(0, 2);
    const char* props[] = {"p", "q", "r"};
    auto random_label = [&] {
        std::vector<Literal> lits;
        for (const char* p : props) {
            int c = pick(rng);
            if (c) lits.push_back({p, c == 2});
        }
        return Label::from_literals(lits);
    };
    for (int i = 0; i < 500; ++i) {
        Label a = random_label(), b = random_label();
        if (label_sub(a, b)) CHECK(label_con(a, b));
        CHECK(label_con(a, b) == label_con(b, a));
        CHECK(label_sub(a, Label{}));
        CHECK(label_con(Label{}, a));
    }
}

TEST_CASE("restriction and difference set invariants on generated networks")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        RandomCstnParams p;
        p.nodes = 6;
        p.props = static_cast<int>(seed % 4);
        p.seed = seed;
        Cstn g = gen_random_cstn(p);
        std::size_t total = 0;
        std::set<std::string> ids;
        Expansion ex = expansion(g);
        for (const auto& n : ex.stn.nodes) ids.insert(n);
        CHECK(ids.size() == ex.stn.nodes.size());
        for (std::uint64_t k = 0; k < g.scenario_count(); ++k) {
            auto s = static_cast<ScenarioIndex>(k);
            Stn r = restrict(g, s);
            total += r.nodes.size();
            for (const auto& a : r.arcs) {
                CHECK(a.from < r.nodes.size());
                CHECK(a.to < r.nodes.size());
            }
            CHECK(difference_set(g, s, s).empty());
            for (std::uint64_t k2 = 0; k2 < g.scenario_count(); ++k2) {
                for (auto v : difference_set(g, s, static_cast<ScenarioIndex>(k2))) {
                    CHECK(g.observed_by(v).has_value());
                    CHECK(g.active_node(s, v));
                }
            }
        }
        CHECK(ex.index.size() == total);
    }
}

TEST_CASE("scenario enumeration order")
{
    Cstn g = five_event();
    auto all = enumerate_scenarios(g);
    REQUIRE(all.size() == 4);
    CHECK(all[1].as_label().to_string() == "-p q");
    Cstn flat = make({}, {{"A", {}, {}}}, {});
    REQUIRE(enumerate_scenarios(flat).size() == 1);
    CHECK(enumerate_scenarios(flat)[0].assignment().empty());
    Cstn one = make({"x"}, {{"X", {}, "x"}}, {});
    CHECK(one.scenario(0).as_label().to_string() == "-x");
    CHECK(one.scenario(1).as_label().to_string() == "x");
}

TEST_CASE("restriction contents under specific scenarios")
{
    Cstn g = five_event();
    auto has = [&](ScenarioIndex k, const std::string& u, const std::string& v) {
        Stn r = restrict(g, k);
        for (const auto& a : r.arcs)
            if (r.nodes[a.from] == u && r.nodes[a.to] == v) return true;
        return false;
    };
    CHECK(has(0, "Oq", "C"));
    CHECK_FALSE(has(0, "A", "B"));
    CHECK_FALSE(has(0, "B", "C"));
    CHECK(has(3, "B", "C"));
    CHECK_FALSE(has(3, "Oq", "C"));
    CHECK_FALSE(has(3, "A", "B"));

    Cstn g1 = gen_gamma_n({1});
    CHECK(difference_set(g1, 7, 6) == std::vector<std::size_t>{2});
    Cstn flat = make({}, {{"A", {}, {}}, {"B", {}, {}}}, {{"A", "B", 2, {}}});
    Expansion ex = expansion(flat);
    CHECK(ex.stn.nodes == std::vector<std::string>{"A@0", "B@0"});
    CHECK(ex.stn.arcs.size() == 1);
    CHECK(ExpandedIndex(g1, {}).size() == 24);
}
