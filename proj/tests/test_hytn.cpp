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
#include <sstream>

#include "cstn/error.hpp"
#include "cstn/hytn.hpp"
#include "cstn/mpg.hpp"
#include "oracles.hpp"

using namespace cstn;

namespace {

Hytn named(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    return Hytn(names);
}

Mpg random_game(std::mt19937_64& rng, std::size_t n, int wmax)
{
    Mpg g;
    std::uniform_int_distribution<int> coin(0, 1), w(-wmax, wmax);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1), deg(1, 3);
    for (std::size_t i = 0; i < n; ++i) g.add_node("g" + std::to_string(i), coin(rng) ? Owner::Max : Owner::Min);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::size_t d = deg(rng);
        for (std::size_t k = 0; k < d; ++k) g.add_edge(i, static_cast<std::uint32_t>(pick(rng)), w(rng));
    }
    return g;
}

} // namespace

TEST_CASE("hyperarc validation")
{
    Hytn h = named(3);
    std::vector<Head> none;
    CHECK_THROWS_AS(h.add_hyperarc(0, none), InputError);
    std::vector<Head> dup{{1, 0}, {1, 2}};
    CHECK_THROWS_AS(h.add_hyperarc(0, dup), InputError);
    std::vector<Head> loop{{0, 0}, {1, 2}};
    CHECK_THROWS_AS(h.add_hyperarc(0, loop), InputError);
    std::vector<Head> oob{{7, 0}};
    CHECK_THROWS_AS(h.add_hyperarc(0, oob), InputError);
    h.add_arc(0, 0, -1);  // a lone self-loop is a plain constraint
    std::vector<Head> ok{{1, 0}, {2, -3}};
    h.add_hyperarc(0, ok);
    CHECK(h.hyperarc_count() == 2);
    CHECK(h.size_measure() == 1 + 3);
    CHECK(h.max_abs_weight() == 3);
}

TEST_CASE("game layout")
{
    Hytn h = named(3);
    std::vector<Head> hs{{1, 2}, {2, -1}};
    h.add_hyperarc(0, hs);
    h.add_arc(1, 0, 4);
    Mpg g = hytn_to_mpg(h);
    REQUIRE(g.node_count() == 3 + 2 + 1);
    CHECK(g.names()[3] == "#a0");
    CHECK(g.names()[5] == "#sink:v2");
    for (std::uint32_t v = 0; v < 3; ++v) CHECK(g.owner(v) == Owner::Min);
    for (std::uint32_t v = 3; v < 6; ++v) CHECK(g.owner(v) == Owner::Max);
    CHECK(g.edges().size() == 3 + 2 + 2);
    CHECK_NOTHROW(g.require_total());
    std::ostringstream os;
    write_edge_list(os, g);
    CHECK(os.str().find("#a0 max v2 -1") != std::string::npos);
}

TEST_CASE("energy of a hand-checked game")
{
    // v0 -> v1 weight -2 means v1 - v0 <= -2: v0 needs 2 units above v1
    Hytn h = named(2);
    h.add_arc(0, 1, -2);
    auto r = check_hytn_consistency(h);
    REQUIRE(r.consistent);
    CHECK(r.energy == std::vector<std::int64_t>{2, 0});
    CHECK(verify_hytn_schedule(h, *r.schedule));

    h.add_arc(1, 0, 1);  // cycle of weight -1
    auto bad = check_hytn_consistency(h);
    CHECK_FALSE(bad.consistent);
    CHECK(bad.losing.size() == 2);
    CHECK_FALSE(bad.schedule);
}

TEST_CASE("a disjunction rescues an otherwise negative cycle")
{
    Hytn h = named(3);
    h.add_arc(1, 0, -1);
    std::vector<Head> hs{{1, -1}, {2, 0}};  // v0 >= min(v1 + 1, v2)
    h.add_hyperarc(0, hs);
    auto r = check_hytn_consistency(h);
    REQUIRE(r.consistent);
    CHECK(oracle::hytn_consistent(h));
}

TEST_CASE("hytn consistency matches head-selection brute force")
{
    std::mt19937_64 rng(11);
    int pos = 0, neg = 0;
    for (int i = 0; i < 600; ++i) {
        std::size_t n = 2 + i % 4;
        Hytn h = oracle::random_hytn(rng, n, 2 + i % 6, 3, 3);
        auto r = check_hytn_consistency(h);
        bool expect = oracle::hytn_consistent(h);
        CHECK(r.consistent == expect);
        if (r.consistent) {
            ++pos;
            CHECK(verify_hytn_schedule(h, *r.schedule));
            for (const auto& t : *r.schedule) CHECK(t >= Rational(0));
        } else {
            ++neg;
        }
        CHECK(r.stats.lifts <= static_cast<std::uint64_t>(r.stats.game_nodes) *
                                   static_cast<std::uint64_t>(r.stats.cap + 1));
    }
    CHECK(pos > 50);
    CHECK(neg > 50);
}

TEST_CASE("plain networks agree with Bellman-Ford")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        Hytn h = oracle::random_hytn(rng, 5, 8, 1, 4);
        Stn s;
        s.nodes = h.nodes();
        for (std::size_t a = 0; a < h.hyperarc_count(); ++a)
            s.arcs.push_back({h.tail(a), h.heads(a)[0].node, Rational(h.heads(a)[0].weight)});
        CHECK(check_hytn_consistency(h).consistent == oracle::stn_consistent(s));
    }
}

TEST_CASE("energy least fixpoint does not depend on the cap choice")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 400; ++i) {
        Mpg g = random_game(rng, 2 + static_cast<std::size_t>(i % 5), 3);
        EnergyOptions worst;
        worst.worst_cap_only = true;
        auto a = solve_energy(g), b = solve_energy(g, worst);
        CHECK(a.value == b.value);
        CHECK(a.stats.cap <= a.stats.worst_cap);
        CHECK(b.stats.cap == worst_energy_cap(g));
        CHECK(a.stats.lifts <= g.node_count() * static_cast<std::uint64_t>(a.stats.cap + 1));
    }
}

TEST_CASE("energy finiteness matches the brute-force game oracle")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        Mpg g = random_game(rng, 1 + static_cast<std::size_t>(i % 6), 3);
        auto e = solve_energy(g);
        auto win = brute_force_mpg(g);
        for (std::uint32_t v = 0; v < g.node_count(); ++v) CHECK(e.finite(v) == win[v]);
    }
}

TEST_CASE("energy values are a valid progress measure")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        Mpg g = random_game(rng, 6, 3);
        auto e = solve_energy(g);
        for (std::uint32_t v = 0; v < g.node_count(); ++v) {
            if (!e.finite(v)) continue;
            bool any = false, all = true;
            for (const auto& ed : g.edges()) {
                if (ed.from != v) continue;
                bool ok = e.finite(ed.to) && e.value[v] >= e.value[ed.to] - ed.weight;
                any = any || ok;
                all = all && ok;
            }
            CHECK((g.owner(v) == Owner::Max ? any : all));
        }
    }
}

TEST_CASE("brute force refuses oversized games")
{
    Mpg g;
    for (int i = 0; i < 20; ++i) g.add_node("m" + std::to_string(i), Owner::Max);
    for (std::uint32_t i = 0; i < 20; ++i) {
        g.add_edge(i, (i + 1) % 20, 0);
        g.add_edge(i, (i + 2) % 20, 0);
    }
    CHECK_THROWS_AS(brute_force_mpg(g), CapacityError);
}

TEST_CASE("schedule check scales weights")
{
    Hytn h = named(2);
    h.add_arc(0, 1, -1);  // with scale 4: v1 - v0 <= -1/4
    CHECK(verify_hytn_schedule(h, {Rational(1, 4), Rational(0)}, 4));
    CHECK_FALSE(verify_hytn_schedule(h, {Rational(1, 8), Rational(0)}, 4));
    CHECK_THROWS_AS(verify_hytn_schedule(h, {Rational(0)}, 4), InputError);
}

namespace {

std::int64_t lift(std::int64_t e, std::int64_t w)
{
    if (e == kInfiniteEnergy) return e;
    return std::max<std::int64_t>(0, e - w);
}

/// One synchronous application of the lifting operator, without the cap.
std::vector<std::int64_t> lift_round(const Mpg& g, const std::vector<std::int64_t>& e)
{
    std::vector<std::int64_t> out(g.node_count());
    std::vector<bool> seen(g.node_count(), false);
    for (const auto& ed : g.edges()) {
        auto v = lift(e[ed.to], ed.weight);
        auto& o = out[ed.from];
        if (!seen[ed.from]) {
            o = v;
            seen[ed.from] = true;
        } else {
            o = g.owner(ed.from) == Owner::Min ? std::max(o, v) : std::min(o, v);
        }
    }
    return out;
}

} // namespace

TEST_CASE("energy is a least fixpoint")
{
    std::mt19937_64 rng(77);
    for (int i = 0; i < 300; ++i) {
        Mpg g = random_game(rng, 2 + static_cast<std::size_t>(i % 5), 3);
        auto e = solve_energy(g);
        auto next = lift_round(g, e.value);
        for (std::uint32_t v = 0; v < g.node_count(); ++v) {
            if (e.finite(v))
                CHECK(next[v] == e.value[v]);
            else
                CHECK((next[v] == kInfiniteEnergy || next[v] > e.stats.cap));
        }
        for (std::uint32_t v = 0; v < g.node_count(); ++v) {
            if (!e.finite(v) || e.value[v] == 0) continue;
            auto smaller = e.value;
            --smaller[v];
            auto again = lift_round(g, smaller);
            bool violated = false;
            for (std::uint32_t u = 0; u < g.node_count(); ++u) violated = violated || again[u] > smaller[u];
            CHECK(violated);
        }
    }
}

TEST_CASE("scaling every weight keeps the verdict")
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        Hytn h = oracle::random_hytn(rng, 4, 5, 3, 3);
        Hytn scaled(h.nodes());
        for (std::size_t a = 0; a < h.hyperarc_count(); ++a) {
            std::vector<Head> hs(h.heads(a).begin(), h.heads(a).end());
            for (auto& x : hs) x.weight *= 7;
            scaled.add_hyperarc(h.tail(a), hs);
        }
        CHECK(check_hytn_consistency(h).consistent == check_hytn_consistency(scaled).consistent);
    }
}

TEST_CASE("small energy examples")
{
    Mpg loop;
    loop.add_node("u", Owner::Min);
    loop.add_edge(0, 0, -1);
    CHECK_FALSE(solve_energy(loop).finite(0));

    std::mt19937_64 rng(2);
    Mpg pos = random_game(rng, 5, 0);
    for (auto v : solve_energy(pos).value) CHECK(v == 0);
    for (bool w : brute_force_mpg(pos)) CHECK(w);

    // u -(-3)-> v -(0)-> sink, with single choices everywhere
    Hytn chain = named(2);
    chain.add_arc(0, 1, -3);
    auto r = check_hytn_consistency(chain);
    CHECK(r.energy == std::vector<std::int64_t>{3, 0});

    Hytn one = named(3);
    std::vector<Head> hs{{1, -5}, {2, 1}};
    one.add_hyperarc(0, hs);
    Mpg g = hytn_to_mpg(one);
    std::vector<std::int64_t> from_max;
    for (const auto& e : g.edges())
        if (e.from == 3) from_max.push_back(e.weight);
    CHECK(from_max == std::vector<std::int64_t>{-5, 1});
    CHECK(check_hytn_consistency(one).consistent);
    CHECK(verify_hytn_schedule(one, {Rational(0), Rational(0), Rational(0)}));

    Hytn neg = named(2);
    neg.add_arc(0, 1, -1);
    CHECK_FALSE(verify_hytn_schedule(neg, {Rational(0), Rational(0)}));
    neg.add_arc(1, 0, 0);
    auto bad = check_hytn_consistency(neg);
    CHECK(bad.losing == std::vector<std::uint32_t>{0, 1});
}
