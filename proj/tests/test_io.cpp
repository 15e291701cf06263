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

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cstn/cli.hpp"
#include "cstn/dc.hpp"
#include "cstn/error.hpp"
#include "cstn/generators.hpp"
#include "cstn/io.hpp"

using namespace cstn;
namespace fs = std::filesystem;

namespace {

const std::string kNet = CSTN_TEST_DATA "/five_event.cstn";
const std::string kStrategy = CSTN_TEST_DATA "/five_event.strategy";

std::string error_of(std::string_view text)
{
    try {
        parse_cstn(text, "t");
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args, const std::string& input = "")
{
    args.insert(args.begin(), "cstn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch()
{
    auto p = fs::temp_directory_path() / ("cstn_io_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

} // namespace

TEST_CASE("five-event document")
{
    Cstn g = read_cstn_file(kNet);
    CHECK(g.nodes().size() == 5);
    CHECK(g.constraints().size() == 11);
    CHECK(g.constraints()[2].label.to_string() == "p -q");
    CHECK(g.nodes()[3].observes == "p");
}

TEST_CASE("syntax errors carry positions")
{
    CHECK(error_of("node A\nnode A\n") == "t:2:6: duplicate node id 'A'");
    CHECK(error_of("propositions p\nnode O observes p\nnode A label \"p -p\"\n").rfind("t:3:14:", 0) == 0);
    CHECK(error_of("node A\nconstraint A B 1\n") == "t:2:14: unknown node 'B'");
    CHECK(error_of("node A\nconstraint A A x\n") == "t:2:16: bad weight 'x'");
    CHECK(error_of("node A\nconstraint A A 2000000000\n").rfind("t:2:16:", 0) == 0);
    CHECK(error_of("frob\n") == "t:1:1: unknown keyword 'frob'");
    CHECK(error_of("node A label \"p\n").rfind("t:1:14: unterminated", 0) == 0);
    CHECK(error_of("node A label \"q\"\n") == "t:1:14: unknown proposition 'q'");
    CHECK(error_of("propositions p\nnode A\n").find("no observation node") != std::string::npos);
    CHECK(error_of("node A\npropositions p\n").rfind("t:2:1:", 0) == 0);
}

TEST_CASE("semantic errors name the rule")
{
    auto e = error_of("propositions p\nnode O observes p\nnode A label \"p\"\n");
    CHECK(e.find("WD2") != std::string::npos);
    CHECK_NOTHROW(parse_cstn("propositions p\nnode O observes p\nnode A label \"p\"\n", "t", false));
}

TEST_CASE("network round trip")
{
    Cstn g = read_cstn_file(kNet);
    std::string text = serialize_cstn(g);
    CHECK(parse_cstn(text) == g);
    CHECK(serialize_cstn(parse_cstn(text)) == text);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        RandomCstnParams p;
        p.seed = seed;
        p.props = static_cast<int>(seed % 4);
        Cstn r = gen_random_cstn(p);
        CHECK(parse_cstn(serialize_cstn(r)) == r);
    }
    Cstn empty = parse_cstn("# nothing\n\n");
    CHECK(empty.nodes().empty());
    CHECK(serialize_cstn(empty).empty());
}

TEST_CASE("strategy round trip and errors")
{
    Cstn g = read_cstn_file(kNet);
    ExecutionStrategy s = read_strategy_file(g, kStrategy);
    CHECK(*s.time(2, *g.node_index("B")) == Rational(3));
    CHECK(parse_strategy(g, serialize_strategy(g, s)) == s);

    Cstn g2 = gen_gamma_n({1});
    ExecutionStrategy s2 = gen_gamma_n_strategy({1});
    CHECK(parse_strategy(g2, serialize_strategy(g2, s2)) == s2);

    auto fails = [&](const std::string& text) {
        try {
            parse_strategy(g, text, "s");
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(fails("A 0\n") == "s:1:1: expected a 'scenario' header first");
    CHECK(fails("scenario \"p\"\n").rfind("s:1:10:", 0) == 0);
    CHECK(fails("scenario \"p q\"\nZ 1\n") == "s:2:1: unknown node 'Z'");
    CHECK(fails("scenario \"p q\"\nA 1/0\n").rfind("s:2:3:", 0) == 0);
    CHECK(fails("scenario \"p q\"\nscenario \"q p\"\n").rfind("s:2:10: scenario listed twice", 0) == 0);
    CHECK(fails("scenario \"p q\"\nA 0\n").find("is missing") != std::string::npos);
    std::string text = serialize_strategy(g, s);
    text.erase(text.find("B 8/1\n"), 6);
    CHECK(fails(text).find("does not schedule B") != std::string::npos);
}

TEST_CASE("dot export")
{
    Cstn g = read_cstn_file(kNet);
    std::string dot = export_dot(g);
    auto count = [](const std::string& s, const std::string& what) {
        std::size_t n = 0;
        for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
        return n;
    };
    CHECK(count(dot, " -> ") == 11);
    CHECK(count(dot, "[label=") == 5 + 11);
    CHECK(export_dot(Cstn{}) == "digraph cstn {\n}\n");
    CHECK(export_dot(g) == dot);

    auto h = construct_h_epsilon(gen_gamma_n({1}), EpsilonRational(1, 1));
    CHECK(count(export_dot(h.hytn), "shape=point") == h.hytn.hyperarc_count());
}

TEST_CASE("simulator follows the reference branches")
{
    Cstn g = read_cstn_file(kNet);
    ExecutionStrategy s = read_strategy_file(g, kStrategy);
    std::ostringstream out;
    std::istringstream in("t\nf\n");
    CHECK(simulate_repl(g, s, in, out) == 0);
    std::string text = out.str();
    CHECK(text.find("t=1/1: Op") != std::string::npos);
    CHECK(text.find("t=2/1: Oq") != std::string::npos);
    CHECK(text.find("t=3/1: B") != std::string::npos);
    CHECK(text.find("t=10/1: C") != std::string::npos);
    CHECK(text.find("scenario: \"p -q\"") != std::string::npos);
    CHECK(text.find("restriction satisfied") != std::string::npos);

    Simulator sim(g, s);
    auto st = sim.step();
    CHECK(st.time == Rational(0));
    st = sim.step();
    REQUIRE(sim.pending() == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(sim.step(), InputError);
    sim.observe(0, false);
    st = sim.step();
    CHECK(st.time == Rational(8));
    CHECK(g.nodes()[st.events[0]].id == "B");
    st = sim.step();
    CHECK(st.time == Rational(9));
    CHECK(g.nodes()[st.events[0]].id == "Oq");
    sim.observe(1, true);
    st = sim.step();
    CHECK(st.time == Rational(10));
    CHECK(sim.finished());
    CHECK(sim.reverify());
}

TEST_CASE("simulator re-prompts and aborts")
{
    Cstn g = read_cstn_file(kNet);
    ExecutionStrategy s = read_strategy_file(g, kStrategy);
    std::ostringstream out;
    std::istringstream in("maybe\nf\nq\n");
    CHECK(simulate_repl(g, s, in, out) == 2);
    CHECK(out.str().find("please answer t or f") != std::string::npos);

    Cstn flat = parse_cstn("node A\nnode B\nconstraint A B 4\n");
    ExecutionStrategy fs(1, 2);
    fs.set(0, 0, Rational(0));
    fs.set(0, 1, Rational(4));
    std::ostringstream o2;
    std::istringstream none;
    CHECK(simulate_repl(flat, fs, none, o2) == 0);
    CHECK(o2.str().find("?") == std::string::npos);
}

TEST_CASE("strategy tree")
{
    Cstn g = read_cstn_file(kNet);
    std::string t = render_strategy_tree(g, read_strategy_file(g, kStrategy));
    CHECK(t.rfind("A = 0/1\nOp = 1/1\np:\n  Oq = 2/1\n", 0) == 0);
    CHECK(t.find("-p:\n  B = 8/1\n  Oq = 9/1\n") != std::string::npos);
}

TEST_CASE("cli exit codes")
{
    auto dir = scratch();
    CHECK(cli({"validate", kNet}).code == 0);
    CHECK(cli({"check-dc", "missing.cstn"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"--help"}).code == 0);

    auto strat = (dir / "s.txt").string();
    Run r = cli({"check-dc", kNet, "--strategy", strat});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("DC\n", 0) == 0);
    CHECK(cli({"verify", kNet, "--strategy", strat}).code == 0);
    CHECK(cli({"verify", kNet, "--strategy", kStrategy, "--epsilon", "1"}).code == 0);

    put(dir / "g1.cstn", serialize_cstn(gen_gamma_n({1})));
    auto g1 = (dir / "g1.cstn").string();
    CHECK(cli({"check-edc", g1, "--epsilon", "1/1", "--cert", (dir / "c.txt").string()}).code == 1);
    CHECK(fs::file_size(dir / "c.txt") > 0);
    CHECK(cli({"check-edc", g1, "--epsilon", "1/2", "--strategy", strat}).code == 0);
    CHECK(cli({"verify", g1, "--strategy", strat, "--epsilon", "1/2"}).code == 0);
    CHECK(cli({"verify", g1, "--strategy", strat, "--epsilon", "1"}).code == 1);
    CHECK(cli({"check-edc", g1, "--epsilon", "0"}).code == 2);
    CHECK(cli({"epsilon-hat", g1, "--resolution", "8"}).code == 0);

    put(dir / "bad.cstn", "propositions p\nnode O observes p\nnode A label \"p\"\n");
    CHECK(cli({"validate", (dir / "bad.cstn").string()}).code == 1);
    CHECK(cli({"check-dc", (dir / "bad.cstn").string()}).code == 2);

    // 21 propositions: 2^21 scenarios exceed the expansion limit
    std::string wide = "propositions";
    for (int i = 0; i < 21; ++i) wide += " p" + std::to_string(i);
    wide += "\n";
    for (int i = 0; i < 21; ++i) wide += "node O" + std::to_string(i) + " observes p" + std::to_string(i) + "\n";
    put(dir / "wide.cstn", wide);
    CHECK(cli({"check-dc", (dir / "wide.cstn").string()}).code == 3);

    put(dir / "f.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    Run gen = cli({"gen", "cnf", "--dimacs", (dir / "f.cnf").string()});
    CHECK(gen.code == 0);
    put(dir / "f.cstn", gen.out);
    CHECK(cli({"check-dc", (dir / "f.cstn").string()}).code == 0);

    Run rnd1 = cli({"gen", "random", "--seed", "5", "--props", "2"});
    Run rnd2 = cli({"gen", "random", "--seed", "5", "--props", "2"});
    CHECK(rnd1.code == 0);
    CHECK(rnd1.out == rnd2.out);

    CHECK(cli({"simulate", kNet, "--strategy", kStrategy}, "f\nt\n").code == 0);
    CHECK(cli({"simulate", kNet, "--strategy", kStrategy, "--tree"}).code == 0);
    CHECK(cli({"export-dot", kNet}).out.find("digraph cstn") == 0);
    CHECK(cli({"export-dot", kNet, "--epsilon", "1/2"}).out.find("digraph hytn") == 0);
    fs::remove_all(dir);
}

TEST_CASE("json reports are deterministic without timings")
{
    Run a = cli({"--json", "--no-timing", "check-dc", kNet});
    Run b = cli({"--json", "--no-timing", "check-dc", kNet});
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["verdict"] == "DC");
    CHECK(j["sizes"]["expanded_nodes"] == 20);
    CHECK_FALSE(j.contains("timing"));
    auto t = nlohmann::json::parse(cli({"--json", "check-dc", kNet}).out);
    CHECK(t["timing"].contains("solve_ms"));
}

TEST_CASE("bench over a directory")
{
    auto dir = scratch();
    put(dir / "a.cstn", serialize_cstn(read_cstn_file(kNet)));
    put(dir / "b.cstn", serialize_cstn(gen_gamma_n({1})));
    Run r = cli({"--json", "--no-timing", "bench", dir.string()});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["file"] == "a.cstn");
    fs::remove_all(dir);
}
