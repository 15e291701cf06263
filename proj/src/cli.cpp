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

#include "cstn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "cstn/dc.hpp"
#include "cstn/error.hpp"
#include "cstn/generators.hpp"
#include "cstn/io.hpp"

namespace cstn {

namespace {

using json = nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

json stats_json(const SolveStats& s, bool timing)
{
    json j;
    j["sizes"] = {{"scenarios", s.scenarios},
                  {"events", s.events},
                  {"expanded_nodes", s.expanded_nodes},
                  {"standard_arcs", s.standard_arcs},
                  {"alpha_hyperarcs", s.alpha_hyperarcs},
                  {"hytn_size", s.hytn_size},
                  {"game_nodes", s.game_nodes},
                  {"game_edges", s.game_edges}};
    j["iterations"] = {{"lifts", s.lifts}, {"energy_cap", s.energy_cap}, {"worst_energy_cap", s.worst_energy_cap}};
    if (timing) j["timing"] = {{"build_ms", s.build_ms}, {"solve_ms", s.solve_ms}, {"verify_ms", s.verify_ms}};
    return j;
}

json report_json(const std::string& cmd, const std::string& file, const DcReport& r, bool timing)
{
    json j;
    j["command"] = cmd;
    j["file"] = file;
    j["verdict"] = to_string(r.verdict);
    j["positive"] = r.positive();
    j["epsilon"] = r.eps.to_string();
    json s = stats_json(r.stats, timing);
    for (auto& [k, v] : s.items()) j[k] = v;
    j["certificate"] = r.certificate;
    return j;
}

void print_report(std::ostream& out, const DcReport& r)
{
    const auto& s = r.stats;
    out << to_string(r.verdict) << '\n';
    out << "  eps " << r.eps.to_string() << ", " << s.scenarios << " scenarios, " << s.expanded_nodes
        << " expanded nodes, " << s.standard_arcs << " arcs + " << s.alpha_hyperarcs << " hyperarcs\n";
    out << "  game " << s.game_nodes << " nodes / " << s.game_edges << " edges, " << s.lifts << " lifts, cap "
        << s.energy_cap << '\n';
    if (!r.certificate.empty()) {
        out << "  unschedulable:";
        std::size_t shown = std::min<std::size_t>(r.certificate.size(), 8);
        for (std::size_t i = 0; i < shown; ++i) out << ' ' << r.certificate[i];
        if (shown < r.certificate.size()) out << " ... (" << r.certificate.size() << " total)";
        out << '\n';
    }
}

int run_check(const std::string& cmd, const std::string& file, const std::optional<EpsilonRational>& eps,
              const std::string& strategy_out, const std::string& cert_out, bool as_json, bool timing, std::ostream& out,
              std::ostream& err)
{
    Cstn g = read_cstn_file(file);
    for (const auto& w : wd_warnings(g)) err << "warning: " << w << '\n';
    DcReport r = eps ? check_edc(g, *eps) : check_dc(g);
    if (as_json)
        out << report_json(cmd, file, r, timing).dump(2) << '\n';
    else
        print_report(out, r);
    if (!strategy_out.empty() && r.strategy) write_text(strategy_out, serialize_strategy(g, *r.strategy), out);
    if (!cert_out.empty() && !r.positive()) {
        std::string text;
        for (const auto& n : r.certificate) text += n + '\n';
        write_text(cert_out, text, out);
    }
    return r.positive() ? 0 : 1;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Dynamic consistency checker for conditional simple temporal networks", "cstn"};
    app.require_subcommand(1);
    bool as_json = false, no_timing = false;
    app.add_flag("--json", as_json, "Machine-readable report on stdout");
    app.add_flag("--no-timing", no_timing, "Leave wall-clock times out of the JSON report");

    std::string file, strategy, cert, eps_text, out_path = "-", dimacs, dir;
    std::int64_t resolution = 64, weights = 10;
    int n = 1, nodes = 6, props = 2;
    std::uint64_t seed = 1;
    std::string density = "1/3";
    bool tree = false;

    auto* validate = app.add_subcommand("validate", "Check syntax and well-definedness");
    validate->add_option("file", file)->required();

    auto* cdc = app.add_subcommand("check-dc", "Decide dynamic consistency");
    cdc->add_option("file", file)->required();
    cdc->add_option("--strategy", strategy, "Write the strategy here when DC");
    cdc->add_option("--cert", cert, "Write the unschedulable expanded nodes here when not DC");

    auto* cedc = app.add_subcommand("check-edc", "Decide eps-dynamic consistency");
    cedc->add_option("file", file)->required();
    cedc->add_option("--epsilon", eps_text, "Reaction time N/D")->required();
    cedc->add_option("--strategy", strategy);
    cedc->add_option("--cert", cert);

    auto* ver = app.add_subcommand("verify", "Verify a strategy against a network");
    ver->add_option("file", file)->required();
    ver->add_option("--strategy", strategy)->required();
    ver->add_option("--epsilon", eps_text);

    auto* ehat = app.add_subcommand("epsilon-hat", "Bracket the largest reaction time");
    ehat->add_option("file", file)->required();
    ehat->add_option("--resolution", resolution, "Stop when the bracket is at most 1/R wide");

    auto* gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    gen->add_option("-o,--output", out_path, "Output file (default stdout)");
    auto* gen_g = gen->add_subcommand("gamma-n", "The exponentially small reaction time family");
    gen_g->add_option("--n", n)->required();
    gen_g->add_option("--strategy", strategy, "Also write the reference strategy");
    auto* gen_c = gen->add_subcommand("cnf", "3-SAT reduction from a DIMACS file");
    gen_c->add_option("--dimacs", dimacs)->required();
    auto* gen_r = gen->add_subcommand("random", "Random well-defined network");
    gen_r->add_option("--nodes", nodes);
    gen_r->add_option("--props", props);
    gen_r->add_option("--seed", seed);
    gen_r->add_option("--density", density, "Arc probability N/D");
    gen_r->add_option("--weights", weights, "Weights drawn from [-R, R]");

    auto* sim = app.add_subcommand("simulate", "Step through a strategy interactively");
    sim->add_option("file", file)->required();
    sim->add_option("--strategy", strategy)->required();
    sim->add_flag("--tree", tree, "Print the strategy tree and exit");

    auto* dot = app.add_subcommand("export-dot", "Graphviz output");
    dot->add_option("file", file)->required();
    dot->add_option("--epsilon", eps_text, "Export H_eps instead of the network");

    auto* bench = app.add_subcommand("bench", "Run check-dc on every .cstn file in a directory");
    bench->add_option("dir", dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const bool timing = !no_timing;
    try {
        std::optional<EpsilonRational> eps;
        if (!eps_text.empty()) eps = EpsilonRational::parse(eps_text);

        if (*validate) {
            Cstn g = read_cstn_file(file, false);
            auto v = validate_wd(g);
            if (as_json) {
                json j{{"command", "validate"}, {"file", file}, {"valid", v.empty()}};
                j["violations"] = json::array();
                for (const auto& x : v) j["violations"].push_back(to_string(x));
                j["warnings"] = wd_warnings(g);
                out << j.dump(2) << '\n';
            } else {
                for (const auto& x : v) out << to_string(x) << '\n';
                for (const auto& w : wd_warnings(g)) err << "warning: " << w << '\n';
                if (v.empty())
                    out << "valid: " << g.propositions().size() << " propositions, " << g.nodes().size() << " nodes, "
                        << g.constraints().size() << " constraints\n";
            }
            return v.empty() ? 0 : 1;
        }
        if (*cdc) return run_check("check-dc", file, std::nullopt, strategy, cert, as_json, timing, out, err);
        if (*cedc) return run_check("check-edc", file, eps, strategy, cert, as_json, timing, out, err);

        if (*ver) {
            Cstn g = read_cstn_file(file);
            ExecutionStrategy sigma = read_strategy_file(g, strategy);
            VerifyReport r = verify_strategy(g, sigma, eps);
            if (as_json) {
                json j{{"command", "verify"}, {"file", file}, {"viable", r.viable}, {"dynamic", r.dynamic}};
                j["eps_dynamic"] = r.eps_dynamic ? json(*r.eps_dynamic) : json(nullptr);
                j["failures"] = {{"viable", r.viable_failures}, {"dynamic", r.dynamic_failures}, {"eps", r.eps_failures}};
                out << j.dump(2) << '\n';
            } else {
                out << "viable: " << (r.viable ? "yes" : "no") << '\n';
                for (const auto& m : r.viable_failures) out << "  " << m << '\n';
                out << "dynamic: " << (r.dynamic ? "yes" : "no") << '\n';
                for (const auto& m : r.dynamic_failures) out << "  " << m << '\n';
                if (r.eps_dynamic) {
                    out << "eps-dynamic (" << eps->to_string() << "): " << (*r.eps_dynamic ? "yes" : "no") << '\n';
                    for (const auto& m : r.eps_failures) out << "  " << m << '\n';
                }
            }
            return r.ok() ? 0 : 1;
        }

        if (*ehat) {
            Cstn g = read_cstn_file(file);
            auto t0 = std::chrono::steady_clock::now();
            EpsilonInterval iv = estimate_epsilon_hat(g, resolution);
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            if (as_json) {
                json j{{"command", "epsilon-hat"}, {"file", file}, {"dc", !iv.empty}, {"probes", iv.probes}};
                j["lo"] = iv.empty ? json(nullptr) : json(iv.lo.to_string());
                j["hi"] = iv.hi ? json(iv.hi->to_string()) : json(nullptr);
                if (timing) j["timing"] = {{"total_ms", ms}};
                out << j.dump(2) << '\n';
            } else if (iv.empty) {
                out << "not DC\n";
            } else {
                out << "eps-hat in [" << iv.lo << ", " << (iv.hi ? iv.hi->to_string() : std::string("inf")) << ")  ("
                    << iv.probes << " probes)\n";
            }
            return iv.empty ? 1 : 0;
        }

        if (*gen_g) {
            GammaNParams p;
            p.n = n;
            Cstn g = gen_gamma_n(p);
            write_text(out_path, serialize_cstn(g), out);
            if (!strategy.empty()) write_text(strategy, serialize_strategy(g, gen_gamma_n_strategy(p)), out);
            return 0;
        }
        if (*gen_c) {
            std::ifstream f(dimacs);
            if (!f) throw InputError("cannot open " + dimacs);
            write_text(out_path, serialize_cstn(gen_from_3cnf(read_dimacs(f))), out);
            return 0;
        }
        if (*gen_r) {
            RandomCstnParams p;
            p.nodes = nodes;
            p.props = props;
            p.seed = seed;
            p.arc_density = Rational::parse(density);
            p.weight_range = weights;
            write_text(out_path, serialize_cstn(gen_random_cstn(p)), out);
            return 0;
        }

        if (*sim) {
            Cstn g = read_cstn_file(file);
            ExecutionStrategy sigma = read_strategy_file(g, strategy);
            VerifyReport r = verify_strategy(g, sigma);
            if (!r.viable || !r.dynamic) {
                err << "strategy is not viable and dynamic; run 'verify' for details\n";
                return 1;
            }
            if (tree) {
                out << render_strategy_tree(g, sigma);
                return 0;
            }
            return simulate_repl(g, sigma, in, out);
        }

        if (*dot) {
            Cstn g = read_cstn_file(file);
            out << (eps ? export_dot(construct_h_epsilon(g, *eps).hytn) : export_dot(g));
            return 0;
        }

        if (*bench) {
            std::vector<std::filesystem::path> files;
            for (const auto& e : std::filesystem::directory_iterator(dir)) {
                if (e.path().extension() == ".cstn") files.push_back(e.path());
            }
            std::sort(files.begin(), files.end());
            json rows = json::array();
            for (const auto& f : files) {
                DcReport r = check_dc(read_cstn_file(f.string()));
                if (as_json) {
                    rows.push_back(report_json("check-dc", f.filename().string(), r, timing));
                } else {
                    const auto& s = r.stats;
                    out << f.filename().string() << ": " << to_string(r.verdict) << "  |Sigma|=" << s.scenarios
                        << " |V_H|=" << s.expanded_nodes << " hyperarcs=" << s.standard_arcs + s.alpha_hyperarcs
                        << " lifts=" << s.lifts << " build=" << s.build_ms << "ms solve=" << s.solve_ms
                        << "ms verify=" << s.verify_ms << "ms\n";
                }
            }
            if (as_json) out << rows.dump(2) << '\n';
            return 0;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const CapacityError& e) {
        err << "capacity: " << e.what() << '\n';
        return 3;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << '\n';
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 2;
}

} // namespace cstn
