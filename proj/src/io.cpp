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
#include <charconv>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "cstn/error.hpp"
#include "cstn/io.hpp"

namespace cstn {

namespace {

struct Token {
    std::string text;
    bool quoted = false;
    int line = 0;
    int col = 0;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string_view source) : text_(text), source_(source) {}

    /// Tokens of the next non-empty line; false at end of input.
    bool next_line(std::vector<Token>& out)
    {
        out.clear();
        while (out.empty() && pos_ < text_.size()) {
            ++line_;
            auto end = text_.find('\n', pos_);
            if (end == std::string_view::npos) end = text_.size();
            std::string_view ln = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            if (!ln.empty() && ln.back() == '\r') ln.remove_suffix(1);
            split(ln, out);
        }
        return !out.empty();
    }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { fail_at(t.line, t.col, msg); }
    [[noreturn]] void fail_at(int line, int col, const std::string& msg) const
    {
        throw InputError(std::string(source_) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }

private:
    void split(std::string_view ln, std::vector<Token>& out)
    {
        std::size_t i = 0;
        while (i < ln.size()) {
            char c = ln[i];
            if (c == ' ' || c == '\t') {
                ++i;
            } else if (c == '#') {
                break;
            } else if (c == '"') {
                auto close = ln.find('"', i + 1);
                if (close == std::string_view::npos) fail_at(line_, static_cast<int>(i) + 1, "unterminated string");
                out.push_back({std::string(ln.substr(i + 1, close - i - 1)), true, line_, static_cast<int>(i) + 1});
                i = close + 1;
            } else {
                std::size_t j = i;
                while (j < ln.size() && ln[j] != ' ' && ln[j] != '\t' && ln[j] != '#' && ln[j] != '"') ++j;
                out.push_back({std::string(ln.substr(i, j - i)), false, line_, static_cast<int>(i) + 1});
                i = j;
            }
        }
    }

    std::string_view text_;
    std::string_view source_;
    std::size_t pos_ = 0;
    int line_ = 0;
};

bool is_ident(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Cstn parse_cstn(std::string_view text, std::string_view source, bool check_wd)
{
    Lexer lex(text, source);
    std::vector<Token> t;
    std::vector<std::string> props;
    std::set<std::string, std::less<>> prop_set, node_set;
    std::vector<CstnNode> nodes;
    std::vector<LabeledConstraint> arcs;
    bool seen_props = false;

    auto word = [&](const Token& tok, const char* what) {
        if (tok.quoted) lex.fail(tok, std::string("expected ") + what + ", got a string");
        return tok.text;
    };
    auto label_of = [&](const Token& tok) {
        if (!tok.quoted) lex.fail(tok, "label must be a quoted string");
        Label l;
        try {
            l = Label::parse(tok.text);
        } catch (const InputError& e) {
            lex.fail(tok, e.what());
        }
        for (const auto& lit : l.literals()) {
            if (!prop_set.count(lit.proposition)) lex.fail(tok, "unknown proposition '" + lit.proposition + "'");
        }
        return l;
    };

    while (lex.next_line(t)) {
        const std::string kw = word(t[0], "a keyword");
        if (kw == "propositions") {
            if (seen_props || !nodes.empty()) lex.fail(t[0], "'propositions' must come once, before any node");
            seen_props = true;
            for (std::size_t i = 1; i < t.size(); ++i) {
                std::string p = word(t[i], "a proposition");
                if (!is_ident(p)) lex.fail(t[i], "bad proposition name '" + p + "'");
                if (!prop_set.insert(p).second) lex.fail(t[i], "duplicate proposition '" + p + "'");
                props.push_back(p);
            }
        } else if (kw == "node") {
            if (t.size() < 2) lex.fail(t[0], "node needs an id");
            CstnNode n{word(t[1], "a node id"), {}, std::nullopt};
            if (!is_ident(n.id)) lex.fail(t[1], "bad node id '" + n.id + "'");
            if (!node_set.insert(n.id).second) lex.fail(t[1], "duplicate node id '" + n.id + "'");
            for (std::size_t i = 2; i < t.size(); i += 2) {
                std::string opt = word(t[i], "'label' or 'observes'");
                if (i + 1 >= t.size()) lex.fail(t[i], "'" + opt + "' needs a value");
                if (opt == "label") {
                    n.label = label_of(t[i + 1]);
                } else if (opt == "observes") {
                    std::string p = word(t[i + 1], "a proposition");
                    if (!prop_set.count(p)) lex.fail(t[i + 1], "unknown proposition '" + p + "'");
                    for (const auto& other : nodes) {
                        if (other.observes == p) lex.fail(t[i + 1], p + " is already observed by " + other.id);
                    }
                    n.observes = p;
                } else {
                    lex.fail(t[i], "unexpected '" + opt + "'");
                }
            }
            nodes.push_back(std::move(n));
        } else if (kw == "constraint") {
            if (t.size() != 4 && t.size() != 6) lex.fail(t[0], "expected: constraint <u> <v> <w> [label \"<l>\"]");
            LabeledConstraint c{word(t[1], "a node id"), word(t[2], "a node id"), 0, {}};
            for (int i : {1, 2}) {
                if (!node_set.count(t[static_cast<std::size_t>(i)].text))
                    lex.fail(t[static_cast<std::size_t>(i)], "unknown node '" + t[static_cast<std::size_t>(i)].text + "'");
            }
            const std::string ws = word(t[3], "an integer weight");
            auto [ptr, ec] = std::from_chars(ws.data(), ws.data() + ws.size(), c.w);
            if (ec != std::errc{} || ptr != ws.data() + ws.size()) lex.fail(t[3], "bad weight '" + ws + "'");
            if (c.w > kMaxInputWeight || c.w < -kMaxInputWeight)
                lex.fail(t[3], "weight " + ws + " exceeds +-" + std::to_string(kMaxInputWeight));
            if (t.size() == 6) {
                if (word(t[4], "'label'") != "label") lex.fail(t[4], "expected 'label'");
                c.label = label_of(t[5]);
            }
            arcs.push_back(std::move(c));
        } else {
            lex.fail(t[0], "unknown keyword '" + kw + "'");
        }
    }

    for (const auto& p : props) {
        if (std::none_of(nodes.begin(), nodes.end(), [&](const CstnNode& n) { return n.observes == p; }))
            throw InputError(std::string(source) + ": proposition " + p + " has no observation node");
    }
    Cstn g(std::move(props), std::move(nodes), std::move(arcs));
    if (check_wd) require_wd(g);
    return g;
}

Cstn read_cstn_file(const std::string& path, bool check_wd) { return parse_cstn(read_file(path), path, check_wd); }

std::string serialize_cstn(const Cstn& g)
{
    std::ostringstream os;
    if (!g.propositions().empty()) {
        os << "propositions";
        for (const auto& p : g.propositions()) os << ' ' << p;
        os << '\n';
    }
    for (const auto& n : g.nodes()) {
        os << "node " << n.id;
        if (!n.label.empty()) os << " label " << quote(n.label.to_string());
        if (n.observes) os << " observes " << *n.observes;
        os << '\n';
    }
    for (const auto& c : g.constraints()) {
        os << "constraint " << c.u << ' ' << c.v << ' ' << c.w;
        if (!c.label.empty()) os << " label " << quote(c.label.to_string());
        os << '\n';
    }
    return os.str();
}

ExecutionStrategy parse_strategy(const Cstn& g, std::string_view text, std::string_view source)
{
    Lexer lex(text, source);
    std::vector<Token> t;
    ExecutionStrategy sigma(g.scenario_count(), g.nodes().size());
    std::vector<bool> seen(g.scenario_count(), false);
    std::optional<ScenarioIndex> cur;

    while (lex.next_line(t)) {
        if (!t[0].quoted && t[0].text == "scenario") {
            if (t.size() != 2 || !t[1].quoted) lex.fail(t[0], "expected: scenario \"<label>\"");
            Label l;
            try {
                l = Label::parse(t[1].text);
            } catch (const InputError& e) {
                lex.fail(t[1], e.what());
            }
            if (l.size() != g.propositions().size()) lex.fail(t[1], "scenario must assign every proposition");
            Scenario::Assignment a;
            for (const auto& lit : l.literals()) {
                if (!g.proposition_index(lit.proposition)) lex.fail(t[1], "unknown proposition '" + lit.proposition + "'");
                a[lit.proposition] = !lit.negated;
            }
            ScenarioIndex k = g.scenario_index(Scenario(a));
            if (seen[k]) lex.fail(t[1], "scenario listed twice");
            seen[k] = true;
            cur = k;
            continue;
        }
        if (!cur) lex.fail(t[0], "expected a 'scenario' header first");
        if (t.size() != 2 || t[0].quoted || t[1].quoted) lex.fail(t[0], "expected: <node> N/D");
        auto v = g.node_index(t[0].text);
        if (!v) lex.fail(t[0], "unknown node '" + t[0].text + "'");
        if (!g.active_node(*cur, *v)) lex.fail(t[0], "node " + t[0].text + " is not in this scenario");
        if (sigma.time(*cur, *v)) lex.fail(t[0], "node " + t[0].text + " scheduled twice");
        try {
            sigma.set(*cur, *v, Rational::parse(t[1].text));
        } catch (const InputError& e) {
            lex.fail(t[1], e.what());
        }
    }

    for (std::uint64_t k = 0; k < g.scenario_count(); ++k) {
        auto s = static_cast<ScenarioIndex>(k);
        std::string name = quote(g.scenario(s).as_label().to_string());
        if (!seen[k]) throw InputError(std::string(source) + ": scenario " + name + " is missing");
        for (std::size_t v = 0; v < g.nodes().size(); ++v) {
            if (g.active_node(s, v) && !sigma.time(s, v))
                throw InputError(std::string(source) + ": scenario " + name + " does not schedule " + g.nodes()[v].id);
        }
    }
    return sigma;
}

ExecutionStrategy read_strategy_file(const Cstn& g, const std::string& path)
{
    return parse_strategy(g, read_file(path), path);
}

std::string serialize_strategy(const Cstn& g, const ExecutionStrategy& sigma)
{
    std::ostringstream os;
    for (std::uint64_t k = 0; k < g.scenario_count(); ++k) {
        auto s = static_cast<ScenarioIndex>(k);
        os << "scenario " << quote(g.scenario(s).as_label().to_string()) << '\n';
        for (std::size_t v = 0; v < g.nodes().size(); ++v) {
            if (const auto& t = sigma.time(s, v)) os << g.nodes()[v].id << ' ' << t->to_string() << '\n';
        }
    }
    return os.str();
}

std::string export_dot(const Cstn& g)
{
    std::ostringstream os;
    os << "digraph cstn {\n";
    for (const auto& n : g.nodes()) {
        std::string text = n.id;
        if (n.observes) text += "\\n" + *n.observes + "?";
        if (!n.label.empty()) text += "\\n[" + n.label.to_string() + "]";
        os << "  " << quote(n.id) << " [label=" << quote(text) << (n.observes ? ", shape=box" : "") << "];\n";
    }
    for (const auto& c : g.constraints()) {
        std::string text = std::to_string(c.w);
        if (!c.label.empty()) text += ", " + c.label.to_string();
        os << "  " << quote(c.u) << " -> " << quote(c.v) << " [label=" << quote(text) << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string export_dot(const Hytn& h)
{
    std::ostringstream os;
    os << "digraph hytn {\n";
    for (const auto& n : h.nodes()) os << "  " << quote(n) << ";\n";
    for (std::size_t a = 0; a < h.hyperarc_count(); ++a) {
        std::string j = quote("#a" + std::to_string(a));
        os << "  " << j << " [shape=point];\n";
        os << "  " << quote(h.nodes()[h.tail(a)]) << " -> " << j << " [arrowhead=none];\n";
        for (const auto& hd : h.heads(a))
            os << "  " << j << " -> " << quote(h.nodes()[hd.node]) << " [label=" << quote(std::to_string(hd.weight)) << "];\n";
    }
    os << "}\n";
    return os.str();
}

Simulator::Simulator(const Cstn& g, const ExecutionStrategy& sigma)
    : g_(&g), sigma_(&sigma), outcome_(g.propositions().size()), done_(g.nodes().size())
{
    if (sigma.scenario_count() != g.scenario_count() || sigma.node_count() != g.nodes().size())
        throw InputError("strategy shape does not match the network");
}

std::vector<ScenarioIndex> Simulator::consistent() const
{
    std::vector<ScenarioIndex> out;
    for (std::uint64_t k = 0; k < g_->scenario_count(); ++k) {
        auto s = static_cast<ScenarioIndex>(k);
        bool ok = true;
        for (std::size_t p = 0; p < outcome_.size() && ok; ++p) ok = !outcome_[p] || g_->truth(s, p) == *outcome_[p];
        if (ok) out.push_back(s);
    }
    return out;
}

bool Simulator::finished() const
{
    if (!pending_.empty()) return false;
    for (auto s : consistent()) {
        for (std::size_t v = 0; v < done_.size(); ++v) {
            if (g_->active_node(s, v) && !done_[v]) return false;
        }
    }
    return true;
}

Simulator::Step Simulator::step()
{
    if (!pending_.empty()) throw InputError("answer the pending observations first");
    const auto live = consistent();
    std::optional<Rational> t;
    for (auto s : live) {
        for (std::size_t v = 0; v < done_.size(); ++v) {
            if (!done_[v] && g_->active_node(s, v) && (!t || *sigma_->time(s, v) < *t)) t = *sigma_->time(s, v);
        }
    }
    if (!t) throw InputError("simulation already finished");

    Step st{*t, {}};
    for (std::size_t v = 0; v < done_.size(); ++v) {
        if (done_[v]) continue;
        bool any = false, all = true;
        for (auto s : live) {
            bool here = g_->active_node(s, v) && *sigma_->time(s, v) == *t;
            any = any || here;
            all = all && here;
        }
        if (any && !all)
            throw InputError("strategy is not dynamic: " + g_->nodes()[v].id + " at " + t->to_string() +
                             " depends on outcomes not yet observed");
        if (all) st.events.push_back(v);
    }
    for (auto v : st.events) {
        done_[v] = *t;
        if (auto p = g_->observed_by(v); p && !outcome_[*p]) pending_.push_back(*p);
    }
    return st;
}

void Simulator::observe(std::size_t prop, bool value)
{
    auto it = std::find(pending_.begin(), pending_.end(), prop);
    if (it == pending_.end()) throw InputError("proposition " + g_->propositions().at(prop) + " is not awaiting an outcome");
    outcome_[prop] = value;
    pending_.erase(it);
}

Label Simulator::realized() const
{
    std::vector<Literal> lits;
    for (std::size_t p = 0; p < outcome_.size(); ++p) {
        if (outcome_[p]) lits.push_back({g_->propositions()[p], !*outcome_[p]});
    }
    return Label::from_literals(std::move(lits));
}

bool Simulator::reverify() const
{
    if (!finished()) return false;
    const auto live = consistent();
    if (live.empty()) return false;
    const auto s = live.front();
    for (std::size_t v = 0; v < done_.size(); ++v) {
        if (g_->active_node(s, v) != done_[v].has_value()) return false;
    }
    for (std::size_t c = 0; c < g_->constraints().size(); ++c) {
        if (!g_->active_constraint(s, c)) continue;
        if (*done_[g_->constraint_head(c)] - *done_[g_->constraint_tail(c)] > Rational(g_->constraints()[c].w)) return false;
    }
    return true;
}

namespace {

std::optional<bool> parse_outcome(std::string s)
{
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "t" || s == "true" || s == "1" || s == "y" || s == "yes") return true;
    if (s == "f" || s == "false" || s == "0" || s == "n" || s == "no") return false;
    return std::nullopt;
}

std::string event_list(const Cstn& g, const std::vector<std::size_t>& evs)
{
    std::string s;
    for (auto v : evs) s += (s.empty() ? "" : ", ") + g.nodes()[v].id;
    return s;
}

} // namespace

int simulate_repl(const Cstn& g, const ExecutionStrategy& sigma, std::istream& in, std::ostream& out)
{
    Simulator sim(g, sigma);
    while (!sim.finished()) {
        auto st = sim.step();
        out << "t=" << st.time << ": " << event_list(g, st.events) << '\n';
        while (!sim.pending().empty()) {
            std::size_t p = sim.pending().front();
            for (;;) {
                out << "  outcome of " << g.propositions()[p] << "? [t/f, q to quit] " << std::flush;
                std::string line;
                if (!std::getline(in, line) || line == "q" || line == "quit") {
                    out << "\naborted\n";
                    return 2;
                }
                if (auto v = parse_outcome(line)) {
                    sim.observe(p, *v);
                    break;
                }
                out << "  please answer t or f\n";
            }
        }
    }
    out << "scenario: \"" << sim.realized().to_string() << "\"\n";
    for (std::size_t v = 0; v < g.nodes().size(); ++v) {
        if (const auto& t = sim.schedule()[v]) out << "  " << g.nodes()[v].id << ' ' << *t << '\n';
    }
    bool ok = sim.reverify();
    out << (ok ? "restriction satisfied\n" : "restriction VIOLATED\n");
    return ok ? 0 : 1;
}

namespace {

void tree(const Cstn& g, Simulator sim, const std::string& indent, std::ostringstream& os)
{
    for (;;) {
        if (!sim.pending().empty()) {
            std::size_t p = sim.pending().front();
            for (bool value : {true, false}) {
                Simulator branch = sim;
                branch.observe(p, value);
                os << indent << (value ? "" : "-") << g.propositions()[p] << ":\n";
                tree(g, branch, indent + "  ", os);
            }
            return;
        }
        if (sim.finished()) return;
        auto st = sim.step();
        for (auto v : st.events) os << indent << g.nodes()[v].id << " = " << st.time << '\n';
    }
}

} // namespace

std::string render_strategy_tree(const Cstn& g, const ExecutionStrategy& sigma)
{
    std::ostringstream os;
    tree(g, Simulator(g, sigma), "", os);
    return os.str();
}

} // namespace cstn
