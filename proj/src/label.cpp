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

#include "cstn/label.hpp"

#include <algorithm>

#include "cstn/error.hpp"

namespace cstn {

Label Label::from_literals(std::vector<Literal> literals)
{
    std::sort(literals.begin(), literals.end());
    literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
    for (std::size_t i = 1; i < literals.size(); ++i) {
        if (literals[i].proposition == literals[i - 1].proposition)
            throw InputError("unsatisfiable label: both " + literals[i].proposition + " and -" +
                             literals[i].proposition);
    }
    for (const auto& lit : literals) {
        if (lit.proposition.empty()) throw InputError("empty proposition name in label");
    }
    Label l;
    l.literals_ = std::move(literals);
    return l;
}

Label Label::parse(std::string_view text)
{
    std::vector<Literal> lits;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find(' ', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view tok = text.substr(pos, end - pos);
        if (tok.empty()) throw InputError("malformed label '" + std::string(text) + "': literals must be separated by single spaces");
        Literal lit;
        if (tok.front() == '-') {
            lit.negated = true;
            tok.remove_prefix(1);
        }
        if (tok.empty() || tok.front() == '-')
            throw InputError("malformed literal in label '" + std::string(text) + "'");
        lit.proposition = std::string(tok);
        lits.push_back(std::move(lit));
        pos = end + 1;
        if (end + 1 == text.size()) throw InputError("malformed label '" + std::string(text) + "': trailing space");
    }
    return from_literals(std::move(lits));
}

bool Label::mentions(std::string_view proposition) const
{
    auto it = std::lower_bound(literals_.begin(), literals_.end(), proposition,
                               [](const Literal& l, std::string_view p) { return l.proposition < p; });
    return it != literals_.end() && it->proposition == proposition;
}

std::string Label::to_string() const
{
    std::string out;
    for (const auto& lit : literals_) {
        if (!out.empty()) out += ' ';
        if (lit.negated) out += '-';
        out += lit.proposition;
    }
    return out;
}

bool label_con(const Label& l1, const Label& l2)
{
    // Both sorted by proposition: a linear merge finds any p / -p clash.
    auto a = l1.literals().begin(), ae = l1.literals().end();
    auto b = l2.literals().begin(), be = l2.literals().end();
    while (a != ae && b != be) {
        if (a->proposition < b->proposition) ++a;
        else if (b->proposition < a->proposition) ++b;
        else {
            if (a->negated != b->negated) return false;
            ++a;
            ++b;
        }
    }
    return true;
}

bool label_sub(const Label& l1, const Label& l2)
{
    return std::includes(l1.literals().begin(), l1.literals().end(), l2.literals().begin(), l2.literals().end());
}

Label label_and(const Label& l1, const Label& l2)
{
    std::vector<Literal> all = l1.literals();
    all.insert(all.end(), l2.literals().begin(), l2.literals().end());
    return Label::from_literals(std::move(all));
}

bool Scenario::value(std::string_view proposition) const
{
    auto it = assignment_.find(proposition);
    if (it == assignment_.end()) throw InputError("proposition '" + std::string(proposition) + "' not in scenario domain");
    return it->second;
}

bool Scenario::contains(std::string_view proposition) const { return assignment_.find(proposition) != assignment_.end(); }

Label Scenario::as_label() const
{
    std::vector<Literal> lits;
    for (const auto& [p, v] : assignment_) lits.push_back({p, !v});
    return Label::from_literals(std::move(lits));
}

bool scenario_eval(const Scenario& s, const Label& l)
{
    bool result = true;
    for (const auto& lit : l.literals()) {
        // evaluate every literal so unknown propositions are always reported
        if (s.value(lit.proposition) == lit.negated) result = false;
    }
    return result;
}

} // namespace cstn
