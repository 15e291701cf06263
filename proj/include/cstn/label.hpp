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

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cstn {

struct Literal {
    std::string proposition;
    bool negated = false;

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

/**
 * A conjunction of literals in canonical form: sorted by proposition name,
 * at most one literal per proposition. The empty label is lambda.
 * A label can never be unsatisfiable; construction rejects p and -p together.
 */
class Label {
public:
    Label() = default;

    /// Canonicalizes; duplicate literals collapse, contradictory ones throw InputError.
    static Label from_literals(std::vector<Literal> literals);
    /// Parses "p -q": literals separated by single spaces, '-' marks negation, "" is lambda.
    static Label parse(std::string_view text);

    const std::vector<Literal>& literals() const { return literals_; }
    bool empty() const { return literals_.empty(); }
    std::size_t size() const { return literals_.size(); }
    bool mentions(std::string_view proposition) const;

    std::string to_string() const;

    friend bool operator==(const Label&, const Label&) = default;

private:
    std::vector<Literal> literals_;
};

/// Con(l1, l2): l1 and l2 are jointly satisfiable.
bool label_con(const Label& l1, const Label& l2);
/// Sub(l1, l2): l1 implies l2, i.e. every literal of l2 occurs in l1.
bool label_sub(const Label& l1, const Label& l2);
/// Conjunction of two consistent labels. Throws InputError if they are inconsistent.
Label label_and(const Label& l1, const Label& l2);

/// A total truth assignment over a proposition set.
class Scenario {
public:
    using Assignment = std::map<std::string, bool, std::less<>>;

    Scenario() = default;
    explicit Scenario(Assignment assignment) : assignment_(std::move(assignment)) {}

    const Assignment& assignment() const { return assignment_; }
    /// Throws InputError if the proposition is not in the domain.
    bool value(std::string_view proposition) const;
    bool contains(std::string_view proposition) const;

    /// The label l_s whose only model is this scenario.
    Label as_label() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;

private:
    Assignment assignment_;
};

/// s(l). Throws InputError when l mentions a proposition outside the scenario's domain.
bool scenario_eval(const Scenario& s, const Label& l);

} // namespace cstn
