#pragma once

#include <algorithm>
#include <compare>
#include <set>
#include <string>
#include <vector>

#include "foldkit/errors.hpp"

namespace foldkit {

// Function-free term: a variable (capitalized) or a constant (lowercase).
struct Term {
    enum class Kind { Variable, Constant };

    Kind kind = Kind::Constant;
    std::string name;

    static Term var(std::string name) { return Term{Kind::Variable, std::move(name)}; }
    static Term constant(std::string name) { return Term{Kind::Constant, std::move(name)}; }

    bool is_var() const { return kind == Kind::Variable; }

    auto operator<=>(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }

    bool is_ground() const {
        return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_var(); });
    }

    auto operator<=>(const Atom&) const = default;
};

struct Literal {
    Atom atom;
    bool negated = false;  // true = negation-as-failure

    auto operator<=>(const Literal&) const = default;
};

// `head :- body.` The head is never negated. A bodyless ground clause is a fact.
struct Clause {
    Atom head;
    std::vector<Literal> body;

    bool is_fact() const { return body.empty() && head.is_ground(); }

    std::size_t length() const { return body.size(); }

    // Variables in order of first appearance (head first, then body).
    std::vector<std::string> variables() const {
        std::vector<std::string> names;
        auto add = [&names](const Atom& atom) {
            for (const Term& t : atom.args) {
                if (t.is_var() && std::find(names.begin(), names.end(), t.name) == names.end())
                    names.push_back(t.name);
            }
        };
        add(head);
        for (const Literal& lit : body) add(lit.atom);
        return names;
    }

    auto operator<=>(const Clause&) const = default;
};

// Learned theory: default clauses over the target predicate plus invented
// abnormality clauses (heads ab0, ab1, ...).
struct Hypothesis {
    std::vector<Clause> defaults;
    std::vector<Clause> abnormalities;

    bool empty() const { return defaults.empty() && abnormalities.empty(); }

    std::vector<Clause> all_clauses() const {
        std::vector<Clause> out = defaults;
        out.insert(out.end(), abnormalities.begin(), abnormalities.end());
        return out;
    }

    std::size_t total_body_literals() const {
        std::size_t n = 0;
        for (const Clause& c : defaults) n += c.length();
        for (const Clause& c : abnormalities) n += c.length();
        return n;
    }
};

struct PredicateSignature {
    std::string name;
    std::size_t arity = 0;

    auto operator<=>(const PredicateSignature&) const = default;
};

// Extended logic program: function-free clauses (possibly with NAF in bodies)
// plus a set of ground facts. Stratification is checked separately.
struct BackgroundTheory {
    std::vector<Clause> clauses;
    std::set<Atom> facts;

    void add_fact(Atom atom) {
        if (!atom.is_ground()) throw ContractError("facts must be ground: " + atom.predicate);
        facts.insert(std::move(atom));
    }

    // Predicates usable as body literals, in deterministic (sorted) order.
    std::vector<PredicateSignature> language(const std::set<std::string>& exclude = {}) const {
        std::set<PredicateSignature> sigs;
        for (const Atom& fact : facts)
            if (!exclude.count(fact.predicate)) sigs.insert({fact.predicate, fact.arity()});
        for (const Clause& clause : clauses)
            if (!exclude.count(clause.head.predicate))
                sigs.insert({clause.head.predicate, clause.head.arity()});
        return {sigs.begin(), sigs.end()};
    }

    // Constants appearing anywhere in the program (domain closure base).
    std::set<std::string> constants() const {
        std::set<std::string> out;
        auto scan = [&out](const Atom& atom) {
            for (const Term& t : atom.args)
                if (!t.is_var()) out.insert(t.name);
        };
        for (const Atom& fact : facts) scan(fact);
        for (const Clause& clause : clauses) {
            scan(clause.head);
            for (const Literal& lit : clause.body) scan(lit.atom);
        }
        return out;
    }
};

// Fresh-variable naming for refinement and invented clauses: the first unused
// name from X, Y, Z, U, V, W, then V7, V8, ...
inline std::string fresh_variable_name(const std::vector<std::string>& taken) {
    static const char* pool[] = {"X", "Y", "Z", "U", "V", "W"};
    for (const char* name : pool)
        if (std::find(taken.begin(), taken.end(), name) == taken.end()) return name;
    for (std::size_t i = 7;; ++i) {
        std::string name = "V" + std::to_string(i);
        if (std::find(taken.begin(), taken.end(), name) == taken.end()) return name;
    }
}

// Canonical head for a predicate being learned: target(X), target(X, Y), ...
inline Atom most_general_head(const std::string& predicate, std::size_t arity) {
    Atom head;
    head.predicate = predicate;
    std::vector<std::string> taken;
    for (std::size_t i = 0; i < arity; ++i) {
        std::string name = fresh_variable_name(taken);
        taken.push_back(name);
        head.args.push_back(Term::var(name));
    }
    return head;
}

inline Clause most_general_clause(const std::string& predicate, std::size_t arity) {
    return Clause{most_general_head(predicate, arity), {}};
}

}  // namespace foldkit
