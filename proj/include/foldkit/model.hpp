#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "foldkit/errors.hpp"
#include "foldkit/logic.hpp"
#include "foldkit/stratify.hpp"

namespace foldkit {

// Deduced set of ground atoms, indexed by predicate. Immutable once built;
// concurrent lookups are safe.
class Model {
public:
    using Tuple = std::vector<std::string>;

    void insert(const std::string& predicate, Tuple tuple) {
        relations_[predicate].insert(std::move(tuple));
    }

    bool insert_new(const std::string& predicate, Tuple tuple) {
        return relations_[predicate].insert(std::move(tuple)).second;
    }

    bool contains(const Atom& ground_atom) const {
        auto it = relations_.find(ground_atom.predicate);
        if (it == relations_.end()) return false;
        Tuple tuple;
        tuple.reserve(ground_atom.args.size());
        for (const Term& t : ground_atom.args) tuple.push_back(t.name);
        return it->second.count(tuple) > 0;
    }

    const std::set<Tuple>* tuples(const std::string& predicate) const {
        auto it = relations_.find(predicate);
        return it == relations_.end() ? nullptr : &it->second;
    }

    std::set<Atom> atoms() const {
        std::set<Atom> out;
        for (const auto& [predicate, tuples] : relations_) {
            for (const Tuple& tuple : tuples) {
                Atom atom;
                atom.predicate = predicate;
                for (const std::string& value : tuple) atom.args.push_back(Term::constant(value));
                out.insert(std::move(atom));
            }
        }
        return out;
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& [predicate, tuples] : relations_) n += tuples.size();
        return n;
    }

private:
    std::map<std::string, std::set<Tuple>> relations_;
};

namespace detail {

using Binding = std::map<std::string, std::string>;

// Matches an atom against a ground tuple, extending the binding. Returns
// false (binding untouched on entry via caller copy) on clash.
inline bool match_tuple(const Atom& atom, const Model::Tuple& tuple, Binding& binding) {
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        const Term& term = atom.args[i];
        if (!term.is_var()) {
            if (term.name != tuple[i]) return false;
            continue;
        }
        auto it = binding.find(term.name);
        if (it == binding.end())
            binding.emplace(term.name, tuple[i]);
        else if (it->second != tuple[i])
            return false;
    }
    return true;
}

inline Atom substitute(const Atom& atom, const Binding& binding) {
    Atom out = atom;
    for (Term& term : out.args) {
        if (!term.is_var()) continue;
        auto it = binding.find(term.name);
        if (it != binding.end()) term = Term::constant(it->second);
    }
    return out;
}

// Enumerates total instantiations of a clause body that hold in `model`,
// under domain closure: variables not fixed by positive literals range over
// `universe`. Negated literals are checked once ground. Calls `sink` with
// each satisfying binding; sink returns false to stop early.
template <typename Sink>
bool enumerate_solutions(const Clause& clause, const Binding& seed, const Model& model,
                         const std::vector<std::string>& universe, Sink&& sink) {
    std::vector<const Literal*> positives, negatives;
    for (const Literal& lit : clause.body)
        (lit.negated ? negatives : positives).push_back(&lit);

    // Variables needing domain enumeration: anything not bound by the seed
    // or by joining the positive literals (i.e., head- or NAF-only vars).
    std::vector<std::string> loose;
    {
        std::set<std::string> bound;
        for (const auto& [name, value] : seed) bound.insert(name);
        for (const Literal* lit : positives)
            for (const Term& t : lit->atom.args)
                if (t.is_var()) bound.insert(t.name);
        auto note = [&](const Atom& atom) {
            for (const Term& t : atom.args)
                if (t.is_var() && !bound.count(t.name) &&
                    std::find(loose.begin(), loose.end(), t.name) == loose.end())
                    loose.push_back(t.name);
        };
        note(clause.head);
        for (const Literal* lit : negatives) note(lit->atom);
    }

    bool keep_going = true;

    auto check_negatives = [&](const Binding& binding) {
        for (const Literal* lit : negatives)
            if (model.contains(substitute(lit->atom, binding))) return false;
        return true;
    };

    std::function<void(std::size_t, Binding&)> enumerate_loose =
        [&](std::size_t index, Binding& binding) {
            if (!keep_going) return;
            if (index == loose.size()) {
                if (check_negatives(binding)) keep_going = sink(binding);
                return;
            }
            for (const std::string& constant : universe) {
                if (!keep_going) return;
                binding[loose[index]] = constant;
                enumerate_loose(index + 1, binding);
            }
            binding.erase(loose[index]);
        };

    std::function<void(std::size_t, Binding&)> join_positives =
        [&](std::size_t index, Binding& binding) {
            if (!keep_going) return;
            if (index == positives.size()) {
                enumerate_loose(0, binding);
                return;
            }
            const Atom bound = substitute(positives[index]->atom, binding);
            if (bound.is_ground()) {
                if (model.contains(bound)) join_positives(index + 1, binding);
                return;
            }
            const auto* tuples = model.tuples(bound.predicate);
            if (tuples == nullptr) return;

            // narrow the scan to tuples agreeing with the bound prefix
            Model::Tuple prefix;
            for (const Term& t : bound.args) {
                if (t.is_var()) break;
                prefix.push_back(t.name);
            }
            auto begin = tuples->begin(), end = tuples->end();
            if (!prefix.empty()) {
                begin = tuples->lower_bound(prefix);
                Model::Tuple sentinel = prefix;
                sentinel.back() += '\xff';
                end = tuples->lower_bound(sentinel);
            }
            for (auto it = begin; it != end; ++it) {
                if (!keep_going) return;
                if (it->size() != bound.args.size()) continue;
                Binding extended = binding;
                if (match_tuple(bound, *it, extended)) join_positives(index + 1, extended);
            }
        };

    Binding root = seed;
    join_positives(0, root);
    return !keep_going;  // true if the sink stopped the search
}

}  // namespace detail

// Bottom-up deduction: the unique stratified model under domain closure.
// `extra_constants` widens the universe (example identifiers in particular).
inline Model deduce(const BackgroundTheory& theory,
                    const std::set<std::string>& extra_constants = {}) {
    const StratificationReport gate = check_stratified(theory);
    if (!gate.ok) throw ContractError("deduce requires a stratified theory: " + gate.message);

    std::set<std::string> constant_set = theory.constants();
    constant_set.insert(extra_constants.begin(), extra_constants.end());
    const std::vector<std::string> universe(constant_set.begin(), constant_set.end());

    Model model;
    for (const Atom& fact : theory.facts) {
        Model::Tuple tuple;
        for (const Term& t : fact.args) tuple.push_back(t.name);
        model.insert(fact.predicate, std::move(tuple));
    }

    const std::map<std::string, int> strata = compute_strata(theory);
    int max_stratum = 0;
    for (const auto& [predicate, level] : strata) max_stratum = std::max(max_stratum, level);

    for (int level = 0; level <= max_stratum; ++level) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Clause& clause : theory.clauses) {
                if (strata.at(clause.head.predicate) != level) continue;
                detail::enumerate_solutions(
                    clause, {}, model, universe, [&](const detail::Binding& binding) {
                        const Atom head = detail::substitute(clause.head, binding);
                        Model::Tuple tuple;
                        for (const Term& t : head.args) tuple.push_back(t.name);
                        if (model.insert_new(head.predicate, std::move(tuple))) changed = true;
                        return true;
                    });
            }
        }
    }
    return model;
}

// True if the clause body is satisfiable with the head bound to
// `example` (an existence query against a fixed model).
inline bool clause_covers_example(const Clause& clause, const Atom& example, const Model& model,
                                  const std::vector<std::string>& universe) {
    if (clause.head.predicate != example.predicate || clause.head.arity() != example.arity())
        return false;
    detail::Binding seed;
    for (std::size_t i = 0; i < clause.head.args.size(); ++i) {
        const Term& term = clause.head.args[i];
        if (!term.is_var()) {
            if (term.name != example.args[i].name) return false;
            continue;
        }
        auto it = seed.find(term.name);
        if (it == seed.end())
            seed.emplace(term.name, example.args[i].name);
        else if (it->second != example.args[i].name)
            return false;
    }
    return detail::enumerate_solutions(clause, seed, model, universe,
                                       [](const detail::Binding&) { return false; });
}

namespace detail {

inline std::set<std::string> example_constants(const std::set<Atom>& examples) {
    std::set<std::string> out;
    for (const Atom& atom : examples)
        for (const Term& t : atom.args)
            if (!t.is_var()) out.insert(t.name);
    return out;
}

}  // namespace detail

// Subset of `examples` entailed by theory + clause. The theory must already
// contain any abnormality clauses the body refers to.
inline std::set<Atom> covers(const Clause& clause, const std::set<Atom>& examples,
                             const BackgroundTheory& theory) {
    for (const Atom& example : examples)
        if (example.predicate != clause.head.predicate || example.arity() != clause.head.arity())
            throw ContractError("covers: example predicate '" + example.predicate +
                                "' does not match clause head '" + clause.head.predicate + "'");

    const std::set<std::string> extras = detail::example_constants(examples);
    const Model model = deduce(theory, extras);

    std::set<std::string> constant_set = theory.constants();
    constant_set.insert(extras.begin(), extras.end());
    const std::vector<std::string> universe(constant_set.begin(), constant_set.end());

    std::set<Atom> covered;
    for (const Atom& example : examples)
        if (clause_covers_example(clause, example, model, universe)) covered.insert(example);
    return covered;
}

}  // namespace foldkit
