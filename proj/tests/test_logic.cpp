#include <catch2/catch_amalgamated.hpp>

#include "foldkit/logic.hpp"
#include "foldkit/model.hpp"
#include "foldkit/parser.hpp"
#include "foldkit/refinement.hpp"
#include "foldkit/render.hpp"
#include "foldkit/stratify.hpp"
#include "foldkit/subsumption.hpp"

#include "support/oracles.hpp"

using namespace foldkit;

namespace {

Atom ground1(const std::string& pred, const std::string& arg) {
    return Atom{pred, {Term::constant(arg)}};
}

const char* kFlyBackground =
    "bird(X) :- penguin(X).\n"
    "bird(tweety).  bird(et).\n"
    "cat(kitty).    penguin(polly).\n";

}  // namespace

TEST_CASE("parse_program handles clauses, facts and NAF") {
    const BackgroundTheory theory = parse_program("bird(X) :- penguin(X). penguin(polly).");
    REQUIRE(theory.clauses.size() == 1);
    REQUIRE(theory.facts.size() == 1);
    CHECK(theory.clauses[0].head.predicate == "bird");
    CHECK(theory.facts.count(ground1("penguin", "polly")) == 1);

    const BackgroundTheory empty = parse_program("");
    CHECK(empty.clauses.empty());
    CHECK(empty.facts.empty());

    const BackgroundTheory naf = parse_program("fly(X) :- bird(X), not ab0(X).");
    REQUIRE(naf.clauses.size() == 1);
    REQUIRE(naf.clauses[0].body.size() == 2);
    CHECK_FALSE(naf.clauses[0].body[0].negated);
    CHECK(naf.clauses[0].body[1].negated);
    CHECK(naf.clauses[0].body[1].atom.predicate == "ab0");
}

TEST_CASE("parse_program reports syntax and arity errors with position") {
    try {
        parse_program("p(a) :- q(b)\nr(c).");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_program("p(a). p(a,b)."), ParseError);
    CHECK_THROWS_AS(parse_program("p(a) :- Q(b)."), ParseError);
}

TEST_CASE("parse_program accepts propositional atoms and true bodies") {
    const BackgroundTheory prop = parse_program("p :- not q.\nq :- not p.");
    REQUIRE(prop.clauses.size() == 2);
    CHECK(prop.clauses[0].head.arity() == 0);

    const BackgroundTheory truthy = parse_program("p(X) :- true.");
    REQUIRE(truthy.clauses.size() == 1);
    CHECK(truthy.clauses[0].body.empty());
}

TEST_CASE("render_asp emits the canonical program text") {
    Hypothesis hypothesis;
    hypothesis.defaults.push_back(Clause{
        Atom{"fly", {Term::var("X")}},
        {Literal{Atom{"bird", {Term::var("X")}}, false},
         Literal{Atom{"ab0", {Term::var("X")}}, true}}});
    hypothesis.abnormalities.push_back(Clause{
        Atom{"ab0", {Term::var("X")}}, {Literal{Atom{"penguin", {Term::var("X")}}, false}}});

    CHECK(render_asp(hypothesis) == "fly(X) :- bird(X), not ab0(X).\nab0(X) :- penguin(X).\n");
    CHECK(render_asp(Hypothesis{}).empty());
}

TEST_CASE("render/parse round-trip is the identity on hypotheses") {
    Rng rng(20240811);
    for (int iteration = 0; iteration < 50; ++iteration) {
        const BackgroundTheory program = oracles::random_stratified_program(rng);
        const std::string text = render_theory(program);
        const BackgroundTheory reparsed = parse_program(text);
        CHECK(reparsed.facts == program.facts);
        REQUIRE(reparsed.clauses.size() == program.clauses.size());
        for (std::size_t i = 0; i < program.clauses.size(); ++i)
            CHECK(reparsed.clauses[i] == program.clauses[i]);
    }

    // a learned hypothesis with defaults, abnormality clauses and ground
    // abnormality facts survives the trip
    Hypothesis hypothesis;
    hypothesis.defaults.push_back(parse_program("fly(X) :- bird(X), not ab0(X).").clauses[0]);
    hypothesis.defaults.push_back(Clause{Atom{"fly", {Term::constant("joe")}}, {}});
    hypothesis.abnormalities.push_back(parse_program("ab0(X) :- penguin(X).").clauses[0]);
    hypothesis.abnormalities.push_back(Clause{Atom{"ab0", {Term::constant("polly")}}, {}});

    const BackgroundTheory reparsed = parse_program(render_asp(hypothesis));
    CHECK(reparsed.clauses ==
          std::vector<Clause>{hypothesis.defaults[0], hypothesis.abnormalities[0]});
    CHECK(reparsed.facts == std::set<Atom>{hypothesis.defaults[1].head,
                                           hypothesis.abnormalities[1].head});
}

TEST_CASE("theta_subsumes: basic cases") {
    const Clause self = parse_program("p(X) :- q(X, Y), not r(Y).").clauses[0];
    CHECK(theta_subsumes(self, self).has_value());

    const Clause general = Clause{Atom{"fly", {Term::var("X")}}, {}};
    const Clause specific = parse_program("fly(X) :- bird(X).").clauses[0];
    CHECK(theta_subsumes(general, specific).has_value());
    CHECK_FALSE(theta_subsumes(specific, general).has_value());

    const Clause c = parse_program("p(X) :- q(X, Y).").clauses[0];
    const Clause d = parse_program("p(a) :- q(a, b), r(b).").clauses[0];
    const auto theta = theta_subsumes(c, d);
    REQUIRE(theta.has_value());
    CHECK(theta->at("X") == Term::constant("a"));
    CHECK(theta->at("Y") == Term::constant("b"));
}

TEST_CASE("theta_subsumption is reflexive and transitive on random clauses") {
    Rng rng(7);
    for (int iteration = 0; iteration < 40; ++iteration) {
        const BackgroundTheory program = oracles::random_stratified_program(rng);
        if (program.clauses.empty()) continue;
        std::vector<Clause> clauses = program.clauses;
        for (const Clause& c : clauses) CHECK(theta_subsumes(c, c).has_value());
        if (clauses.size() < 3) continue;
        const Clause &a = clauses[0], &b = clauses[1], &c = clauses[2];
        if (theta_subsumes(a, b) && theta_subsumes(b, c)) CHECK(theta_subsumes(a, c).has_value());
    }
}

TEST_CASE("subsumption implies coverage containment") {
    Rng rng(99);
    int exercised = 0;
    for (int iteration = 0; iteration < 200 && exercised < 40; ++iteration) {
        const BackgroundTheory theory = oracles::random_stratified_program(rng);
        if (theory.facts.empty()) continue;

        // Build a general clause and a specialization of it over the theory's
        // unary predicates.
        std::vector<PredicateSignature> unary;
        for (const PredicateSignature& sig : theory.language())
            if (sig.arity == 1) unary.push_back(sig);
        if (unary.size() < 2) continue;

        Clause general{Atom{"t", {Term::var("X")}},
                       {Literal{Atom{unary[0].name, {Term::var("X")}}, false}}};
        Clause specific = general;
        specific.body.push_back(Literal{Atom{unary[1].name, {Term::var("X")}}, false});
        REQUIRE(theta_subsumes(general, specific).has_value());

        std::set<Atom> examples;
        for (const std::string& constant : oracles::oracle_universe(theory, {}))
            examples.insert(ground1("t", constant));

        const std::set<Atom> covered_general = covers(general, examples, theory);
        const std::set<Atom> covered_specific = covers(specific, examples, theory);
        for (const Atom& example : covered_specific) CHECK(covered_general.count(example) == 1);

        // and both engines agree with the brute-force oracle
        CHECK(covered_general == oracles::naive_covers(general, examples, theory));
        CHECK(covered_specific == oracles::naive_covers(specific, examples, theory));
        ++exercised;
    }
    CHECK(exercised > 0);
}

TEST_CASE("check_stratified rejects recursion through negation") {
    const StratificationReport even = check_stratified(parse_program("p :- not q. q :- not p."));
    REQUIRE_FALSE(even.ok);
    CHECK(even.cycle.size() == 2);
    CHECK(even.message.find("NAF") != std::string::npos);

    const StratificationReport positive =
        check_stratified(parse_program("p(X) :- q(X). q(X) :- p(X). q(a)."));
    CHECK(positive.ok);

    const StratificationReport self_loop = check_stratified(parse_program("p :- not p."));
    REQUIRE_FALSE(self_loop.ok);
    CHECK(self_loop.cycle == std::vector<std::string>{"p"});
}

TEST_CASE("deduce computes the stratified model") {
    const BackgroundTheory fly = parse_program(kFlyBackground);
    const Model model = deduce(fly);
    CHECK(model.contains(ground1("bird", "polly")));
    CHECK(model.contains(ground1("bird", "tweety")));
    CHECK(model.contains(ground1("penguin", "polly")));
    CHECK_FALSE(model.contains(ground1("bird", "kitty")));

    CHECK(deduce(BackgroundTheory{}).size() == 0);

    const BackgroundTheory two_strata = parse_program("q(a). r(b). p(X) :- not q(X).");
    const Model second = deduce(two_strata);
    CHECK(second.contains(ground1("p", "b")));
    CHECK_FALSE(second.contains(ground1("p", "a")));

    CHECK_THROWS_AS(deduce(parse_program("p :- not p.")), ContractError);
}

TEST_CASE("deduce matches the naive oracle on random stratified programs") {
    Rng rng(4242);
    for (int iteration = 0; iteration < 60; ++iteration) {
        const BackgroundTheory theory = oracles::random_stratified_program(rng);
        REQUIRE(check_stratified(theory).ok);
        CHECK(deduce(theory).atoms() == oracles::naive_deduce(theory));
    }
}

TEST_CASE("deduce is a fixpoint and monotone within a stratum") {
    Rng rng(1312);
    for (int iteration = 0; iteration < 30; ++iteration) {
        const BackgroundTheory theory = oracles::random_stratified_program(rng);
        const Model model = deduce(theory);

        // Feeding the model back as facts adds nothing.
        BackgroundTheory saturated = theory;
        for (const Atom& atom : model.atoms()) saturated.facts.insert(atom);
        CHECK(deduce(saturated).atoms() == model.atoms());

        // Adding a fact never removes derived atoms at its stratum or below.
        const auto strata = compute_strata(theory);
        const std::set<Atom> before = model.atoms();
        BackgroundTheory extended = theory;
        const Atom extra = *theory.facts.begin();
        Atom tweaked = extra;  // re-add an existing fact under a different constant
        const std::string fresh_constant = "zz_added";
        if (!tweaked.args.empty()) tweaked.args[0] = Term::constant(fresh_constant);
        extended.facts.insert(tweaked);
        const std::set<Atom> after = deduce(extended).atoms();
        const int added_level = strata.count(tweaked.predicate) ? strata.at(tweaked.predicate) : 0;
        for (const Atom& atom : before) {
            const int level = strata.count(atom.predicate) ? strata.at(atom.predicate) : 0;
            if (level <= added_level) CHECK(after.count(atom) == 1);
        }
    }
}

TEST_CASE("covers: walkthrough cases") {
    const BackgroundTheory theory = parse_program(kFlyBackground);
    const std::set<Atom> negatives{ground1("fly", "polly"), ground1("fly", "kitty")};
    const std::set<Atom> positives{ground1("fly", "tweety"), ground1("fly", "et")};

    const Clause bird_clause = parse_program("fly(X) :- bird(X).").clauses[0];
    CHECK(covers(bird_clause, negatives, theory) == std::set<Atom>{ground1("fly", "polly")});

    const Clause most_general = Clause{Atom{"fly", {Term::var("X")}}, {}};
    CHECK(covers(most_general, negatives, theory) == negatives);

    const Clause penguin_clause = parse_program("fly(X) :- penguin(X).").clauses[0];
    CHECK(covers(penguin_clause, positives, theory).empty());

    const Clause mismatched = parse_program("swim(X) :- bird(X).").clauses[0];
    CHECK_THROWS_AS(covers(mismatched, positives, theory), ContractError);
}

TEST_CASE("refine_candidates enumerates linked one-literal extensions") {
    const Clause start = Clause{Atom{"fly", {Term::var("X")}}, {}};
    const std::vector<PredicateSignature> language{{"bird", 1}, {"cat", 1}, {"penguin", 1}};

    const auto positive_only = refine_candidates(start, language, RefinementMode::PositiveOnly);
    REQUIRE(positive_only.size() == 3);
    CHECK(positive_only[0].body[0].atom.predicate == "bird");
    CHECK(positive_only[1].body[0].atom.predicate == "cat");
    CHECK(positive_only[2].body[0].atom.predicate == "penguin");

    const auto with_negation = refine_candidates(start, language, RefinementMode::WithNegation);
    REQUIRE(with_negation.size() == 6);
    // NAF block first, then the positive block.
    for (int i = 0; i < 3; ++i) CHECK(with_negation[i].body[0].negated);
    for (int i = 3; i < 6; ++i) CHECK_FALSE(with_negation[i].body[0].negated);

    const Clause with_q = parse_program("p(X) :- q(X).").clauses[0];
    const auto binary = refine_candidates(with_q, {{"r", 2}}, RefinementMode::PositiveOnly);
    const Clause want_xy = parse_program("p(X) :- q(X), r(X, Y).").clauses[0];
    const Clause want_yx = parse_program("p(X) :- q(X), r(Y, X).").clauses[0];
    CHECK(std::find(binary.begin(), binary.end(), want_xy) != binary.end());
    CHECK(std::find(binary.begin(), binary.end(), want_yx) != binary.end());
}

TEST_CASE("refine_candidates outputs are strictly subsumed by the input") {
    Rng rng(555);
    for (int iteration = 0; iteration < 25; ++iteration) {
        const BackgroundTheory theory = oracles::random_stratified_program(rng);
        const Clause start = Clause{Atom{"t", {Term::var("X")}}, {}};
        for (const Clause& candidate :
             refine_candidates(start, theory.language(), RefinementMode::WithNegation)) {
            CHECK(theta_subsumes(start, candidate).has_value());
            CHECK_FALSE(theta_subsumes(candidate, start).has_value());
        }
    }
}

TEST_CASE("refine_candidates drops vacuous extensions") {
    const Clause start = parse_program("p(X) :- q(X).").clauses[0];
    for (const Clause& candidate :
         refine_candidates(start, {{"q", 1}}, RefinementMode::PositiveOnly)) {
        // adding q(X) again (or a q over a fresh variable alone) must not appear
        CHECK_FALSE(theta_subsumes(candidate, start).has_value());
    }
}
