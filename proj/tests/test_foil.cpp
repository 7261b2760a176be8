#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "foldkit/foil.hpp"
#include "foldkit/model.hpp"
#include "foldkit/parser.hpp"
#include "foldkit/render.hpp"

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

// Brute-force argmax of the gain formula over all refinement candidates,
// counting coverage with the naive oracle. First maximum wins, mirroring the
// documented tie-break.
Clause oracle_best_literal(const Clause& clause, const std::set<Atom>& positives,
                           const std::set<Atom>& negatives, const BackgroundTheory& theory,
                           const std::vector<PredicateSignature>& language, RefinementMode mode) {
    const double p0 = static_cast<double>(oracles::naive_covers(clause, positives, theory).size());
    const double n0 = static_cast<double>(oracles::naive_covers(clause, negatives, theory).size());
    Clause best = clause;
    double best_gain = 0.0;
    bool found = false;
    for (const Clause& candidate : refine_candidates(clause, language, mode)) {
        const std::set<Atom> cand_pos = oracles::naive_covers(candidate, positives, theory);
        const double p1 = static_cast<double>(cand_pos.size());
        const double n1 =
            static_cast<double>(oracles::naive_covers(candidate, negatives, theory).size());
        double gain = 0.0;
        if (p1 > 0 && p0 > 0)
            gain = p1 * (std::log2(p1 / (p1 + n1)) - std::log2(p0 / (p0 + n0)));
        if (!found || gain > best_gain) {
            best = candidate;
            best_gain = gain;
            found = true;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("information_gain: frozen values and conventions") {
    // bird(X) in the fly example: t=2, p0=2, n0=2, p1=2, n1=1.
    const double gain = information_gain({2, 2, 2, 1, 2});
    CHECK(gain == Catch::Approx(2.0 * (std::log2(2.0 / 3.0) - std::log2(0.5))).epsilon(1e-12));
    CHECK(gain == Catch::Approx(0.8301).margin(5e-5));

    // Equal purity cancels the logs.
    CHECK(information_gain({4, 2, 2, 1, 2}) == Catch::Approx(0.0).margin(1e-12));

    // Zero-coverage convention: candidate kills all positives.
    CHECK(information_gain({2, 2, 0, 3, 0}) == 0.0);
    CHECK(information_gain({2, 2, 2, 1, 0}) == 0.0);

    // Current rule covering no positive is a contract violation.
    CHECK_THROWS_AS(information_gain({0, 2, 1, 0, 1}), ContractError);
}

TEST_CASE("best_literal picks bird(X) on the fly example") {
    const BackgroundTheory theory = parse_program(kFlyBackground);
    const std::set<Atom> positives{ground1("fly", "tweety"), ground1("fly", "et")};
    const std::set<Atom> negatives{ground1("fly", "polly"), ground1("fly", "kitty")};

    const Clause start = most_general_clause("fly", 1);
    const ScoredClause best =
        best_literal(start, positives, negatives, theory, background_language(theory, "fly"),
                     RefinementMode::PositiveOnly);
    REQUIRE(best.clause.body.size() == 1);
    CHECK(best.clause.body[0].atom.predicate == "bird");
    CHECK(best.gain == Catch::Approx(0.8301).margin(5e-5));
}

TEST_CASE("best_literal returns the lone candidate regardless of gain sign") {
    const BackgroundTheory theory = parse_program("q(a). q(b). r(b).");
    const std::set<Atom> positives{ground1("t", "a")};
    const std::set<Atom> negatives{ground1("t", "b")};
    const Clause start = most_general_clause("t", 1);

    const ScoredClause best = best_literal(start, positives, negatives, theory, {{"q", 1}},
                                           RefinementMode::PositiveOnly);
    REQUIRE(best.clause.body.size() == 1);
    CHECK(best.clause.body[0].atom.predicate == "q");
    CHECK(best.gain == 0.0);  // q covers both sides, no purity change

    const ScoredClause none =
        best_literal(start, positives, negatives, theory, {}, RefinementMode::PositiveOnly);
    CHECK(none.clause == start);
    CHECK(none.gain == 0.0);
}

TEST_CASE("best_literal agrees with the brute-force argmax on random instances") {
    Rng rng(90210);
    int exercised = 0;
    for (int iteration = 0; iteration < 400 && exercised < 60; ++iteration) {
        const BackgroundTheory theory = oracles::random_stratified_program(rng, 6, 8);
        const std::vector<std::string> universe = oracles::oracle_universe(theory, {});
        if (universe.size() < 3) continue;

        std::set<Atom> positives, negatives;
        for (const std::string& constant : universe)
            (rng.next_bool() ? positives : negatives).insert(ground1("t", constant));
        if (positives.empty() || negatives.empty()) continue;

        const Clause start = most_general_clause("t", 1);
        const auto language = background_language(theory, "t");
        const RefinementMode mode =
            rng.next_bool() ? RefinementMode::WithNegation : RefinementMode::PositiveOnly;

        const ScoredClause fast = best_literal(start, positives, negatives, theory, language, mode);
        const Clause slow = oracle_best_literal(start, positives, negatives, theory, language, mode);
        CHECK(fast.clause == slow);
        ++exercised;
    }
    CHECK(exercised >= 60);
}

TEST_CASE("foil_learn reproduces the naive negative-literal rule") {
    const BackgroundTheory theory = parse_program(kFlyBackground);
    const std::set<Atom> positives{ground1("fly", "tweety"), ground1("fly", "et")};
    const std::set<Atom> negatives{ground1("fly", "polly"), ground1("fly", "kitty")};

    LearnDiagnostics diag;
    const Hypothesis hypothesis = foil_learn("fly", theory, positives, negatives, {}, &diag);
    REQUIRE(hypothesis.defaults.size() == 1);
    CHECK(render_clause(hypothesis.defaults[0]) == "fly(X) :- not cat(X), not penguin(X).");
    CHECK(hypothesis.abnormalities.empty());
    CHECK(diag.converged);

    // covers all positives, no negatives
    CHECK(covers(hypothesis.defaults[0], positives, theory) == positives);
    CHECK(covers(hypothesis.defaults[0], negatives, theory).empty());
}

TEST_CASE("foil_learn with no negatives emits a single clause") {
    const BackgroundTheory theory = parse_program("p(a). p(b). p(c).");
    const std::set<Atom> positives{ground1("t", "a"), ground1("t", "b"), ground1("t", "c")};
    const Hypothesis hypothesis = foil_learn("t", theory, positives, {});
    REQUIRE(hypothesis.defaults.size() == 1);
}

TEST_CASE("foil_learn separates two disjoint clusters with two clauses") {
    const BackgroundTheory theory =
        parse_program("p(a1). p(a2). p(a3). q(b1). q(b2). q(b3). r(c1). r(c2).");
    std::set<Atom> positives, negatives;
    for (const char* name : {"a1", "a2", "a3", "b1", "b2", "b3"})
        positives.insert(ground1("t", name));
    for (const char* name : {"c1", "c2"}) negatives.insert(ground1("t", name));

    FoilConfig config;
    config.mode = RefinementMode::PositiveOnly;
    LearnDiagnostics diag;
    const Hypothesis hypothesis = foil_learn("t", theory, positives, negatives, config, &diag);
    REQUIRE(hypothesis.defaults.size() == 2);
    CHECK(diag.converged);

    // sequential covering: per-clause coverage partitions E+
    std::set<Atom> covered;
    for (const Clause& clause : hypothesis.defaults)
        for (const Atom& example : covers(clause, positives, theory)) covered.insert(example);
    CHECK(covered == positives);
    for (const Clause& clause : hypothesis.defaults)
        CHECK(covers(clause, negatives, theory).empty());
}

TEST_CASE("foil_learn validates its inputs") {
    const BackgroundTheory theory = parse_program("p(a).");
    CHECK_THROWS_AS(
        foil_learn("t", theory, {ground1("t", "a")}, {ground1("t", "a")}),
        ContractError);
    CHECK_THROWS_AS(
        foil_learn("t", theory, {ground1("wrong", "a")}, {}),
        ContractError);
}
