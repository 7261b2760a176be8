#include <catch2/catch_amalgamated.hpp>

#include "foldkit/limefold.hpp"
#include "foldkit/parser.hpp"
#include "foldkit/pipeline.hpp"
#include "foldkit/render.hpp"

#include "support/planted.hpp"

using namespace foldkit;

namespace {

Atom ground1(const std::string& pred, const std::string& arg) {
    return Atom{pred, {Term::constant(arg)}};
}

// Linear-ish stub classifier over two binary original features a and b:
// p = 0.5 + 0.4*[a=1] - 0.3*[b=1], clamped to [0,1].
class TwoFeatureModel final : public ClassifierHandle {
public:
    double predict(const Sample& sample) const override {
        double p = 0.5;
        if (sample.has("a") && sample.get("a") == "1") p += 0.4;
        if (sample.has("b") && sample.get("b") == "1") p -= 0.3;
        return std::min(1.0, std::max(0.0, p));
    }
    std::string provenance() const override { return "builtin"; }
};

FeatureSchema two_feature_schema() {
    FeatureSchema schema;
    Column a;
    a.name = "a";
    a.kind = ColumnKind::Categorical;
    a.domain = {"0", "1"};
    Column b = a;
    b.name = "b";
    schema.columns = {a, b};
    schema.label_column = "label";
    return schema;
}

}  // namespace

TEST_CASE("transform_dataset keeps satisfied constraints split by sign") {
    const FeatureSchema schema = two_feature_schema();
    const FeatureSchema transformed = propositionalize(schema);

    Sample x;
    x.id = "s0";
    x.values["a"] = "1";
    x.values["b"] = "1";
    x.positive = true;

    PerturbationConfig config;
    config.n_samples = 800;
    config.k = 5;  // room for both features' indicator columns
    config.seed = 42;

    const TwoFeatureModel model;
    const RelevantFeatureMap map =
        transform_dataset(model, {x}, schema, transformed, config);
    const RelevantFeatures* features = map.find("s0");
    REQUIRE(features != nullptr);

    // prediction is positive (0.6): a=1 supports it, b=1 opposes it
    CHECK(features->supporting.count("a_1") == 1);
    CHECK(features->opposing.count("b_1") == 1);
    // unsatisfied twins (a_0=false, b_0=false) never enter the map
    CHECK(features->supporting.count("a_0") == 0);
    CHECK(features->opposing.count("b_0") == 0);
}

TEST_CASE("transform_dataset is deterministic for identical samples") {
    const FeatureSchema schema = two_feature_schema();
    const FeatureSchema transformed = propositionalize(schema);

    Sample x;
    x.id = "s0";
    x.values["a"] = "1";
    x.values["b"] = "0";
    Sample y = x;
    y.id = "s1";

    PerturbationConfig config;
    config.n_samples = 500;
    config.k = 4;
    config.seed = 7;
    const TwoFeatureModel model;
    const RelevantFeatureMap once = transform_dataset(model, {x, y}, schema, transformed, config);
    const RelevantFeatureMap twice = transform_dataset(model, {x, y}, schema, transformed, config);
    CHECK(once.serialize() == twice.serialize());

    // identical feature values get identical relevant sets under one seed
    CHECK(once.by_id.at("s0").supporting == once.by_id.at("s1").supporting);
    CHECK(once.by_id.at("s0").opposing == once.by_id.at("s1").opposing);
}

TEST_CASE("relevant feature map serialization round-trips") {
    RelevantFeatureMap map;
    map.by_id["r0"].supporting = {"chest_pain_4", "chol_bin2"};
    map.by_id["r0"].opposing = {"thal_7"};
    map.by_id["r1"];  // empty set stays empty

    const RelevantFeatureMap reloaded = RelevantFeatureMap::parse(map.serialize());
    CHECK(reloaded.by_id.at("r0").supporting == map.by_id.at("r0").supporting);
    CHECK(reloaded.by_id.at("r0").opposing == map.by_id.at("r0").opposing);
    CHECK(reloaded.by_id.at("r1").supporting.empty());
    CHECK(reloaded.by_id.size() == 2);
}

TEST_CASE("lime_fold_learn covers planted clusters with one clause each") {
    // Two positive clusters with distinct defining features, shared noise
    // feature q everywhere.
    const BackgroundTheory theory = parse_program(
        "pa(a1). pa(a2). pa(a3).\n"
        "pb(b1). pb(b2). pb(b3).\n"
        "q(a1). q(a2). q(a3). q(b1). q(b2). q(b3). q(n1). q(n2).\n");
    std::set<Atom> positives, negatives;
    for (const char* name : {"a1", "a2", "a3", "b1", "b2", "b3"})
        positives.insert(ground1("t", name));
    for (const char* name : {"n1", "n2"}) negatives.insert(ground1("t", name));

    RelevantFeatureMap map;
    for (const char* name : {"a1", "a2", "a3"}) map.by_id[name].supporting = {"pa"};
    for (const char* name : {"b1", "b2", "b3"}) map.by_id[name].supporting = {"pb"};

    LearnDiagnostics diag;
    const Hypothesis hypothesis =
        lime_fold_learn("t", theory, positives, negatives, map, {}, &diag);
    REQUIRE(hypothesis.defaults.size() == 2);
    std::set<std::string> used;
    for (const Clause& clause : hypothesis.defaults)
        for (const Literal& lit : clause.body) used.insert(lit.atom.predicate);
    CHECK(used == std::set<std::string>{"pa", "pb"});

    // every default literal appears in the relevant set of a covered positive
    CoverageContext ctx(theory, positives, negatives);
    for (const Clause& clause : hypothesis.defaults) {
        const std::set<Atom> covered = ctx.covered(clause, positives);
        for (const Literal& lit : clause.body) {
            if (lit.negated) continue;
            bool in_some_relevant_set = false;
            for (const Atom& example : covered)
                if (map.by_id.count(example.args[0].name) &&
                    map.by_id.at(example.args[0].name).supporting.count(lit.atom.predicate))
                    in_some_relevant_set = true;
            CHECK(in_some_relevant_set);
        }
    }
}

TEST_CASE("lime_fold_learn sticks to the truly relevant feature among redundant ones") {
    // pa defines the concept; pa_r1..pa_r5 are correlated copies that also
    // cover one negative each, so they are strictly worse but tempting.
    std::string program;
    for (int i = 1; i <= 6; ++i) {
        const std::string id = "a" + std::to_string(i);
        program += "pa(" + id + ").\n";
        for (int r = 1; r <= 5; ++r) program += "pa_r" + std::to_string(r) + "(" + id + ").\n";
    }
    for (int r = 1; r <= 5; ++r)
        program += "pa_r" + std::to_string(r) + "(n" + std::to_string(r) + ").\n";
    const BackgroundTheory theory = parse_program(program);

    std::set<Atom> positives, negatives;
    for (int i = 1; i <= 6; ++i) positives.insert(ground1("t", "a" + std::to_string(i)));
    for (int r = 1; r <= 5; ++r) negatives.insert(ground1("t", "n" + std::to_string(r)));

    RelevantFeatureMap map;
    for (int i = 1; i <= 6; ++i) map.by_id["a" + std::to_string(i)].supporting = {"pa"};

    const Hypothesis hypothesis = lime_fold_learn("t", theory, positives, negatives, map);
    REQUIRE(hypothesis.defaults.size() == 1);
    REQUIRE(hypothesis.defaults[0].body.size() == 1);
    CHECK(hypothesis.defaults[0].body[0].atom.predicate == "pa");
}

TEST_CASE("ground-truth maps recover one default clause per planted sub-concept") {
    Rng rng(12);
    for (int round = 0; round < 8; ++round) {
        Rng instance_rng = rng.split(round);
        planted::PlantOptions options;
        options.min_samples = 120;
        options.max_samples = 240;
        const planted::PlantedInstance instance =
            planted::plant_default_theory(instance_rng, options);
        if (instance.positives.empty() || instance.negatives.empty()) continue;

        const BackgroundTheory theory = instance.facts();
        LearnDiagnostics diag;
        const Hypothesis hypothesis = lime_fold_learn("label", theory, instance.positives,
                                                      instance.negatives, instance.truth, {},
                                                      &diag);
        REQUIRE(diag.converged);

        // concepts with at least one labeled member get exactly one clause
        std::set<std::string> populated;
        for (const auto& [id, features] : instance.truth.by_id)
            if (instance.positives.count(Atom{"label", {Term::constant(id)}}))
                for (const std::string& feature : features.supporting) populated.insert(feature);
        std::size_t rule_clauses = 0;
        for (const Clause& clause : hypothesis.defaults)
            if (!clause.is_fact()) ++rule_clauses;
        CHECK(rule_clauses == populated.size());
    }
}

TEST_CASE("an all-constraints map reduces to plain FOLD") {
    const BackgroundTheory theory = parse_program(
        "bird(tweety). bird(et). bird(polly).\n"
        "penguin(polly). cat(kitty).\n"
        "bird(X) :- penguin(X).\n");
    const std::set<Atom> positives{ground1("fly", "tweety"), ground1("fly", "et")};
    const std::set<Atom> negatives{ground1("fly", "polly"), ground1("fly", "kitty")};

    RelevantFeatureMap everything;
    for (const char* id : {"tweety", "et", "polly", "kitty"}) {
        everything.by_id[id].supporting = {"bird", "penguin", "cat"};
        everything.by_id[id].opposing = {"bird", "penguin", "cat"};
    }

    const Hypothesis restricted = lime_fold_learn("fly", theory, positives, negatives, everything);
    const Hypothesis plain = fold_learn("fly", theory, positives, negatives);
    CHECK(render_asp(restricted) == render_asp(plain));
}

TEST_CASE("an empty map falls back to plain FOLD with a warning") {
    const BackgroundTheory theory = parse_program("p(a). p(b).");
    const std::set<Atom> positives{ground1("t", "a"), ground1("t", "b")};

    RelevantFeatureMap empty;
    empty.by_id["a"];
    empty.by_id["b"];

    LearnDiagnostics diag;
    const Hypothesis hypothesis = lime_fold_learn("t", theory, positives, {}, empty, {}, &diag);
    CHECK_FALSE(hypothesis.defaults.empty());
    REQUIRE_FALSE(diag.warnings.empty());
    CHECK(diag.warnings[0].find("falling back") != std::string::npos);
}
