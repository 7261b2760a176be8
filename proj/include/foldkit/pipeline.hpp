#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "foldkit/classifier.hpp"
#include "foldkit/dataset.hpp"
#include "foldkit/eval.hpp"
#include "foldkit/explain.hpp"
#include "foldkit/foil.hpp"
#include "foldkit/fold.hpp"
#include "foldkit/limefold.hpp"
#include "foldkit/rng.hpp"

namespace foldkit {

enum class Algorithm { Foil, Fold, LimeFold };

inline Algorithm algorithm_from_name(const std::string& name) {
    if (name == "foil") return Algorithm::Foil;
    if (name == "fold") return Algorithm::Fold;
    if (name == "lime-fold" || name == "limefold") return Algorithm::LimeFold;
    throw ContractError("unknown algorithm '" + name + "' (expected foil, fold or lime-fold)");
}

struct PipelineConfig {
    std::string target;  // empty: derived from the label column name
    std::size_t bins = 4;
    bool supervised_bins = false;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    FoilConfig foil;
    FoldConfig fold;
    ClassifierConfig classifier;
    PerturbationConfig perturbation;
};

// A tabular learning problem lifted into the logic setting: discretized
// schema, propositionalized view, ground facts and label-derived examples.
struct TabularProblem {
    std::string target;
    FeatureSchema schema;       // original columns with bin edges assigned
    FeatureSchema transformed;  // propositionalized view
    std::vector<Sample> samples;
    BackgroundTheory facts;
    std::set<Atom> positives;
    std::set<Atom> negatives;
};

// Assigns bin edges (computed on `samples`), propositionalizes and emits
// ground predicates plus E+/E-.
inline TabularProblem prepare_tabular(const FeatureSchema& schema,
                                      const std::vector<Sample>& samples,
                                      const PipelineConfig& config) {
    TabularProblem problem;
    problem.schema = schema;
    problem.samples = samples;
    for (Column& column : problem.schema.columns) {
        if (column.kind != ColumnKind::Numeric || !column.bins.empty()) continue;
        bool any_value = false;
        for (const Sample& sample : samples)
            if (sample.has(column.name)) any_value = true;
        if (!any_value) continue;
        column.bins = config.supervised_bins
                          ? discretize_supervised(samples, problem.schema, column.name, config.bins)
                          : discretize(samples, problem.schema, column.name, config.bins);
    }
    problem.transformed = propositionalize(problem.schema);
    problem.facts = make_predicates(problem.schema, samples);
    problem.target =
        config.target.empty() ? sanitize_predicate(schema.label_column) : config.target;
    std::tie(problem.positives, problem.negatives) = label_examples(problem.target, samples);
    return problem;
}

// Ground facts for extra (held-out) samples under the problem's schema.
inline BackgroundTheory facts_for(const TabularProblem& problem,
                                  const std::vector<Sample>& samples) {
    return make_predicates(problem.schema, samples);
}

struct TabularLearnResult {
    Hypothesis hypothesis;
    LearnDiagnostics diagnostics;
    RelevantFeatureMap relevant;  // filled for LIME-FOLD
    std::shared_ptr<BaggedTreeClassifier> classifier;
};

// End-to-end learner over a prepared problem. For LIME-FOLD: train the
// built-in classifier, explain every training sample, then learn over the
// restricted candidate space; a pre-computed relevance map can be supplied
// to skip the explanation stage.
inline TabularLearnResult learn_tabular(Algorithm algorithm, const TabularProblem& problem,
                                        const PipelineConfig& config,
                                        const RelevantFeatureMap* relevant = nullptr) {
    TabularLearnResult result;
    switch (algorithm) {
        case Algorithm::Foil:
            result.hypothesis = foil_learn(problem.target, problem.facts, problem.positives,
                                           problem.negatives, config.foil, &result.diagnostics);
            break;
        case Algorithm::Fold:
            result.hypothesis = fold_learn(problem.target, problem.facts, problem.positives,
                                           problem.negatives, config.fold, &result.diagnostics);
            break;
        case Algorithm::LimeFold: {
            if (relevant != nullptr) {
                result.relevant = *relevant;
            } else {
                ClassifierConfig classifier_config = config.classifier;
                classifier_config.seed = Rng(config.seed).split(1).next_u64();
                result.classifier = train_builtin_classifier(problem.samples, problem.schema,
                                                             classifier_config,
                                                             &result.diagnostics.warnings);
                PerturbationConfig perturbation = config.perturbation;
                perturbation.seed = Rng(config.seed).split(2).next_u64();
                perturbation.threads = config.threads;
                result.relevant =
                    transform_dataset(*result.classifier, problem.samples, problem.schema,
                                      problem.transformed, perturbation);
            }
            result.hypothesis =
                lime_fold_learn(problem.target, problem.facts, problem.positives,
                                problem.negatives, result.relevant, config.fold,
                                &result.diagnostics);
            break;
        }
    }
    return result;
}

struct CrossValidationResult {
    std::vector<Metrics> folds;
    MetricsAggregate aggregate;
};

// Seeded stratified k-fold: shuffle each class separately, deal round-robin.
inline std::vector<std::size_t> stratified_fold_assignment(const std::vector<Sample>& samples,
                                                           std::size_t folds, Rng& rng) {
    std::vector<std::size_t> assignment(samples.size(), 0);
    std::vector<std::size_t> pos_index, neg_index;
    for (std::size_t i = 0; i < samples.size(); ++i)
        (samples[i].positive ? pos_index : neg_index).push_back(i);
    rng.shuffle(pos_index);
    rng.shuffle(neg_index);
    std::size_t next = 0;
    for (std::size_t i : pos_index) assignment[i] = next++ % folds;
    for (std::size_t i : neg_index) assignment[i] = next++ % folds;
    return assignment;
}

// Per-fold learn + evaluate. Bin edges and (for LIME-FOLD) the classifier are
// derived from the training folds only. A training fold missing one of the
// classes retries the split with a reshuffled seed, then errors out.
inline CrossValidationResult cross_validate(Algorithm algorithm, const FeatureSchema& schema,
                                            const std::vector<Sample>& samples, std::size_t folds,
                                            const PipelineConfig& config) {
    if (folds < 2) throw ContractError("cross_validate: need at least 2 folds");
    if (folds > samples.size())
        throw ContractError("cross_validate: more folds than samples");

    Rng rng(config.seed);
    std::vector<std::size_t> assignment;
    for (int attempt = 0;; ++attempt) {
        assignment = stratified_fold_assignment(samples, folds, rng);
        bool valid = true;
        for (std::size_t fold = 0; fold < folds && valid; ++fold) {
            bool has_pos = false, has_neg = false;
            for (std::size_t i = 0; i < samples.size(); ++i) {
                if (assignment[i] == fold) continue;  // training part
                (samples[i].positive ? has_pos : has_neg) = true;
            }
            if (!has_pos || !has_neg) valid = false;
        }
        if (valid) break;
        if (attempt >= 2)
            throw ContractError(
                "cross_validate: could not build folds with both classes in every training set");
    }

    CrossValidationResult result;
    for (std::size_t fold = 0; fold < folds; ++fold) {
        std::vector<Sample> train, test;
        for (std::size_t i = 0; i < samples.size(); ++i)
            (assignment[i] == fold ? test : train).push_back(samples[i]);

        const TabularProblem problem = prepare_tabular(schema, train, config);
        const TabularLearnResult learned = learn_tabular(algorithm, problem, config);

        BackgroundTheory test_theory = problem.facts;
        for (const Atom& fact : facts_for(problem, test).facts) test_theory.facts.insert(fact);
        const auto [test_pos, test_neg] = label_examples(problem.target, test);
        result.folds.push_back(
            evaluate_hypothesis(learned.hypothesis, test_theory, test_pos, test_neg));
    }
    result.aggregate = aggregate_metrics(result.folds);
    return result;
}

}  // namespace foldkit
