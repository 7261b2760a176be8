#pragma once

// Planted default-theory datasets: samples labeled by a known rule set
// (2-4 sub-concepts, optional one-level exceptions), rendered both as ground
// facts for the logic learners and as tabular samples for the classifier
// pipeline. Labels are computed from the planted rule, so instances are
// noise-free and separable by construction.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "foldkit/dataset.hpp"
#include "foldkit/limefold.hpp"
#include "foldkit/logic.hpp"
#include "foldkit/rng.hpp"

namespace planted {

using foldkit::Atom;
using foldkit::BackgroundTheory;
using foldkit::Rng;
using foldkit::Term;

struct PlantOptions {
    std::size_t min_samples = 100;
    std::size_t max_samples = 500;
    std::size_t min_concepts = 2;
    std::size_t max_concepts = 4;
    bool exceptions = true;            // one-level exceptions on some concepts
    std::size_t redundant_copies = 0;  // correlated noisy copies per concept feature
    double copy_agreement = 0.88;      // probability a copy agrees with its source
    bool global_distractor = false;    // feature correlated with the label across concepts
};

struct PlantedInstance {
    std::size_t concept_count = 0;
    std::vector<std::string> concept_features;     // defining predicate per concept
    std::vector<std::string> exception_features;   // empty string: no exception for concept
    std::vector<std::string> all_features;         // column order
    std::vector<std::string> ids;
    std::map<std::string, std::set<std::string>> on_features;  // id -> features that hold
    std::set<Atom> positives, negatives;
    foldkit::RelevantFeatureMap truth;  // ground-truth per-sample relevance

    BackgroundTheory facts() const {
        BackgroundTheory theory;
        for (const std::string& id : ids)
            for (const std::string& feature : on_features.at(id))
                theory.facts.insert(Atom{feature, {Term::constant(id)}});
        return theory;
    }

    // Tabular view: every feature becomes a binary categorical column.
    std::pair<foldkit::FeatureSchema, std::vector<foldkit::Sample>> tabular() const {
        foldkit::FeatureSchema schema;
        for (const std::string& feature : all_features) {
            foldkit::Column column;
            column.name = feature;
            column.kind = foldkit::ColumnKind::Categorical;
            column.domain = {"0", "1"};
            schema.columns.push_back(std::move(column));
        }
        schema.label_column = "label";

        std::vector<foldkit::Sample> samples;
        for (const std::string& id : ids) {
            foldkit::Sample sample;
            sample.id = id;
            const std::set<std::string>& on = on_features.at(id);
            for (const std::string& feature : all_features)
                sample.values[feature] = on.count(feature) ? "1" : "0";
            sample.positive = positives.count(Atom{"label", {Term::constant(id)}}) > 0;
            samples.push_back(std::move(sample));
        }
        return {schema, samples};
    }
};

inline PlantedInstance plant_default_theory(Rng& rng, const PlantOptions& options,
                                            const std::string& target = "label") {
    PlantedInstance instance;
    instance.concept_count =
        options.min_concepts + rng.next_index(options.max_concepts - options.min_concepts + 1);
    const std::size_t n_samples =
        options.min_samples + rng.next_index(options.max_samples - options.min_samples + 1);

    // feature inventory
    for (std::size_t k = 0; k < instance.concept_count; ++k) {
        instance.concept_features.push_back("c" + std::to_string(k));
        const bool with_exception = options.exceptions && rng.next_bool();
        instance.exception_features.push_back(with_exception ? "e" + std::to_string(k) : "");
    }
    instance.all_features = instance.concept_features;
    for (const std::string& feature : instance.exception_features)
        if (!feature.empty()) instance.all_features.push_back(feature);
    std::vector<std::vector<std::string>> copies(instance.concept_count);
    for (std::size_t k = 0; k < instance.concept_count; ++k)
        for (std::size_t r = 0; r < options.redundant_copies; ++r) {
            copies[k].push_back("c" + std::to_string(k) + "_r" + std::to_string(r));
            instance.all_features.push_back(copies[k].back());
        }
    if (options.global_distractor) instance.all_features.push_back("g");
    const std::size_t n_noise = 2 + rng.next_index(3);
    for (std::size_t j = 0; j < n_noise; ++j)
        instance.all_features.push_back("q" + std::to_string(j));

    for (std::size_t i = 0; i < n_samples; ++i) instance.ids.push_back("s" + std::to_string(i));

    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::string& id = instance.ids[i];
        std::set<std::string>& on = instance.on_features[id];

        // membership: roughly half the samples join one concept; everyone
        // else may still carry a concept feature by chance (and is then a
        // member by the rule, keeping labels consistent with the features)
        const bool member = rng.next_unit() < 0.55;
        const std::size_t home = rng.next_index(instance.concept_count);
        for (std::size_t k = 0; k < instance.concept_count; ++k) {
            const bool holds = (member && k == home) || rng.next_unit() < 0.06;
            if (holds) on.insert(instance.concept_features[k]);
        }

        // exception flags: a third of the home concept's members are
        // exceptional; non-members carry the flag rarely (irrelevant there)
        for (std::size_t k = 0; k < instance.concept_count; ++k) {
            if (instance.exception_features[k].empty()) continue;
            const double p = (member && k == home) ? 0.33 : 0.08;
            if (rng.next_unit() < p) on.insert(instance.exception_features[k]);
        }

        // redundant copies agree with their source feature most of the time
        for (std::size_t k = 0; k < instance.concept_count; ++k) {
            const bool source = on.count(instance.concept_features[k]) > 0;
            for (const std::string& copy : copies[k]) {
                const bool agree = rng.next_unit() < options.copy_agreement;
                if (agree == source) on.insert(copy);
            }
        }

        for (std::size_t j = 0; j < n_noise; ++j)
            if (rng.next_unit() < 0.25) on.insert("q" + std::to_string(j));

        // label per the planted rule: some concept holds and its exception does not
        bool label = false;
        std::size_t labeling_concept = 0;
        for (std::size_t k = 0; k < instance.concept_count; ++k) {
            if (!on.count(instance.concept_features[k])) continue;
            if (!instance.exception_features[k].empty() &&
                on.count(instance.exception_features[k]))
                continue;
            label = true;
            labeling_concept = k;
            break;
        }

        // distractor: correlated with the final label, not with any concept
        if (options.global_distractor) {
            const double p = label ? 0.7 : 0.2;
            if (rng.next_unit() < p) on.insert("g");
        }

        const Atom example{target, {Term::constant(id)}};
        foldkit::RelevantFeatures relevance;
        if (label) {
            instance.positives.insert(example);
            relevance.supporting.insert(instance.concept_features[labeling_concept]);
        } else {
            instance.negatives.insert(example);
            // a suppressed member's own explanation is its exception flag
            for (std::size_t k = 0; k < instance.concept_count; ++k)
                if (on.count(instance.concept_features[k]) &&
                    !instance.exception_features[k].empty() &&
                    on.count(instance.exception_features[k]))
                    relevance.supporting.insert(instance.exception_features[k]);
        }
        instance.truth.by_id[id] = std::move(relevance);
    }
    return instance;
}

}  // namespace planted
