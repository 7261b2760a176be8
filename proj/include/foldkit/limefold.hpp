#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "foldkit/explain.hpp"
#include "foldkit/fold.hpp"
#include "foldkit/learning.hpp"
#include "foldkit/parallel.hpp"

namespace foldkit {

// Per-sample feature constraints retained from the local explanations.
// `supporting` constraints back the model's predicted class for the sample,
// `opposing` ones pull the other way; both name predicates emitted by
// make_predicates and satisfied by the sample.
struct RelevantFeatures {
    std::set<std::string> supporting;
    std::set<std::string> opposing;
};

struct RelevantFeatureMap {
    std::map<std::string, RelevantFeatures> by_id;

    bool all_supporting_empty() const {
        for (const auto& [id, features] : by_id)
            if (!features.supporting.empty()) return false;
        return true;
    }

    const RelevantFeatures* find(const std::string& id) const {
        auto it = by_id.find(id);
        return it == by_id.end() ? nullptr : &it->second;
    }

    // One line per sample: id<TAB>constraint[:sign],...  ('+' supporting,
    // '-' opposing). Re-loadable, so explanation and learning can run as
    // separate invocations.
    std::string serialize() const {
        std::string out;
        for (const auto& [id, features] : by_id) {
            out += id;
            out += '\t';
            bool first = true;
            for (const std::string& constraint : features.supporting) {
                if (!first) out += ',';
                out += constraint + ":+";
                first = false;
            }
            for (const std::string& constraint : features.opposing) {
                if (!first) out += ',';
                out += constraint + ":-";
                first = false;
            }
            out += '\n';
        }
        return out;
    }

    static RelevantFeatureMap parse(const std::string& text) {
        RelevantFeatureMap map;
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            const std::size_t tab = line.find('\t');
            if (tab == std::string::npos)
                throw ParseError("relevant-feature line needs id<TAB>constraints", line_no, 1);
            RelevantFeatures features;
            const std::string payload = line.substr(tab + 1);
            std::istringstream items(payload);
            std::string item;
            while (std::getline(items, item, ',')) {
                if (item.empty()) continue;
                bool supporting = true;
                std::string name = item;
                if (item.size() >= 2 && item[item.size() - 2] == ':') {
                    supporting = item.back() != '-';
                    name = item.substr(0, item.size() - 2);
                }
                (supporting ? features.supporting : features.opposing).insert(name);
            }
            map.by_id[line.substr(0, tab)] = std::move(features);
        }
        return map;
    }
};

// Explain every sample against the black-box model and keep the satisfied
// constraints, split by whether their weight sign supports the predicted
// class. Explanation runs are independent per sample (pre-split seeds).
inline RelevantFeatureMap transform_dataset(const ClassifierHandle& classifier,
                                            const std::vector<Sample>& samples,
                                            const FeatureSchema& original,
                                            const FeatureSchema& transformed,
                                            const PerturbationConfig& config) {
    config.validate();
    RelevantFeatureMap map;
    for (const Sample& sample : samples) map.by_id[sanitize_constant(sample.id)] = {};

    // Streams split per sample CONTENT (not index), so two identical samples
    // receive identical explanations under one seed.
    auto content_hash = [](const Sample& sample) {
        std::uint64_t hash = 1469598103934665603ULL;
        auto mix = [&hash](const std::string& text) {
            for (unsigned char c : text) {
                hash ^= c;
                hash *= 1099511628211ULL;
            }
            hash ^= 0xff;
            hash *= 1099511628211ULL;
        };
        for (const auto& [column, value] : sample.values) {
            mix(column);
            mix(value);
        }
        return hash;
    };

    const Rng master(config.seed);
    std::vector<std::pair<std::string, RelevantFeatures>> slots(samples.size());
    parallel_for(samples.size(), config.threads, [&](std::size_t i) {
        PerturbationConfig sub = config;
        sub.threads = 1;
        Rng stream = master.split(content_hash(samples[i]));
        sub.seed = stream.next_u64();

        const Sample& sample = samples[i];
        const double probability = classifier.predict(sample);
        const bool predicted_positive = probability >= 0.5;
        const Explanation explanation =
            explain_instance(classifier, sample, original, transformed, sub);

        RelevantFeatures features;
        for (const ExplanationEntry& entry : explanation.entries) {
            if (entry.feature.predicate.empty() || !entry.feature.sample_satisfies) continue;
            if (entry.weight == 0.0) continue;
            const bool supports = (entry.weight > 0.0) == predicted_positive;
            (supports ? features.supporting : features.opposing)
                .insert(entry.feature.predicate);
        }
        slots[i] = {sanitize_constant(sample.id), std::move(features)};
    });
    for (auto& [id, features] : slots) map.by_id[id] = std::move(features);
    return map;
}

// Candidate and coverage restriction for LIME-FOLD. Default phase: candidate
// literals come from the supporting sets of the covered positives, and a
// positive only counts as covered when every non-invented body literal sits
// in its supporting set. Exception phase (swapped examples): the opposing
// sets join in, both as candidates (including those of the protected
// examples) and for coverage accounting.
class LimePolicy final : public LearnPolicy {
public:
    LimePolicy(const RelevantFeatureMap& map, std::vector<PredicateSignature> base_language)
        : map_(&map), base_language_(std::move(base_language)) {
        for (const PredicateSignature& signature : base_language_)
            base_names_.insert(signature.name);
    }

    std::vector<PredicateSignature> language(const std::set<Atom>& covered_positives,
                                             const std::set<Atom>& covered_negatives,
                                             bool exception_phase) const override {
        std::set<std::string> pool;
        for (const Atom& example : covered_positives) {
            if (const RelevantFeatures* features = features_of(example)) {
                pool.insert(features->supporting.begin(), features->supporting.end());
                if (exception_phase)
                    pool.insert(features->opposing.begin(), features->opposing.end());
            }
        }
        if (exception_phase)
            for (const Atom& example : covered_negatives)
                if (const RelevantFeatures* features = features_of(example))
                    pool.insert(features->opposing.begin(), features->opposing.end());

        std::vector<PredicateSignature> out;
        for (const PredicateSignature& signature : base_language_)
            if (pool.count(signature.name)) out.push_back(signature);
        return out;
    }

    bool counts_positive(const Clause& clause, const Atom& example,
                         bool exception_phase) const override {
        const RelevantFeatures* features = features_of(example);
        for (const Literal& lit : clause.body) {
            if (lit.negated) continue;
            if (!base_names_.count(lit.atom.predicate)) continue;  // invented ab predicate
            if (features == nullptr) return false;
            if (features->supporting.count(lit.atom.predicate)) continue;
            if (exception_phase && features->opposing.count(lit.atom.predicate)) continue;
            return false;
        }
        return true;
    }

    bool restricts() const override { return true; }

private:
    const RelevantFeatures* features_of(const Atom& example) const {
        if (example.args.empty()) return nullptr;
        return map_->find(example.args[0].name);
    }

    const RelevantFeatureMap* map_;
    std::vector<PredicateSignature> base_language_;
    std::set<std::string> base_names_;
};

// FOLD with candidate search and positive-coverage accounting restricted to
// the per-sample relevant features. Falls back to plain FOLD when the map
// carries no supporting constraints at all.
inline Hypothesis lime_fold_learn(const std::string& target, const BackgroundTheory& theory,
                                  const std::set<Atom>& positives, const std::set<Atom>& negatives,
                                  const RelevantFeatureMap& map, const FoldConfig& config = {},
                                  LearnDiagnostics* diagnostics = nullptr) {
    LearnDiagnostics local;
    LearnDiagnostics& diag = diagnostics ? *diagnostics : local;
    if (map.all_supporting_empty()) {
        diag.warn("relevant-feature map is empty; falling back to plain FOLD");
        return fold_learn(target, theory, positives, negatives, config, &diag);
    }
    LimePolicy policy(map, background_language(theory, target));
    return fold_learn_with_policy(target, theory, positives, negatives, config, policy, &diag);
}

}  // namespace foldkit
