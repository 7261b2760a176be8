#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "foldkit/dataset.hpp"
#include "foldkit/errors.hpp"
#include "foldkit/rng.hpp"

namespace foldkit {

// Black-box prediction interface: probability of the positive class for a
// sample in the original feature space.
class ClassifierHandle {
public:
    virtual ~ClassifierHandle() = default;
    virtual double predict(const Sample& sample) const = 0;
    virtual std::string provenance() const = 0;
};

struct ClassifierConfig {
    std::size_t trees = 21;
    std::size_t max_depth = 8;
    std::size_t min_leaf = 2;
    std::uint64_t seed = 0;
};

namespace detail {

// Row encoding over the transformed schema: indicators are 0/1, numeric
// columns raw values, missing cells NaN (NaN fails every `<` test and falls
// to the right branch, deterministically).
inline std::vector<double> encode_row(const FeatureSchema& transformed, const Sample& sample) {
    std::vector<double> row;
    row.reserve(transformed.columns.size());
    for (const Column& column : transformed.columns) {
        if (!sample.has(column.name)) {
            row.push_back(std::numeric_limits<double>::quiet_NaN());
        } else if (column.kind == ColumnKind::Numeric) {
            row.push_back(sample.numeric(column.name));
        } else {
            row.push_back(sample.get(column.name) == "1" ? 1.0 : 0.0);
        }
    }
    return row;
}

struct TreeNode {
    int feature = -1;  // -1: leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double vote = 0.0;
};

class DecisionTree {
public:
    double predict(const std::vector<double>& row) const {
        int at = 0;
        while (nodes_[at].feature >= 0) {
            const double value = row[static_cast<std::size_t>(nodes_[at].feature)];
            at = value < nodes_[at].threshold ? nodes_[at].left : nodes_[at].right;
        }
        return nodes_[at].vote;
    }

    static DecisionTree fit(const std::vector<std::vector<double>>& rows,
                            const std::vector<bool>& labels, const std::vector<std::size_t>& index,
                            const ClassifierConfig& config) {
        DecisionTree tree;
        tree.grow(rows, labels, index, 0, config);
        return tree;
    }

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    std::vector<TreeNode>& nodes() { return nodes_; }

private:
    int grow(const std::vector<std::vector<double>>& rows, const std::vector<bool>& labels,
             const std::vector<std::size_t>& index, std::size_t depth,
             const ClassifierConfig& config) {
        std::size_t positives = 0;
        for (std::size_t i : index) positives += labels[i] ? 1 : 0;

        const int node_id = static_cast<int>(nodes_.size());
        nodes_.push_back({});
        if (depth >= config.max_depth || positives == 0 || positives == index.size() ||
            index.size() < 2 * config.min_leaf) {
            nodes_[node_id].vote = 2 * positives >= index.size() ? 1.0 : 0.0;
            return node_id;
        }

        const std::size_t n_features = rows[index[0]].size();
        int best_feature = -1;
        double best_threshold = 0.0, best_score = gini(positives, index.size());
        for (std::size_t f = 0; f < n_features; ++f) {
            std::vector<std::pair<double, bool>> column;
            column.reserve(index.size());
            for (std::size_t i : index) {
                const double value = rows[i][f];
                if (!std::isnan(value)) column.emplace_back(value, labels[i]);
            }
            if (column.size() < 2) continue;
            std::sort(column.begin(), column.end());
            const std::size_t nan_count = index.size() - column.size();

            std::size_t left_pos = 0;
            for (std::size_t cut = 1; cut < column.size(); ++cut) {
                left_pos += column[cut - 1].second ? 1 : 0;
                if (column[cut - 1].first == column[cut].first) continue;
                const std::size_t left_n = cut;
                const std::size_t right_n = column.size() - cut + nan_count;  // NaN goes right
                if (left_n < config.min_leaf || right_n < config.min_leaf) continue;
                const std::size_t right_pos = positives - left_pos;
                const double score =
                    (static_cast<double>(left_n) * gini(left_pos, left_n) +
                     static_cast<double>(right_n) * gini(right_pos, right_n)) /
                    static_cast<double>(index.size());
                if (score + 1e-12 < best_score) {
                    best_score = score;
                    best_feature = static_cast<int>(f);
                    best_threshold = (column[cut - 1].first + column[cut].first) / 2.0;
                }
            }
        }

        if (best_feature < 0) {
            nodes_[node_id].vote = 2 * positives >= index.size() ? 1.0 : 0.0;
            return node_id;
        }

        std::vector<std::size_t> left_index, right_index;
        for (std::size_t i : index) {
            const double value = rows[i][static_cast<std::size_t>(best_feature)];
            if (value < best_threshold)
                left_index.push_back(i);
            else
                right_index.push_back(i);  // NaN lands here
        }
        nodes_[node_id].feature = best_feature;
        nodes_[node_id].threshold = best_threshold;
        nodes_[node_id].left = grow(rows, labels, left_index, depth + 1, config);
        nodes_[node_id].right = grow(rows, labels, right_index, depth + 1, config);
        return node_id;
    }

    static double gini(std::size_t positives, std::size_t total) {
        if (total == 0) return 0.0;
        const double p = static_cast<double>(positives) / static_cast<double>(total);
        return 2.0 * p * (1.0 - p);
    }

    std::vector<TreeNode> nodes_;
};

}  // namespace detail

// Bagged ensemble of depth-limited decision trees over the propositionalized
// feature space. Deterministic under seed; predictions are the fraction of
// trees voting positive.
class BaggedTreeClassifier final : public ClassifierHandle {
public:
    double predict(const Sample& sample) const override {
        if (degenerate_) return constant_;
        const std::vector<Sample> rewritten = propositionalize_samples(transformed_, {sample});
        const std::vector<double> row = detail::encode_row(transformed_, rewritten[0]);
        double votes = 0.0;
        for (const detail::DecisionTree& tree : trees_) votes += tree.predict(row);
        return votes / static_cast<double>(trees_.size());
    }

    std::string provenance() const override { return "builtin"; }

    const FeatureSchema& transformed_schema() const { return transformed_; }
    bool degenerate() const { return degenerate_; }
    std::size_t tree_count() const { return trees_.size(); }

    // Trains on samples in the original feature space; the schema must carry
    // bin edges for numeric columns it wants discretized downstream (the
    // trees themselves split on raw values).
    static std::shared_ptr<BaggedTreeClassifier> train(const FeatureSchema& schema,
                                                       const std::vector<Sample>& samples,
                                                       const ClassifierConfig& config,
                                                       std::vector<std::string>* warnings = nullptr) {
        if (samples.size() < 2)
            throw ContractError("train_builtin_classifier: need at least 2 samples");

        auto classifier = std::make_shared<BaggedTreeClassifier>();
        classifier->transformed_ = propositionalize(schema);

        std::size_t positives = 0;
        for (const Sample& sample : samples) positives += sample.positive ? 1 : 0;
        if (positives == 0 || positives == samples.size()) {
            classifier->degenerate_ = true;
            classifier->constant_ = positives == 0 ? 0.0 : 1.0;
            if (warnings)
                warnings->push_back(
                    "training set has a single class; classifier degenerates to a constant");
            return classifier;
        }

        const std::vector<Sample> transformed_samples =
            propositionalize_samples(classifier->transformed_, samples);
        std::vector<std::vector<double>> rows;
        std::vector<bool> labels;
        rows.reserve(samples.size());
        for (const Sample& sample : transformed_samples) {
            rows.push_back(detail::encode_row(classifier->transformed_, sample));
            labels.push_back(sample.positive);
        }

        Rng rng(config.seed);
        for (std::size_t t = 0; t < config.trees; ++t) {
            Rng tree_rng = rng.split(t);
            std::vector<std::size_t> bootstrap(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i)
                bootstrap[i] = tree_rng.next_index(rows.size());
            std::sort(bootstrap.begin(), bootstrap.end());
            classifier->trees_.push_back(
                detail::DecisionTree::fit(rows, labels, bootstrap, config));
        }
        return classifier;
    }

    std::string serialize() const {
        std::ostringstream out;
        out.precision(17);
        out << "foldkit-model v1\n";
        out << "schema-hash " << schema_fingerprint(transformed_) << "\n";
        out << "degenerate " << (degenerate_ ? 1 : 0) << " " << constant_ << "\n";
        out << "trees " << trees_.size() << "\n";
        for (const detail::DecisionTree& tree : trees_) {
            out << "tree " << tree.nodes().size() << "\n";
            for (const detail::TreeNode& node : tree.nodes())
                out << node.feature << " " << node.threshold << " " << node.left << " "
                    << node.right << " " << node.vote << "\n";
        }
        return out.str();
    }

    static std::shared_ptr<BaggedTreeClassifier> deserialize(const std::string& text,
                                                             const FeatureSchema& schema) {
        auto classifier = std::make_shared<BaggedTreeClassifier>();
        classifier->transformed_ = propositionalize(schema);

        std::istringstream in(text);
        std::string line, word;
        if (!std::getline(in, line) || line != "foldkit-model v1")
            throw ParseError("not a foldkit model file");
        std::uint64_t expected_hash = 0;
        in >> word >> expected_hash;
        if (word != "schema-hash") throw ParseError("model file: expected schema-hash");
        if (expected_hash != schema_fingerprint(classifier->transformed_))
            throw SchemaError("model was trained with a different schema");
        int degenerate_flag = 0;
        in >> word >> degenerate_flag >> classifier->constant_;
        if (word != "degenerate") throw ParseError("model file: expected degenerate flag");
        classifier->degenerate_ = degenerate_flag != 0;
        std::size_t tree_count = 0;
        in >> word >> tree_count;
        if (word != "trees") throw ParseError("model file: expected tree count");
        for (std::size_t t = 0; t < tree_count; ++t) {
            std::size_t node_count = 0;
            in >> word >> node_count;
            if (word != "tree") throw ParseError("model file: expected tree header");
            detail::DecisionTree tree;
            tree.nodes().resize(node_count);
            for (detail::TreeNode& node : tree.nodes())
                in >> node.feature >> node.threshold >> node.left >> node.right >> node.vote;
            classifier->trees_.push_back(std::move(tree));
        }
        if (!in) throw ParseError("model file truncated");
        return classifier;
    }

    // FNV-1a over the transformed column names and kinds; guards model/schema
    // pairing across CLI invocations.
    static std::uint64_t schema_fingerprint(const FeatureSchema& transformed) {
        std::uint64_t hash = 1469598103934665603ULL;
        auto mix = [&hash](const std::string& text) {
            for (unsigned char c : text) {
                hash ^= c;
                hash *= 1099511628211ULL;
            }
            hash ^= 0xff;
            hash *= 1099511628211ULL;
        };
        for (const Column& column : transformed.columns) {
            mix(column.name);
            mix(column.kind == ColumnKind::Numeric ? "num" : "cat");
        }
        return hash;
    }

private:
    FeatureSchema transformed_;
    std::vector<detail::DecisionTree> trees_;
    bool degenerate_ = false;
    double constant_ = 0.0;
};

// Spec-level name for the training entry point.
inline std::shared_ptr<BaggedTreeClassifier> train_builtin_classifier(
    const std::vector<Sample>& samples, const FeatureSchema& schema,
    const ClassifierConfig& config, std::vector<std::string>* warnings = nullptr) {
    return BaggedTreeClassifier::train(schema, samples, config, warnings);
}

}  // namespace foldkit
