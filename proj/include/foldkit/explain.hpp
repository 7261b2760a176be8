#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "foldkit/classifier.hpp"
#include "foldkit/dataset.hpp"
#include "foldkit/errors.hpp"
#include "foldkit/parallel.hpp"
#include "foldkit/rng.hpp"
#include "foldkit/wls.hpp"

namespace foldkit {

struct PerturbationConfig {
    std::size_t n_samples = 1000;  // N
    std::size_t k = 3;             // explanation length K
    double kernel_width = 0.75;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const {
        if (k < 1 || n_samples < k)
            throw ContractError("perturbation config requires N >= K >= 1");
        if (kernel_width <= 0) throw ContractError("kernel width must be positive");
    }
};

// One interpretable dimension: a transformed-schema column together with the
// explained sample's value for it.
struct InterpretableFeature {
    std::string column;        // transformed column name
    std::string constraint;    // human-readable, e.g. thal_7=false or chol in [a,b)
    std::string predicate;     // ground predicate name; empty when the value is missing
    bool sample_satisfies = false;  // whether the explained sample carries the predicate
};

struct ExplanationEntry {
    InterpretableFeature feature;
    double weight = 0.0;
};

struct Explanation {
    std::vector<ExplanationEntry> entries;  // exactly K, |weight| descending
    double intercept = 0.0;
};

struct PerturbedInstance {
    Sample sample;                       // original feature space
    std::vector<std::uint8_t> matches;   // per transformed column: same bin/value as x
};

namespace detail {

inline std::string interval_text(const BinEdges& bins, std::size_t bin) {
    std::ostringstream out;
    out.precision(6);
    if (bins.empty()) {
        out << "(-inf, inf)";
    } else if (bin == 0) {
        out << "(-inf, " << bins.edges.front() << ")";
    } else if (bin == bins.edges.size()) {
        out << "[" << bins.edges.back() << ", inf)";
    } else {
        out << "[" << bins.edges[bin - 1] << ", " << bins.edges[bin] << ")";
    }
    return out.str();
}

inline std::pair<double, double> bin_bounds(const BinEdges& bins, std::size_t bin) {
    const double lo = bin == 0 ? bins.lo : bins.edges[bin - 1];
    const double hi = bin == bins.edges.size() ? bins.hi : bins.edges[bin];
    return {std::min(lo, hi), std::max(lo, hi)};
}

}  // namespace detail

// Interpretable dimensions of the explained sample x: one per transformed
// column, remembering the constraint x satisfies there.
inline std::vector<InterpretableFeature> interpretable_features(const FeatureSchema& original,
                                                                const FeatureSchema& transformed,
                                                                const Sample& x) {
    std::vector<InterpretableFeature> features;
    features.reserve(transformed.columns.size());
    for (const Column& column : transformed.columns) {
        InterpretableFeature feature;
        feature.column = column.name;
        if (column.is_indicator()) {
            if (!x.has(column.origin_column)) {
                feature.constraint = column.name + "=missing";
            } else {
                const bool on = x.get(column.origin_column) == column.origin_value;
                feature.constraint = column.name + (on ? "=true" : "=false");
                feature.predicate = column.name;
                feature.sample_satisfies = on;
            }
        } else {
            const Column* source = original.find(column.name);
            if (source == nullptr)
                throw SchemaError("transformed schema does not derive from the original: " +
                                  column.name);
            if (!x.has(column.name)) {
                feature.constraint = column.name + "=missing";
            } else {
                const std::size_t bin = source->bins.bin_of(x.numeric(column.name));
                feature.constraint =
                    column.name + " in " + detail::interval_text(source->bins, bin);
                feature.predicate = numeric_bin_predicate(column.name, bin);
                feature.sample_satisfies = true;
            }
        }
        features.push_back(std::move(feature));
    }
    return features;
}

// N perturbations of x. Instance 0 is x itself. For every other instance and
// every original feature independently: keep x's value with probability 0.5,
// otherwise draw uniformly (categorical: from the domain; numeric: uniformly
// within a uniformly chosen bin). The match vector marks, per transformed
// column, whether the perturbed sample falls in x's bin/value.
inline std::vector<PerturbedInstance> sample_around(const Sample& x, const FeatureSchema& original,
                                                    const FeatureSchema& transformed,
                                                    const PerturbationConfig& config) {
    config.validate();
    const Rng master(config.seed);

    std::vector<PerturbedInstance> instances(config.n_samples);
    parallel_for(config.n_samples, config.threads, [&](std::size_t i) {
        PerturbedInstance instance;
        instance.sample.id = x.id + "_p" + std::to_string(i);
        instance.sample.positive = x.positive;

        if (i == 0) {
            instance.sample.values = x.values;
        } else {
            Rng rng = master.split(i);
            for (const Column& column : original.columns) {
                const bool keep = rng.next_unit() < 0.5;
                if (column.kind == ColumnKind::Categorical) {
                    if (keep) {
                        if (x.has(column.name))
                            instance.sample.values[column.name] = x.get(column.name);
                    } else {
                        instance.sample.values[column.name] =
                            column.domain[rng.next_index(column.domain.size())];
                    }
                } else {
                    if (keep) {
                        if (x.has(column.name))
                            instance.sample.values[column.name] = x.get(column.name);
                    } else {
                        const std::size_t bin = rng.next_index(column.bins.interval_count());
                        const auto [lo, hi] = detail::bin_bounds(column.bins, bin);
                        instance.sample.values[column.name] =
                            format_double(lo == hi ? lo : rng.next_real(lo, hi));
                    }
                }
            }
        }

        instance.matches.reserve(transformed.columns.size());
        for (const Column& column : transformed.columns) {
            bool match;
            if (column.is_indicator()) {
                const bool x_on =
                    x.has(column.origin_column) && x.get(column.origin_column) == column.origin_value;
                const bool p_on = instance.sample.has(column.origin_column) &&
                                  instance.sample.get(column.origin_column) == column.origin_value;
                match = x_on == p_on &&
                        x.has(column.origin_column) == instance.sample.has(column.origin_column);
            } else {
                const Column* source = original.find(column.name);
                if (x.has(column.name) && instance.sample.has(column.name)) {
                    match = source->bins.bin_of(x.numeric(column.name)) ==
                            source->bins.bin_of(instance.sample.numeric(column.name));
                } else {
                    match = x.has(column.name) == instance.sample.has(column.name);
                }
            }
            instance.matches.push_back(match ? 1 : 0);
        }
        instances[i] = std::move(instance);
    });
    return instances;
}

// Similarity kernel over interpretable vectors: exp(-d^2 / width^2) with d
// the fraction of mismatched dimensions. Weight 1 for identical vectors,
// strictly positive everywhere.
inline double kernel_weight(const std::vector<std::uint8_t>& x,
                            const std::vector<std::uint8_t>& x_prime, double width) {
    if (x.size() != x_prime.size())
        throw ContractError("kernel_weight: interpretable vectors differ in length");
    if (x.empty()) return 1.0;
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != x_prime[i]) ++mismatches;
    const double d = static_cast<double>(mismatches) / static_cast<double>(x.size());
    return std::exp(-(d * d) / (width * width));
}

struct LwrPoint {
    std::vector<std::uint8_t> design;  // interpretable binary vector
    double target = 0.0;               // classifier probability
    double weight = 0.0;               // kernel weight
};

struct LwrFit {
    std::vector<double> coefficients;           // all dimensions
    std::vector<std::size_t> top;               // K indices, |coefficient| descending
    double intercept = 0.0;
};

// Locally weighted linear regression over all dimensions (ridge-damped
// normal equations, lambda 1e-6), keeping the K coefficients largest in
// absolute value. Ties resolve to the lower column index.
inline LwrFit lwr_fit(const std::vector<LwrPoint>& points, std::size_t k,
                      double lambda = 1e-6) {
    if (points.empty()) throw ContractError("lwr_fit: no points");
    std::vector<std::vector<double>> rows;
    std::vector<double> targets, weights;
    rows.reserve(points.size());
    for (const LwrPoint& point : points) {
        std::vector<double> row(point.design.begin(), point.design.end());
        rows.push_back(std::move(row));
        targets.push_back(point.target);
        weights.push_back(point.weight);
    }

    const WlsFit solved = solve_weighted_ridge(rows, targets, weights, lambda);

    LwrFit fit;
    fit.coefficients = solved.coefficients;
    fit.intercept = solved.intercept;
    std::vector<std::size_t> order(fit.coefficients.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::fabs(fit.coefficients[a]) > std::fabs(fit.coefficients[b]);
    });
    const std::size_t keep = std::min(k, order.size());
    fit.top.assign(order.begin(), order.begin() + keep);
    return fit;
}

// Full local explanation: perturb, predict, weight, fit, report top K.
// Deterministic under seed; prediction calls may run in parallel.
inline Explanation explain_instance(const ClassifierHandle& classifier, const Sample& x,
                                    const FeatureSchema& original, const FeatureSchema& transformed,
                                    const PerturbationConfig& config) {
    config.validate();
    const std::vector<InterpretableFeature> features =
        interpretable_features(original, transformed, x);
    const std::vector<PerturbedInstance> instances =
        sample_around(x, original, transformed, config);

    std::vector<double> predictions(instances.size());
    parallel_for(instances.size(), config.threads,
                 [&](std::size_t i) { predictions[i] = classifier.predict(instances[i].sample); });

    std::vector<LwrPoint> points;
    points.reserve(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        LwrPoint point;
        point.design = instances[i].matches;
        point.target = predictions[i];
        point.weight = kernel_weight(instances[0].matches, instances[i].matches,
                                     config.kernel_width);
        points.push_back(std::move(point));
    }

    const LwrFit fit = lwr_fit(points, std::min(config.k, features.size()));

    Explanation explanation;
    explanation.intercept = fit.intercept;
    for (std::size_t index : fit.top)
        explanation.entries.push_back({features[index], fit.coefficients[index]});
    return explanation;
}

// One `feature<TAB>weight` line per entry plus the intercept line.
inline std::string serialize_explanation(const Explanation& explanation) {
    std::ostringstream out;
    out.precision(17);
    for (const ExplanationEntry& entry : explanation.entries)
        out << entry.feature.constraint << "\t" << entry.weight << "\n";
    out << "intercept\t" << explanation.intercept << "\n";
    return out.str();
}

}  // namespace foldkit
