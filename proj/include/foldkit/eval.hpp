#pragma once

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "foldkit/errors.hpp"
#include "foldkit/logic.hpp"
#include "foldkit/model.hpp"

namespace foldkit {

// Confusion-matrix scores for a hypothesis on held-out examples. 0/0 ratios
// are reported as 0 with the zero_division flag raised rather than NaN.
struct Metrics {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    double precision = 0, recall = 0, accuracy = 0, f1 = 0;
    std::size_t n_clauses = 0, n_literals = 0;
    bool zero_division = false;

    static Metrics from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
        Metrics m;
        m.tp = tp;
        m.fp = fp;
        m.tn = tn;
        m.fn = fn;
        auto ratio = [&m](std::size_t numerator, std::size_t denominator) {
            if (denominator == 0) {
                m.zero_division = true;
                return 0.0;
            }
            return static_cast<double>(numerator) / static_cast<double>(denominator);
        };
        m.precision = ratio(tp, tp + fp);
        m.recall = ratio(tp, tp + fn);
        m.accuracy = ratio(tp + tn, tp + fp + tn + fn);
        m.f1 = (m.precision + m.recall) == 0.0
                   ? (m.zero_division = true, 0.0)
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        return m;
    }

    std::string key_value_block() const {
        std::ostringstream out;
        out.precision(17);
        out << "tp=" << tp << "\nfp=" << fp << "\ntn=" << tn << "\nfn=" << fn << "\n"
            << "precision=" << precision << "\nrecall=" << recall << "\naccuracy=" << accuracy
            << "\nf1=" << f1 << "\nn_clauses=" << n_clauses << "\nn_literals=" << n_literals
            << "\nzero_division=" << (zero_division ? 1 : 0) << "\n";
        return out.str();
    }

    std::string report() const {
        std::ostringstream out;
        out.precision(4);
        out << "confusion: tp=" << tp << " fp=" << fp << " tn=" << tn << " fn=" << fn << "\n"
            << "precision=" << precision << " recall=" << recall << " accuracy=" << accuracy
            << " f1=" << f1;
        if (zero_division) out << " (0/0 reported as 0)";
        out << "\nrules: " << n_clauses << " clauses, " << n_literals << " body literals\n";
        return out.str();
    }
};

inline BackgroundTheory merge_hypothesis(const BackgroundTheory& theory,
                                         const Hypothesis& hypothesis) {
    BackgroundTheory merged = theory;
    for (const Clause& clause : hypothesis.all_clauses()) {
        if (clause.is_fact())
            merged.facts.insert(clause.head);
        else
            merged.clauses.push_back(clause);
    }
    return merged;
}

// An example is predicted positive iff it is entailed by theory + hypothesis
// under the deduced model.
inline Metrics evaluate_hypothesis(const Hypothesis& hypothesis, const BackgroundTheory& theory,
                                   const std::set<Atom>& test_positives,
                                   const std::set<Atom>& test_negatives) {
    for (const Atom& example : test_positives)
        if (test_negatives.count(example))
            throw ContractError("evaluate_hypothesis: test sets overlap");

    std::set<std::string> extras;
    for (const std::set<Atom>* examples : {&test_positives, &test_negatives})
        for (const Atom& example : *examples)
            for (const Term& t : example.args)
                if (!t.is_var()) extras.insert(t.name);

    const Model model = deduce(merge_hypothesis(theory, hypothesis), extras);

    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
    for (const Atom& example : test_positives) (model.contains(example) ? tp : fn) += 1;
    for (const Atom& example : test_negatives) (model.contains(example) ? fp : tn) += 1;

    Metrics metrics = Metrics::from_counts(tp, fp, tn, fn);
    metrics.n_clauses = hypothesis.defaults.size() + hypothesis.abnormalities.size();
    metrics.n_literals = hypothesis.total_body_literals();
    return metrics;
}

struct MetricsAggregate {
    Metrics mean;
    Metrics stddev;
};

inline MetricsAggregate aggregate_metrics(const std::vector<Metrics>& folds) {
    MetricsAggregate out;
    if (folds.empty()) return out;
    const double n = static_cast<double>(folds.size());
    auto collect = [&](auto getter) {
        double sum = 0;
        for (const Metrics& m : folds) sum += getter(m);
        const double mean = sum / n;
        double variance = 0;
        for (const Metrics& m : folds) variance += (getter(m) - mean) * (getter(m) - mean);
        const double sd = folds.size() > 1 ? std::sqrt(variance / (n - 1)) : 0.0;
        return std::pair<double, double>{mean, sd};
    };
    std::tie(out.mean.precision, out.stddev.precision) =
        collect([](const Metrics& m) { return m.precision; });
    std::tie(out.mean.recall, out.stddev.recall) =
        collect([](const Metrics& m) { return m.recall; });
    std::tie(out.mean.accuracy, out.stddev.accuracy) =
        collect([](const Metrics& m) { return m.accuracy; });
    std::tie(out.mean.f1, out.stddev.f1) = collect([](const Metrics& m) { return m.f1; });
    return out;
}

}  // namespace foldkit
