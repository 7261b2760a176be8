#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "foldkit/csv.hpp"
#include "foldkit/errors.hpp"
#include "foldkit/logic.hpp"

namespace foldkit {

// ---------------------------------------------------------------------------
// Schema
// ---------------------------------------------------------------------------

enum class ColumnKind { Numeric, Categorical };

enum class BinPolicy { EqualFrequency, Supervised, UserSupplied };

// Cut points for a numeric column. k edges define k+1 half-open intervals
// [a, b) covering the real line; lo/hi remember the observed value range for
// perturbation sampling.
struct BinEdges {
    std::vector<double> edges;
    BinPolicy policy = BinPolicy::EqualFrequency;
    double lo = 0.0;
    double hi = 0.0;

    bool empty() const { return edges.empty(); }
    std::size_t interval_count() const { return edges.size() + 1; }

    // Interval index of a value: the number of edges <= value.
    std::size_t bin_of(double value) const {
        std::size_t index = 0;
        for (double edge : edges)
            if (edge <= value) ++index;
        return index;
    }

    void validate(const std::string& column) const {
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (!(edges[i - 1] < edges[i]))
                throw SchemaError("bin edges for column '" + column +
                                  "' must be strictly increasing");
    }
};

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Categorical;
    std::vector<std::string> domain;  // categorical values, sorted and unique
    BinEdges bins;                    // numeric columns only

    // Set on columns produced by propositionalization, so explanations can be
    // rendered against the original feature.
    std::string origin_column;
    std::string origin_value;

    bool is_indicator() const { return !origin_column.empty(); }
};

struct FeatureSchema {
    std::vector<Column> columns;  // feature columns only
    std::string label_column;
    std::string id_column;  // empty when ids are synthesized

    const Column* find(const std::string& name) const {
        for (const Column& column : columns)
            if (column.name == name) return &column;
        return nullptr;
    }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i].name == name) return i;
        throw SchemaError("unknown column: " + name);
    }

    void validate() const {
        std::set<std::string> seen;
        auto claim = [&seen](const std::string& name) {
            if (name.empty()) throw SchemaError("empty column name");
            if (!seen.insert(name).second)
                throw SchemaError("duplicate column name: " + name);
        };
        for (const Column& column : columns) {
            claim(column.name);
            if (column.kind == ColumnKind::Categorical) {
                if (column.domain.empty())
                    throw SchemaError("categorical column '" + column.name +
                                      "' has an empty domain");
                std::set<std::string> values(column.domain.begin(), column.domain.end());
                if (values.size() != column.domain.size())
                    throw SchemaError("categorical column '" + column.name +
                                      "' has duplicate domain values");
            } else {
                column.bins.validate(column.name);
            }
        }
        if (label_column.empty()) throw SchemaError("schema has no label column");
        claim(label_column);
        if (!id_column.empty()) claim(id_column);
    }
};

// A row: feature values by column name (missing cells are absent) plus the
// binary label.
struct Sample {
    std::string id;
    std::map<std::string, std::string> values;
    bool positive = false;

    bool has(const std::string& column) const { return values.count(column) > 0; }

    const std::string& get(const std::string& column) const {
        auto it = values.find(column);
        if (it == values.end())
            throw ContractError("sample '" + id + "' has no value for column '" + column + "'");
        return it->second;
    }

    double numeric(const std::string& column) const {
        const std::string& raw = get(column);
        char* end = nullptr;
        const double value = std::strtod(raw.c_str(), &end);
        if (end == raw.c_str() || *end != '\0')
            throw SchemaError("value '" + raw + "' in column '" + column + "' is not numeric");
        return value;
    }
};

// ---------------------------------------------------------------------------
// Identifier sanitation: CSV headers, values and row ids become predicate
// names and logic constants.
// ---------------------------------------------------------------------------

inline std::string sanitize_token(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else
            out.push_back('_');
    }
    if (out.empty()) out = "x";
    return out;
}

// Predicate names must start with a lowercase letter.
inline std::string sanitize_predicate(const std::string& raw) {
    std::string out = sanitize_token(raw);
    if (!std::islower(static_cast<unsigned char>(out[0]))) out = "f_" + out;
    return out;
}

// Constants may start with a letter or digit.
inline std::string sanitize_constant(const std::string& raw) {
    std::string out = sanitize_token(raw);
    if (out[0] == '_') out = "r" + out;
    return out;
}

inline bool is_missing_token(const std::string& value) { return value.empty() || value == "?"; }

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

struct CsvLoadOptions {
    std::string label_column = "label";
    std::string id_column;        // empty: synthesize r0, r1, ...
    std::string positive_label;   // empty: recognize common tokens
};

namespace detail {

inline bool parses_as_number(const std::string& raw) {
    char* end = nullptr;
    const double value = std::strtod(raw.c_str(), &end);
    return end != raw.c_str() && *end == '\0' && std::isfinite(value);
}

inline std::optional<bool> recognize_label(const std::string& raw) {
    std::string token;
    for (char c : raw) token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    static const std::set<std::string> positives{"1", "true", "yes", "pos", "positive", "+"};
    static const std::set<std::string> negatives{"0", "false", "no", "neg", "negative", "-"};
    if (positives.count(token)) return true;
    if (negatives.count(token)) return false;
    return std::nullopt;
}

}  // namespace detail

// Loads a CSV table into (schema, samples). With a schema given, the header
// must carry exactly its columns; otherwise column kinds are inferred (a
// column is numeric when every non-missing cell parses as a finite number).
// Row order is preserved; missing cells become the missing marker.
inline std::pair<FeatureSchema, std::vector<Sample>> load_csv(
    const std::string& path, const std::optional<FeatureSchema>& given = std::nullopt,
    const CsvLoadOptions& options = {}) {
    const CsvTable table = read_csv_file(path);

    std::set<std::string> header_names;
    for (const std::string& name : table.header)
        if (!header_names.insert(name).second)
            throw SchemaError(path + ": duplicate header name '" + name + "'");

    const std::string label_column = given ? given->label_column : options.label_column;
    const std::string id_column = given ? given->id_column : options.id_column;
    if (!header_names.count(label_column))
        throw SchemaError(path + ": label column '" + label_column + "' not found in header");
    if (!id_column.empty() && !header_names.count(id_column))
        throw SchemaError(path + ": id column '" + id_column + "' not found in header");

    if (given) {
        std::set<std::string> expected;
        for (const Column& column : given->columns) expected.insert(column.name);
        expected.insert(given->label_column);
        if (!given->id_column.empty()) expected.insert(given->id_column);
        if (expected != header_names)
            throw SchemaError(path + ": header does not match the supplied schema");
    }

    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < table.header.size(); ++i) position[table.header[i]] = i;

    // Assemble samples with raw values first.
    std::vector<Sample> samples;
    samples.reserve(table.rows.size());
    std::set<std::string> seen_ids;
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        Sample sample;
        if (id_column.empty()) {
            sample.id = "r" + std::to_string(row);
        } else {
            sample.id = sanitize_constant(table.rows[row][position.at(id_column)]);
            if (!seen_ids.insert(sample.id).second)
                throw SchemaError(path + ": duplicate sample id '" + sample.id + "' (row " +
                                  std::to_string(row + 2) + ")");
        }
        for (const std::string& name : table.header) {
            if (name == label_column || name == id_column) continue;
            const std::string& raw = table.rows[row][position.at(name)];
            if (!is_missing_token(raw)) sample.values[name] = raw;
        }
        samples.push_back(std::move(sample));
    }

    // Labels: must be binary-valued after ingestion.
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        const std::string& raw = table.rows[row][position.at(label_column)];
        if (is_missing_token(raw))
            throw SchemaError(path + ": missing label in row " + std::to_string(row + 2));
        if (!options.positive_label.empty()) {
            samples[row].positive = (raw == options.positive_label);
        } else {
            const std::optional<bool> recognized = detail::recognize_label(raw);
            if (!recognized)
                throw SchemaError(path + ": label value '" + raw +
                                  "' is not recognizably binary; pass the positive label explicitly");
            samples[row].positive = *recognized;
        }
    }
    {
        std::set<std::string> distinct;
        for (std::size_t row = 0; row < table.rows.size(); ++row)
            distinct.insert(table.rows[row][position.at(label_column)]);
        if (distinct.size() > 2)
            throw SchemaError(path + ": label column has " + std::to_string(distinct.size()) +
                              " distinct values; binary labels required");
    }

    if (given) {
        for (const Column& column : given->columns) {
            if (column.kind != ColumnKind::Numeric) continue;
            for (const Sample& sample : samples)
                if (sample.has(column.name)) sample.numeric(column.name);  // throws if not numeric
        }
        return {*given, samples};
    }

    FeatureSchema schema;
    schema.label_column = label_column;
    schema.id_column = id_column;
    for (const std::string& name : table.header) {
        if (name == label_column || name == id_column) continue;
        Column column;
        column.name = name;
        bool numeric = true;
        bool integral = true;
        std::size_t value_count = 0;
        std::set<std::string> domain;
        for (const Sample& sample : samples) {
            if (!sample.has(name)) continue;
            ++value_count;
            const std::string& raw = sample.get(name);
            domain.insert(raw);
            if (!detail::parses_as_number(raw)) numeric = false;
            if (numeric) {
                const double value = std::strtod(raw.c_str(), nullptr);
                if (value != std::floor(value)) integral = false;
            }
        }
        if (value_count == 0)
            throw SchemaError(path + ": column '" + name + "' has no values");
        // Low-cardinality integer columns (level codes like chest-pain type)
        // behave categorically; a schema sidecar overrides the guess.
        const bool code_like =
            numeric && integral && domain.size() <= 8 && domain.size() * 2 <= value_count;
        if (numeric && !code_like) {
            column.kind = ColumnKind::Numeric;
        } else {
            column.kind = ColumnKind::Categorical;
            column.domain.assign(domain.begin(), domain.end());
        }
        schema.columns.push_back(std::move(column));
    }
    schema.validate();
    return {schema, samples};
}

// ---------------------------------------------------------------------------
// Discretization
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> sorted_values(const std::vector<Sample>& samples,
                                         const std::string& column) {
    std::vector<double> values;
    for (const Sample& sample : samples)
        if (sample.has(column)) values.push_back(sample.numeric(column));
    std::sort(values.begin(), values.end());
    return values;
}

}  // namespace detail

// Equal-frequency cut points: midpoints between the order statistics at the
// i*n/bins positions. A cut landing inside a run of equal values shifts to
// the nearest run boundary (never splitting ties); cuts that collapse onto
// the same boundary are deduplicated, so the interval count is at most
// `bins` and a constant column yields no edges at all.
inline BinEdges discretize(const std::vector<Sample>& samples, const FeatureSchema& schema,
                           const std::string& column, std::size_t bins) {
    const Column* spec = schema.find(column);
    if (spec == nullptr) throw SchemaError("unknown column: " + column);
    if (spec->kind != ColumnKind::Numeric)
        throw SchemaError("discretize: column '" + column + "' is not numeric");
    if (bins < 1) throw ContractError("discretize: bins must be >= 1");

    const std::vector<double> values = detail::sorted_values(samples, column);
    if (values.empty())
        throw ContractError("discretize: column '" + column + "' has no non-missing values");
    const std::size_t n = values.size();

    BinEdges result;
    result.policy = BinPolicy::EqualFrequency;
    result.lo = values.front();
    result.hi = values.back();
    for (std::size_t i = 1; i < bins; ++i) {
        std::size_t cut = i * n / bins;  // split between cut-1 and cut
        if (cut == 0 || cut >= n) continue;
        if (values[cut - 1] == values[cut]) {
            // inside a tie run: move to the closer run boundary
            const double tied = values[cut];
            const std::size_t run_begin = static_cast<std::size_t>(
                std::lower_bound(values.begin(), values.end(), tied) - values.begin());
            const std::size_t run_end = static_cast<std::size_t>(
                std::upper_bound(values.begin(), values.end(), tied) - values.begin());
            const bool left_ok = run_begin > 0;
            const bool right_ok = run_end < n;
            if (left_ok && (!right_ok || cut - run_begin <= run_end - cut))
                cut = run_begin;
            else if (right_ok)
                cut = run_end;
            else
                continue;  // the run spans everything (constant column)
        }
        const double edge = (values[cut - 1] + values[cut]) / 2.0;
        if (result.edges.empty() || result.edges.back() < edge) result.edges.push_back(edge);
    }
    return result;
}

// Label-aware alternative: recursive binary entropy splitting, expanding the
// best-gain segment first until `bins` intervals exist, the gain vanishes, or
// a split would leave fewer than `min_leaf` samples on a side.
inline BinEdges discretize_supervised(const std::vector<Sample>& samples,
                                      const FeatureSchema& schema, const std::string& column,
                                      std::size_t bins, std::size_t min_leaf = 5) {
    const Column* spec = schema.find(column);
    if (spec == nullptr) throw SchemaError("unknown column: " + column);
    if (spec->kind != ColumnKind::Numeric)
        throw SchemaError("discretize: column '" + column + "' is not numeric");
    if (bins < 1) throw ContractError("discretize: bins must be >= 1");

    std::vector<std::pair<double, bool>> points;
    for (const Sample& sample : samples)
        if (sample.has(column)) points.emplace_back(sample.numeric(column), sample.positive);
    if (points.empty())
        throw ContractError("discretize: column '" + column + "' has no non-missing values");
    std::sort(points.begin(), points.end());

    BinEdges result;
    result.policy = BinPolicy::Supervised;
    result.lo = points.front().first;
    result.hi = points.back().first;

    auto entropy = [](std::size_t pos, std::size_t total) {
        if (total == 0 || pos == 0 || pos == total) return 0.0;
        const double p = static_cast<double>(pos) / static_cast<double>(total);
        return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
    };

    struct Split {
        double gain;
        std::size_t begin, end, cut;  // [begin,end) indices; cut between cut-1 and cut
        double edge;
        bool operator<(const Split& other) const { return gain < other.gain; }
    };

    auto best_split = [&](std::size_t begin, std::size_t end) -> std::optional<Split> {
        const std::size_t total = end - begin;
        if (total < 2 * min_leaf) return std::nullopt;
        std::size_t total_pos = 0;
        for (std::size_t i = begin; i < end; ++i) total_pos += points[i].second ? 1 : 0;
        const double base = entropy(total_pos, total);

        std::optional<Split> best;
        std::size_t left_pos = 0;
        for (std::size_t cut = begin + 1; cut < end; ++cut) {
            left_pos += points[cut - 1].second ? 1 : 0;
            if (points[cut - 1].first == points[cut].first) continue;  // no cut inside ties
            const std::size_t left = cut - begin, right = end - cut;
            if (left < min_leaf || right < min_leaf) continue;
            const double weighted =
                (static_cast<double>(left) * entropy(left_pos, left) +
                 static_cast<double>(right) * entropy(total_pos - left_pos, right)) /
                static_cast<double>(total);
            const double gain = base - weighted;
            if (gain > 1e-12 && (!best || gain > best->gain))
                best = Split{gain, begin, end, cut,
                             (points[cut - 1].first + points[cut].first) / 2.0};
        }
        return best;
    };

    std::priority_queue<Split> queue;
    if (auto split = best_split(0, points.size())) queue.push(*split);
    std::size_t intervals = 1;
    while (!queue.empty() && intervals < bins) {
        const Split split = queue.top();
        queue.pop();
        result.edges.push_back(split.edge);
        ++intervals;
        if (auto left = best_split(split.begin, split.cut)) queue.push(*left);
        if (auto right = best_split(split.cut, split.end)) queue.push(*right);
    }
    std::sort(result.edges.begin(), result.edges.end());
    return result;
}

// ---------------------------------------------------------------------------
// Propositionalization
// ---------------------------------------------------------------------------

// Each categorical column of cardinality n becomes n binary indicator columns
// `<col>_<value>` (domain {"0","1"}); numeric columns pass through. Original
// column order is preserved; collisions with existing names are an error.
inline FeatureSchema propositionalize(const FeatureSchema& schema) {
    schema.validate();
    FeatureSchema out;
    out.label_column = schema.label_column;
    out.id_column = schema.id_column;

    std::set<std::string> taken;
    for (const Column& column : schema.columns) taken.insert(sanitize_predicate(column.name));

    for (const Column& column : schema.columns) {
        if (column.kind == ColumnKind::Numeric || column.is_indicator()) {
            out.columns.push_back(column);
            continue;
        }
        for (const std::string& value : column.domain) {
            Column indicator;
            indicator.name = sanitize_predicate(column.name) + "_" + sanitize_constant(value);
            indicator.kind = ColumnKind::Categorical;
            indicator.domain = {"0", "1"};
            indicator.origin_column = column.name;
            indicator.origin_value = value;
            if (!taken.insert(indicator.name).second)
                throw SchemaError("propositionalize: generated column '" + indicator.name +
                                  "' collides with an existing name");
            out.columns.push_back(std::move(indicator));
        }
    }
    return out;
}

// Rewrites samples into the propositionalized space. A missing original
// value leaves every derived indicator missing.
inline std::vector<Sample> propositionalize_samples(const FeatureSchema& transformed,
                                                    const std::vector<Sample>& samples) {
    std::vector<Sample> out;
    out.reserve(samples.size());
    for (const Sample& sample : samples) {
        Sample rewritten;
        rewritten.id = sample.id;
        rewritten.positive = sample.positive;
        for (const Column& column : transformed.columns) {
            if (column.is_indicator()) {
                if (!sample.has(column.origin_column)) continue;
                rewritten.values[column.name] =
                    sample.get(column.origin_column) == column.origin_value ? "1" : "0";
            } else if (sample.has(column.name)) {
                rewritten.values[column.name] = sample.get(column.name);
            }
        }
        out.push_back(std::move(rewritten));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ground predicates
// ---------------------------------------------------------------------------

inline std::string categorical_predicate(const std::string& column, const std::string& value) {
    return sanitize_predicate(column) + "_" + sanitize_constant(value);
}

inline std::string numeric_bin_predicate(const std::string& column, std::size_t bin) {
    return sanitize_predicate(column) + "_bin" + std::to_string(bin);
}

// One ground fact per (sample, satisfied feature constraint): categorical
// values map to `<col>_<value>(id)`, numeric values to the predicate of the
// interval containing them. Missing values emit nothing, so no literal over
// that column can cover the sample.
inline BackgroundTheory make_predicates(const FeatureSchema& schema,
                                        const std::vector<Sample>& samples) {
    for (const Column& column : schema.columns)
        if (column.kind == ColumnKind::Numeric && column.bins.empty() && !samples.empty()) {
            bool has_value = false;
            for (const Sample& sample : samples)
                if (sample.has(column.name)) has_value = true;
            if (has_value)
                throw ContractError("make_predicates: numeric column '" + column.name +
                                    "' has no bin edges assigned");
        }

    BackgroundTheory theory;
    for (const Sample& sample : samples) {
        const Term id = Term::constant(sanitize_constant(sample.id));
        for (const Column& column : schema.columns) {
            if (!sample.has(column.name)) continue;
            std::string predicate;
            if (column.kind == ColumnKind::Categorical)
                predicate = categorical_predicate(column.name, sample.get(column.name));
            else
                predicate =
                    numeric_bin_predicate(column.name, column.bins.bin_of(sample.numeric(column.name)));
            theory.facts.insert(Atom{std::move(predicate), {id}});
        }
    }
    return theory;
}

// Target examples from the labels: E+ and E- as ground atoms target(id).
inline std::pair<std::set<Atom>, std::set<Atom>> label_examples(const std::string& target,
                                                                const std::vector<Sample>& samples) {
    std::set<Atom> positives, negatives;
    for (const Sample& sample : samples) {
        Atom atom{target, {Term::constant(sanitize_constant(sample.id))}};
        (sample.positive ? positives : negatives).insert(std::move(atom));
    }
    return {positives, negatives};
}

// ---------------------------------------------------------------------------
// Schema sidecar: one `name:kind[:payload]` line per column.
// ---------------------------------------------------------------------------

inline std::string format_double(double value) {
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
}

inline std::string save_schema(const FeatureSchema& schema) {
    auto check_token = [](const std::string& token, const std::string& what) {
        if (token.find_first_of(":,@\n") != std::string::npos)
            throw SchemaError(what + " '" + token + "' contains a reserved character (:,@)");
    };
    std::string out;
    for (const Column& column : schema.columns) {
        check_token(column.name, "column name");
        for (const std::string& value : column.domain) check_token(value, "domain value");
        out += column.name;
        if (column.kind == ColumnKind::Numeric) {
            out += ":numeric";
            if (!column.bins.empty() || column.bins.lo != column.bins.hi) {
                out += ':';
                for (std::size_t i = 0; i < column.bins.edges.size(); ++i) {
                    if (i > 0) out += ',';
                    out += format_double(column.bins.edges[i]);
                }
                out += '@' + format_double(column.bins.lo) + ',' + format_double(column.bins.hi);
            }
        } else {
            out += ":categorical:";
            for (std::size_t i = 0; i < column.domain.size(); ++i) {
                if (i > 0) out += ',';
                out += column.domain[i];
            }
        }
        out += '\n';
    }
    out += schema.label_column + ":label\n";
    if (!schema.id_column.empty()) out += schema.id_column + ":id\n";
    return out;
}

inline FeatureSchema parse_schema(const std::string& text) {
    FeatureSchema schema;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t first = line.find(':');
        if (first == std::string::npos)
            throw ParseError("schema line needs name:kind", line_no, 1);
        const std::string name = line.substr(0, first);
        const std::size_t second = line.find(':', first + 1);
        const std::string kind = line.substr(
            first + 1, second == std::string::npos ? std::string::npos : second - first - 1);
        const std::string payload = second == std::string::npos ? "" : line.substr(second + 1);

        if (kind == "label") {
            schema.label_column = name;
        } else if (kind == "id") {
            schema.id_column = name;
        } else if (kind == "categorical") {
            Column column;
            column.name = name;
            column.kind = ColumnKind::Categorical;
            std::istringstream values(payload);
            std::string value;
            while (std::getline(values, value, ',')) column.domain.push_back(value);
            schema.columns.push_back(std::move(column));
        } else if (kind == "numeric") {
            Column column;
            column.name = name;
            column.kind = ColumnKind::Numeric;
            if (!payload.empty()) {
                std::string edges = payload;
                const std::size_t at = payload.find('@');
                if (at != std::string::npos) {
                    edges = payload.substr(0, at);
                    const std::string range = payload.substr(at + 1);
                    const std::size_t comma = range.find(',');
                    if (comma == std::string::npos)
                        throw ParseError("numeric range needs lo,hi", line_no, 1);
                    column.bins.lo = std::strtod(range.substr(0, comma).c_str(), nullptr);
                    column.bins.hi = std::strtod(range.substr(comma + 1).c_str(), nullptr);
                }
                std::istringstream cuts(edges);
                std::string cut;
                while (std::getline(cuts, cut, ','))
                    if (!cut.empty()) column.bins.edges.push_back(std::strtod(cut.c_str(), nullptr));
            }
            schema.columns.push_back(std::move(column));
        } else {
            throw ParseError("unknown column kind '" + kind + "'", line_no, 1);
        }
    }
    schema.validate();
    return schema;
}

inline FeatureSchema load_schema_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open schema file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_schema(buffer.str());
}

}  // namespace foldkit
