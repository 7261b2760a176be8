// foldkit command-line interface: ingest tabular data, train the built-in
// black-box model, explain samples, transform datasets into relevant-feature
// maps, learn default theories (FOIL / FOLD / LIME-FOLD), evaluate, render.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "foldkit/dataset.hpp"
#include "foldkit/errors.hpp"
#include "foldkit/eval.hpp"
#include "foldkit/explain.hpp"
#include "foldkit/external_classifier.hpp"
#include "foldkit/limefold.hpp"
#include "foldkit/parser.hpp"
#include "foldkit/pipeline.hpp"
#include "foldkit/render.hpp"
#include "foldkit/stratify.hpp"

namespace {

using namespace foldkit;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

// Flags shared by every subcommand that reads a CSV dataset.
struct DataFlags {
    std::string data;
    std::string schema;
    std::string label_column = "label";
    std::string id_column;
    std::string positive_label;
    std::size_t bins = 4;
    bool supervised_bins = false;
};

void add_data_flags(CLI::App* cmd, DataFlags& flags) {
    cmd->add_option("--data", flags.data, "CSV dataset (header row required)")->required();
    cmd->add_option("--schema", flags.schema, "schema sidecar (name:kind[:payload] per line)");
    cmd->add_option("--label-col", flags.label_column, "label column name (default: label)");
    cmd->add_option("--id-col", flags.id_column, "column holding sample identifiers");
    cmd->add_option("--pos-label", flags.positive_label, "label value treated as positive");
    cmd->add_option("--bins", flags.bins, "bins per numeric column (default: 4)");
    cmd->add_flag("--supervised-bins", flags.supervised_bins,
                  "entropy-based label-aware discretization instead of equal-frequency");
}

std::pair<FeatureSchema, std::vector<Sample>> load_dataset(const DataFlags& flags) {
    std::optional<FeatureSchema> schema;
    if (!flags.schema.empty()) schema = load_schema_file(flags.schema);
    CsvLoadOptions options;
    options.label_column = flags.label_column;
    options.id_column = flags.id_column;
    options.positive_label = flags.positive_label;
    return load_csv(flags.data, schema, options);
}

PipelineConfig make_config(const DataFlags& flags, std::uint64_t seed) {
    PipelineConfig config;
    config.bins = flags.bins;
    config.supervised_bins = flags.supervised_bins;
    config.seed = seed;
    config.threads = thread_count_from_env(1);
    config.perturbation.threads = config.threads;
    return config;
}

void report_warnings(const LearnDiagnostics& diag) {
    for (const std::string& warning : diag.warnings) std::cerr << "warning: " << warning << "\n";
}

// Relational inputs: background program plus ground-atom example files.
struct RelationalInput {
    BackgroundTheory theory;
    std::set<Atom> positives;
    std::set<Atom> negatives;
    std::string target;
};

RelationalInput load_relational(const std::string& bk_path, const std::string& pos_path,
                                const std::string& neg_path, const std::string& target_flag) {
    RelationalInput input;
    input.theory = parse_program(read_file(bk_path));
    input.positives = parse_ground_atoms(read_file(pos_path));
    if (!neg_path.empty()) input.negatives = parse_ground_atoms(read_file(neg_path));
    if (!target_flag.empty()) {
        input.target = target_flag;
    } else if (!input.positives.empty()) {
        input.target = input.positives.begin()->predicate;
    } else {
        throw ContractError("cannot infer the target predicate from an empty positive set; "
                            "pass --target");
    }

    const StratificationReport gate = check_stratified(input.theory);
    if (!gate.ok) throw ContractError("background theory rejected: " + gate.message);
    return input;
}

std::shared_ptr<ClassifierHandle> load_classifier(const std::string& model_path,
                                                  const std::string& exec_command,
                                                  const FeatureSchema& schema) {
    if (!model_path.empty() && !exec_command.empty())
        throw ContractError("pass either --model or --exec, not both");
    if (!model_path.empty())
        return BaggedTreeClassifier::deserialize(read_file(model_path), schema);
    if (!exec_command.empty()) return std::make_shared<ExternalClassifier>(exec_command, schema);
    throw ContractError("a classifier is required: pass --model or --exec");
}

const Sample& pick_sample(const std::vector<Sample>& samples, const std::string& selector) {
    const std::string wanted = sanitize_constant(selector);
    for (const Sample& sample : samples)
        if (sanitize_constant(sample.id) == wanted) return sample;
    char* end = nullptr;
    const long index = std::strtol(selector.c_str(), &end, 10);
    if (end != selector.c_str() && *end == '\0' && index >= 0 &&
        static_cast<std::size_t>(index) < samples.size())
        return samples[static_cast<std::size_t>(index)];
    throw ContractError("no sample with id or index '" + selector + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"foldkit: default-theory rule learning with local explanations"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;

    // --- ingest ---
    DataFlags ingest_flags;
    std::string ingest_out_dir;
    CLI::App* ingest = app.add_subcommand(
        "ingest", "read a CSV, infer/validate the schema, emit facts and example atoms");
    add_data_flags(ingest, ingest_flags);
    ingest->add_option("--out-dir", ingest_out_dir, "output directory")->required();

    // --- train-model ---
    DataFlags train_flags;
    std::string train_out;
    ClassifierConfig classifier_config;
    CLI::App* train = app.add_subcommand("train-model", "train the built-in bagged-tree model");
    add_data_flags(train, train_flags);
    train->add_option("--trees", classifier_config.trees, "ensemble size (default: 21)");
    train->add_option("--depth", classifier_config.max_depth, "tree depth limit (default: 8)");
    train->add_option("--seed", seed, "random seed")->envname("FOLDKIT_SEED")->required();
    train->add_option("--out", train_out, "model file")->required();

    // --- explain ---
    DataFlags explain_flags;
    std::string explain_model, explain_exec, explain_sample, explain_out;
    PerturbationConfig perturbation;
    CLI::App* explain = app.add_subcommand("explain", "LIME-style local explanation of one sample");
    add_data_flags(explain, explain_flags);
    explain->add_option("--model", explain_model, "built-in model file");
    explain->add_option("--exec", explain_exec, "external classifier command");
    explain->add_option("--sample", explain_sample, "sample id or row index")->required();
    explain->add_option("--k", perturbation.k, "explanation length (default: 3)");
    explain->add_option("--n", perturbation.n_samples, "perturbations (default: 1000)");
    explain->add_option("--kernel-width", perturbation.kernel_width,
                        "similarity kernel width (default: 0.75)");
    explain->add_option("--seed", seed, "random seed")->envname("FOLDKIT_SEED")->required();
    explain->add_option("--out", explain_out, "output file (default: stdout)");

    // --- transform ---
    DataFlags transform_flags;
    std::string transform_model, transform_exec, transform_out;
    PerturbationConfig transform_perturbation;
    CLI::App* transform = app.add_subcommand(
        "transform", "explain every sample and write the relevant-feature map");
    add_data_flags(transform, transform_flags);
    transform->add_option("--model", transform_model, "built-in model file");
    transform->add_option("--exec", transform_exec, "external classifier command");
    transform->add_option("--k", transform_perturbation.k, "explanation length (default: 3)");
    transform->add_option("--n", transform_perturbation.n_samples, "perturbations (default: 1000)");
    transform->add_option("--kernel-width", transform_perturbation.kernel_width,
                          "similarity kernel width (default: 0.75)");
    transform->add_option("--seed", seed, "random seed")->envname("FOLDKIT_SEED")->required();
    transform->add_option("--out", transform_out, "output file")->required();

    // --- learn ---
    DataFlags learn_flags;
    std::string learn_algo = "fold", learn_bk, learn_pos, learn_neg, learn_target, learn_rmap,
                learn_out;
    FoldConfig fold_config;
    std::size_t learn_max_clauses = 64;
    bool learn_mdl = false;
    CLI::App* learn = app.add_subcommand("learn", "induce a default theory");
    learn->add_option("--algo", learn_algo, "foil | fold | lime-fold (default: fold)");
    learn->add_option("--bk", learn_bk, "background program (relational mode)");
    learn->add_option("--pos", learn_pos, "positive example atoms (relational mode)");
    learn->add_option("--neg", learn_neg, "negative example atoms (relational mode)");
    CLI::Option* learn_data =
        learn->add_option("--data", learn_flags.data, "CSV dataset (tabular mode)");
    learn->add_option("--schema", learn_flags.schema, "schema sidecar");
    learn->add_option("--label-col", learn_flags.label_column, "label column name");
    learn->add_option("--id-col", learn_flags.id_column, "sample identifier column");
    learn->add_option("--pos-label", learn_flags.positive_label, "positive label value");
    learn->add_option("--bins", learn_flags.bins, "bins per numeric column");
    learn->add_flag("--supervised-bins", learn_flags.supervised_bins,
                    "label-aware discretization");
    learn->add_option("--target", learn_target, "target predicate name");
    learn->add_option("--rmap", learn_rmap, "pre-computed relevant-feature map (lime-fold)");
    learn->add_option("--max-rule-length", fold_config.max_rule_length,
                      "body literal cap (default: 6)");
    learn->add_option("--max-clauses", learn_max_clauses, "clause cap (default: 64)");
    learn->add_option("--depth-cap", fold_config.exception_depth_cap,
                      "exception nesting cap (default: 3)");
    learn->add_flag("--mdl", learn_mdl, "enable the description-length guard");
    learn->add_option("--seed", seed, "random seed")->envname("FOLDKIT_SEED")->required();
    learn->add_option("--out", learn_out, "output program file (default: stdout)");
    learn_data->excludes("--bk");

    // --- eval ---
    DataFlags eval_flags;
    std::string eval_hyp, eval_bk, eval_pos, eval_neg, eval_target, eval_algo = "fold", eval_out;
    std::size_t eval_cv = 0;
    CLI::App* evaluate = app.add_subcommand("eval", "score a hypothesis or cross-validate");
    evaluate->add_option("--hyp", eval_hyp, "hypothesis program to score");
    evaluate->add_option("--bk", eval_bk, "background program (relational mode)");
    evaluate->add_option("--pos", eval_pos, "positive test atoms");
    evaluate->add_option("--neg", eval_neg, "negative test atoms");
    CLI::Option* eval_data =
        evaluate->add_option("--data", eval_flags.data, "CSV dataset (tabular mode)");
    evaluate->add_option("--schema", eval_flags.schema, "schema sidecar");
    evaluate->add_option("--label-col", eval_flags.label_column, "label column name");
    evaluate->add_option("--id-col", eval_flags.id_column, "sample identifier column");
    evaluate->add_option("--pos-label", eval_flags.positive_label, "positive label value");
    evaluate->add_option("--bins", eval_flags.bins, "bins per numeric column");
    evaluate->add_flag("--supervised-bins", eval_flags.supervised_bins,
                       "label-aware discretization");
    evaluate->add_option("--target", eval_target, "target predicate name");
    evaluate->add_option("--cv", eval_cv, "run seeded k-fold cross-validation instead");
    evaluate->add_option("--algo", eval_algo, "learner for --cv (default: fold)");
    evaluate->add_option("--seed", seed, "random seed (required for --cv)")
        ->envname("FOLDKIT_SEED");
    evaluate->add_option("--out", eval_out, "output file (default: stdout)");
    eval_data->excludes("--bk");

    // --- render ---
    std::string render_in, render_out;
    CLI::App* render = app.add_subcommand("render", "parse and canonically re-print a program");
    render->add_option("--in", render_in, "program file")->required();
    render->add_option("--out", render_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*ingest) {
            const auto [schema, samples] = load_dataset(ingest_flags);
            PipelineConfig config = make_config(ingest_flags, 0);
            const TabularProblem problem = prepare_tabular(schema, samples, config);
            std::filesystem::create_directories(ingest_out_dir);
            write_file(ingest_out_dir + "/schema.txt", save_schema(problem.schema));
            write_file(ingest_out_dir + "/facts.lp", render_theory(problem.facts));
            std::string pos_text, neg_text;
            for (const Atom& atom : problem.positives) pos_text += render_atom(atom) + ".\n";
            for (const Atom& atom : problem.negatives) neg_text += render_atom(atom) + ".\n";
            write_file(ingest_out_dir + "/pos.atoms", pos_text);
            write_file(ingest_out_dir + "/neg.atoms", neg_text);
        } else if (*train) {
            const auto [schema, samples] = load_dataset(train_flags);
            PipelineConfig config = make_config(train_flags, seed);
            const TabularProblem problem = prepare_tabular(schema, samples, config);
            classifier_config.seed = seed;
            std::vector<std::string> warnings;
            const auto model =
                train_builtin_classifier(problem.samples, problem.schema, classifier_config,
                                         &warnings);
            for (const std::string& warning : warnings) std::cerr << "warning: " << warning << "\n";
            write_file(train_out, model->serialize());
        } else if (*explain) {
            const auto [schema, samples] = load_dataset(explain_flags);
            PipelineConfig config = make_config(explain_flags, seed);
            const TabularProblem problem = prepare_tabular(schema, samples, config);
            const auto classifier =
                load_classifier(explain_model, explain_exec, problem.schema);
            perturbation.seed = seed;
            perturbation.threads = config.threads;
            const Sample& sample = pick_sample(problem.samples, explain_sample);
            const Explanation explanation = explain_instance(
                *classifier, sample, problem.schema, problem.transformed, perturbation);
            emit(explain_out, serialize_explanation(explanation));
        } else if (*transform) {
            const auto [schema, samples] = load_dataset(transform_flags);
            PipelineConfig config = make_config(transform_flags, seed);
            const TabularProblem problem = prepare_tabular(schema, samples, config);
            const auto classifier =
                load_classifier(transform_model, transform_exec, problem.schema);
            transform_perturbation.seed = seed;
            transform_perturbation.threads = config.threads;
            const RelevantFeatureMap map =
                transform_dataset(*classifier, problem.samples, problem.schema,
                                  problem.transformed, transform_perturbation);
            write_file(transform_out, map.serialize());
        } else if (*learn) {
            const Algorithm algorithm = algorithm_from_name(learn_algo);
            fold_config.max_clauses = learn_max_clauses;
            fold_config.mdl_enabled = learn_mdl;

            Hypothesis hypothesis;
            LearnDiagnostics diag;
            if (!learn_bk.empty()) {
                const RelationalInput input =
                    load_relational(learn_bk, learn_pos, learn_neg, learn_target);
                switch (algorithm) {
                    case Algorithm::Foil: {
                        FoilConfig foil_config;
                        foil_config.max_clause_length = fold_config.max_rule_length;
                        foil_config.max_clauses = learn_max_clauses;
                        hypothesis = foil_learn(input.target, input.theory, input.positives,
                                                input.negatives, foil_config, &diag);
                        break;
                    }
                    case Algorithm::Fold:
                        hypothesis = fold_learn(input.target, input.theory, input.positives,
                                                input.negatives, fold_config, &diag);
                        break;
                    case Algorithm::LimeFold: {
                        if (learn_rmap.empty())
                            throw ContractError(
                                "lime-fold in relational mode needs --rmap (no classifier to "
                                "explain)");
                        const RelevantFeatureMap map =
                            RelevantFeatureMap::parse(read_file(learn_rmap));
                        hypothesis = lime_fold_learn(input.target, input.theory, input.positives,
                                                     input.negatives, map, fold_config, &diag);
                        break;
                    }
                }
            } else if (!learn_flags.data.empty()) {
                const auto [schema, samples] = load_dataset(learn_flags);
                PipelineConfig config = make_config(learn_flags, seed);
                config.target = learn_target;
                config.fold = fold_config;
                config.foil.max_clause_length = fold_config.max_rule_length;
                config.foil.max_clauses = learn_max_clauses;
                const TabularProblem problem = prepare_tabular(schema, samples, config);
                std::optional<RelevantFeatureMap> map;
                if (!learn_rmap.empty())
                    map = RelevantFeatureMap::parse(read_file(learn_rmap));
                const TabularLearnResult result =
                    learn_tabular(algorithm, problem, config, map ? &*map : nullptr);
                hypothesis = result.hypothesis;
                diag = result.diagnostics;
            } else {
                throw ContractError("learn needs either --bk/--pos[/--neg] or --data");
            }
            report_warnings(diag);
            emit(learn_out, render_asp(hypothesis));
        } else if (*evaluate) {
            if (eval_cv > 0) {
                if (eval_flags.data.empty())
                    throw ContractError("--cv requires --data");
                const auto [schema, samples] = load_dataset(eval_flags);
                PipelineConfig config = make_config(eval_flags, seed);
                config.target = eval_target;
                const CrossValidationResult cv = cross_validate(
                    algorithm_from_name(eval_algo), schema, samples, eval_cv, config);
                std::ostringstream out;
                out.precision(17);
                for (std::size_t fold = 0; fold < cv.folds.size(); ++fold)
                    out << "fold=" << fold << "\n" << cv.folds[fold].key_value_block() << "\n";
                out << "aggregate\n";
                out << "mean_precision=" << cv.aggregate.mean.precision << "\n";
                out << "mean_recall=" << cv.aggregate.mean.recall << "\n";
                out << "mean_accuracy=" << cv.aggregate.mean.accuracy << "\n";
                out << "mean_f1=" << cv.aggregate.mean.f1 << "\n";
                out << "stddev_precision=" << cv.aggregate.stddev.precision << "\n";
                out << "stddev_recall=" << cv.aggregate.stddev.recall << "\n";
                out << "stddev_accuracy=" << cv.aggregate.stddev.accuracy << "\n";
                out << "stddev_f1=" << cv.aggregate.stddev.f1 << "\n";
                emit(eval_out, out.str());
            } else {
                if (eval_hyp.empty()) throw ContractError("eval needs --hyp (or --cv)");
                const BackgroundTheory hyp_program = parse_program(read_file(eval_hyp));
                Hypothesis hypothesis;
                for (const Clause& clause : hyp_program.clauses) {
                    if (clause.head.predicate.rfind("ab", 0) == 0 &&
                        clause.head.predicate.find_first_not_of(
                            "0123456789", 2) == std::string::npos)
                        hypothesis.abnormalities.push_back(clause);
                    else
                        hypothesis.defaults.push_back(clause);
                }
                for (const Atom& fact : hyp_program.facts)
                    hypothesis.defaults.push_back(Clause{fact, {}});

                Metrics metrics;
                if (!eval_bk.empty()) {
                    const RelationalInput input =
                        load_relational(eval_bk, eval_pos, eval_neg, eval_target);
                    metrics = evaluate_hypothesis(hypothesis, input.theory, input.positives,
                                                  input.negatives);
                } else if (!eval_flags.data.empty()) {
                    const auto [schema, samples] = load_dataset(eval_flags);
                    PipelineConfig config = make_config(eval_flags, seed);
                    config.target = eval_target;
                    const TabularProblem problem = prepare_tabular(schema, samples, config);
                    metrics = evaluate_hypothesis(hypothesis, problem.facts, problem.positives,
                                                  problem.negatives);
                } else {
                    throw ContractError("eval needs either --bk/--pos[/--neg] or --data");
                }
                emit(eval_out, metrics.report() + "\n" + metrics.key_value_block());
            }
        } else if (*render) {
            const BackgroundTheory program = parse_program(read_file(render_in));
            emit(render_out, render_theory(program));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
