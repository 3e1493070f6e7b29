// Command-line front-end: composes the library modules into reproducible runs.
// Every command that writes files also writes a manifest (flags, seed, input
// digests) beside them; re-running with the same inputs reproduces the outputs
// byte for byte.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genpas/corpus.hpp"
#include "genpas/diagnostics.hpp"
#include "genpas/evaluator.hpp"
#include "genpas/io.hpp"
#include "genpas/sampler.hpp"
#include "genpas/search.hpp"
#include "genpas/seqaug.hpp"
#include "genpas/theorylab.hpp"

namespace {

using namespace genpas;

namespace fs = std::filesystem;

// --format wins; otherwise the extension decides.
LogFormat resolve_format(const std::string& path, const std::string& format_flag) {
    if (!format_flag.empty()) return parse_log_format(format_flag);
    const std::string ext = fs::path(path).extension().string();
    if (ext == ".tsv") return LogFormat::Tsv;
    if (ext == ".csv") return LogFormat::Csv;
    if (ext == ".jsonl") return LogFormat::Jsonl;
    throw UsageError("cannot infer format from '" + path + "' (pass --format tsv|csv|jsonl)");
}

// Split inputs may be named as the directory or as its split.jsonl file.
std::string resolve_split_dir(const std::string& path) {
    if (fs::path(path).extension() == ".jsonl") return fs::path(path).parent_path().string();
    return path;
}

std::vector<std::string> split_input_files(const std::string& dir) {
    return {(fs::path(dir) / "split.jsonl").string(), (fs::path(dir) / "vocab.jsonl").string()};
}

std::vector<ExtExponent> parse_exponent_list(const std::string& text) {
    std::vector<ExtExponent> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string tok =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(ExtExponent::parse(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<std::uint32_t> parse_k_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string tok =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        char* end = nullptr;
        const unsigned long v = std::strtoul(tok.c_str(), &end, 10);
        if (end == nullptr || *end != '\0' || v < 1)
            throw UsageError("cannot parse cutoff list '" + text + "' (expected e.g. 5,10)");
        out.push_back(static_cast<std::uint32_t>(v));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------- stats / split

struct CorpusOpts {
    std::string in;
    std::string out;
    std::string format;
    bool no_dedup = false;
    std::uint32_t min_len = 4;
};

std::vector<UserSequence> sequences_for_stats(const CorpusOpts& o,
                                              std::vector<std::string>* inputs) {
    if (fs::is_directory(o.in)) {
        // A split directory: stats over the reconstituted full sequences.
        const SplitCorpus split = load_split(o.in);
        *inputs = split_input_files(o.in);
        std::vector<UserSequence> seqs = split.train;
        for (std::size_t u = 0; u < split.n_users(); ++u) {
            seqs[u].items.push_back(split.val_target[u]);
            seqs[u].items.push_back(split.test_target[u]);
        }
        return seqs;
    }
    const auto log = load_interactions(o.in, resolve_format(o.in, o.format));
    *inputs = {o.in};
    return build_sequences(log, !o.no_dedup).seqs;
}

void run_stats(const CorpusOpts& o) {
    std::vector<std::string> inputs;
    const StatsReport stats = corpus_stats(sequences_for_stats(o, &inputs));
    const std::string json = stats_json(stats);
    if (o.out.empty()) {
        std::cout << json;
        return;
    }
    write_text_file(o.out, json);
    write_manifest(o.out + ".manifest.json", "stats",
                   {{"in", o.in},
                    {"format", o.format},
                    {"no-dedup", o.no_dedup ? "1" : "0"},
                    {"out", o.out}},
                   0, inputs, {fs::path(o.out).filename().string()});
    std::cout << "wrote " << o.out << "\n";
}

void run_split(const CorpusOpts& o) {
    const auto log = load_interactions(o.in, resolve_format(o.in, o.format));
    const SequenceCorpus corpus = build_sequences(log, !o.no_dedup);
    const SplitCorpus split = leave_one_out_split(corpus, o.min_len);
    save_split(split, o.out);
    write_text_file((fs::path(o.out) / "summary.json").string(), split_summary_json(split));
    write_manifest((fs::path(o.out) / "manifest.json").string(), "split",
                   {{"in", o.in},
                    {"format", o.format},
                    {"no-dedup", o.no_dedup ? "1" : "0"},
                    {"min-len", std::to_string(o.min_len)},
                    {"out", o.out}},
                   0, {o.in}, {"split.jsonl", "vocab.jsonl", "summary.json"});
    std::cout << "wrote " << o.out << " (" << split.n_users() << " users, " << split.dropped_users
              << " dropped)\n";
}

// ---------------------------------------------------------- enumerate / sample

struct PairGenOpts {
    std::string in;
    std::string out;
    std::string strategy;
    std::string config;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

void run_enumerate(const PairGenOpts& o) {
    const std::string dir = resolve_split_dir(o.in);
    const SplitCorpus split = load_split(dir);
    const auto pairs = enumerate_strategy(split.train, parse_strategy(o.strategy));
    save_pairs(pairs, split, o.out);
    write_manifest(o.out + ".manifest.json", "enumerate",
                   {{"in", o.in}, {"strategy", o.strategy}, {"out", o.out}}, 0,
                   split_input_files(dir), {fs::path(o.out).filename().string()});
    std::cout << "wrote " << pairs.size() << " pairs to " << o.out << "\n";
}

void run_sample(const PairGenOpts& o) {
    if (o.config.empty() == o.strategy.empty())
        throw UsageError("pass exactly one of --config and --strategy");
    const AugConfig config = o.config.empty() ? recast_config(parse_strategy(o.strategy))
                                              : AugConfig::parse(o.config);
    const std::string dir = resolve_split_dir(o.in);
    const SplitCorpus split = load_split(dir);
    const std::uint64_t count = o.count ? o.count : default_epoch_size(split.train);
    Rng rng(derive_seed(o.seed, 0));
    const auto pairs = sample_epoch(config, split.train, count, rng);
    save_pairs(pairs, split, o.out);
    write_manifest(o.out + ".manifest.json", "sample",
                   {{"in", o.in},
                    {"config", config.str()},
                    {"count", std::to_string(count)},
                    {"out", o.out}},
                   o.seed, split_input_files(dir), {fs::path(o.out).filename().string()});
    std::cout << "wrote " << pairs.size() << " pairs to " << o.out << "\n";
}

// ------------------------------------------------------------ diagnose / search

struct DiagOpts {
    std::string in;
    std::string out;
    std::string json_out;
    std::vector<std::string> configs;
    std::string stage = "val";
    std::uint32_t eval_pairs = 500;
    std::uint32_t negatives = 100;
    std::uint64_t rep_samples = 0;
    double epsilon = 1e-9;
    std::uint64_t seed = 0;
};

void run_diagnose(const DiagOpts& o) {
    const std::string dir = resolve_split_dir(o.in);
    const SplitCorpus split = load_split(dir);
    const DiagBudgets budgets{o.eval_pairs, o.negatives, o.rep_samples};
    const EvalStage stage = parse_stage(o.stage);

    std::vector<DiagReport> reports;
    for (std::size_t i = 0; i < o.configs.size(); ++i) {
        reports.push_back(diagnostics_report(AugConfig::parse(o.configs[i]), split, budgets,
                                             o.epsilon, derive_seed(o.seed, i), stage));
    }
    write_text_file(o.out, diag_csv(reports));

    std::map<std::string, std::string> flags{{"in", o.in},
                                             {"stage", o.stage},
                                             {"eval-pairs", std::to_string(o.eval_pairs)},
                                             {"negatives", std::to_string(o.negatives)},
                                             {"rep-samples", std::to_string(o.rep_samples)},
                                             {"epsilon", format_double(o.epsilon)},
                                             {"out", o.out}};
    for (std::size_t i = 0; i < reports.size(); ++i)
        flags["config." + std::to_string(i)] = reports[i].config.str();
    std::vector<std::string> outputs{fs::path(o.out).filename().string()};

    if (!o.json_out.empty()) {
        if (reports.size() != 1)
            throw UsageError("--json needs exactly one --config");
        write_text_file(o.json_out, diag_json(reports.front()));
        flags["json"] = o.json_out;
        outputs.push_back(fs::path(o.json_out).filename().string());
    }
    write_manifest(o.out + ".manifest.json", "diagnose", flags, o.seed, split_input_files(dir),
                   outputs);
    std::cout << "wrote " << reports.size() << (reports.size() == 1 ? " report" : " reports")
              << " to " << o.out << "\n";
}

struct SearchOpts {
    std::string in;
    std::string out;
    std::string grid = "default";
    std::string alpha_set;
    std::string beta_set;
    std::string gamma_set;
    double r = 20.0;
    std::uint32_t k = 10;
    std::uint32_t eval_pairs = 500;
    std::uint32_t negatives = 100;
    std::uint64_t rep_samples = 0;
    double epsilon = 1e-9;
    std::uint64_t seed = 0;
};

void run_search(const SearchOpts& o) {
    if (o.grid != "default") throw UsageError("unknown grid '" + o.grid + "' (only: default)");
    std::vector<ExtExponent> alphas{ExtExponent::finite(-2), ExtExponent::finite(-1),
                                    ExtExponent::finite(0), ExtExponent::finite(1),
                                    ExtExponent::finite(2)};
    std::vector<ExtExponent> betas{ExtExponent::finite(-1), ExtExponent::finite(0),
                                   ExtExponent::finite(1), ExtExponent::finite(2),
                                   ExtExponent::pos_inf()};
    std::vector<ExtExponent> gammas{ExtExponent::neg_inf(), ExtExponent::finite(-1),
                                    ExtExponent::finite(0), ExtExponent::finite(1)};
    if (!o.alpha_set.empty()) alphas = parse_exponent_list(o.alpha_set);
    if (!o.beta_set.empty()) betas = parse_exponent_list(o.beta_set);
    if (!o.gamma_set.empty()) gammas = parse_exponent_list(o.gamma_set);

    const std::string dir = resolve_split_dir(o.in);
    const SplitCorpus split = load_split(dir);
    const DiagBudgets budgets{o.eval_pairs, o.negatives, o.rep_samples};
    const SearchReport report = filter_configs(make_grid(alphas, betas, gammas), split, o.r, o.k,
                                               budgets, o.epsilon, o.seed);
    write_text_file(o.out, search_csv(report));
    write_manifest(o.out + ".manifest.json", "search",
                   {{"in", o.in},
                    {"grid", o.grid},
                    {"alpha-set", o.alpha_set},
                    {"beta-set", o.beta_set},
                    {"gamma-set", o.gamma_set},
                    {"r", format_double(o.r)},
                    {"k", std::to_string(o.k)},
                    {"eval-pairs", std::to_string(o.eval_pairs)},
                    {"negatives", std::to_string(o.negatives)},
                    {"rep-samples", std::to_string(o.rep_samples)},
                    {"epsilon", format_double(o.epsilon)},
                    {"out", o.out}},
                   o.seed, split_input_files(dir), {fs::path(o.out).filename().string()});

    std::cout << "stage 1 kept " << report.stage1_count << " of " << report.rows.size()
              << " configs; top " << report.top_k << ":\n";
    for (const SearchRow& row : report.rows)
        if (row.kept_stage2)
            std::cout << "  " << row.config.str() << " score=" << row.score << "\n";
}

// ------------------------------------------------------------------- theory

struct TheoryOpts {
    std::string profile;
    double strength = 0.0;
    std::uint32_t n = 10;
    std::uint32_t items = 20;
    std::uint32_t m = 1000;
    std::uint32_t trials = 50;
    std::string beta = "0";
    std::string convention = "theorem";
    std::uint64_t seed = 0;
    std::string out;
    std::string summary_out;
};

void run_theory(const TheoryOpts& o) {
    const BiasProfile profile{parse_bias_kind(o.profile), o.strength};
    // The model row draw must not collide with any per-trial stream (trial
    // indices are 32-bit), so it gets the topmost stream id.
    Rng model_rng(derive_seed(o.seed, ~0ull));
    const PositionModel model = make_position_model(o.n, o.items, profile, model_rng);
    const TvSummary summary = tv_experiment(ExtExponent::parse(o.beta), model, o.m, o.trials,
                                            o.seed, parse_convention(o.convention));
    write_text_file(o.out, theory_csv(summary));

    std::map<std::string, std::string> flags{{"profile", o.profile},
                                             {"strength", format_double(o.strength)},
                                             {"n", std::to_string(o.n)},
                                             {"items", std::to_string(o.items)},
                                             {"m", std::to_string(o.m)},
                                             {"trials", std::to_string(o.trials)},
                                             {"beta", o.beta},
                                             {"convention", o.convention},
                                             {"out", o.out}};
    std::vector<std::string> outputs{fs::path(o.out).filename().string()};
    if (!o.summary_out.empty()) {
        write_text_file(o.summary_out, theory_summary_json(summary));
        flags["summary"] = o.summary_out;
        outputs.push_back(fs::path(o.summary_out).filename().string());
    }
    write_manifest(o.out + ".manifest.json", "theory", flags, o.seed, {}, outputs);
    std::cout << "mean tv_empirical " << format_double(summary.mean_empirical) << ", tv_expected "
              << format_double(summary.tv_expected) << "; wrote " << o.out << "\n";
}

// --------------------------------------------------------------------- eval

struct EvalOpts {
    std::string split;
    std::string pairs;
    std::string model;
    std::string k = "5,10";
    std::uint32_t neg = 0;
    std::string stage = "test";
    std::uint32_t neighbors = 10;
    std::uint32_t groups = 0;
    std::uint64_t seed = 0;
    std::string out;
};

void run_eval(const EvalOpts& o) {
    const std::string dir = resolve_split_dir(o.split);
    const SplitCorpus split = load_split(dir);
    const auto pairs = load_pairs(o.pairs, split);
    const ReferenceModel model =
        train_reference_model(parse_model_kind(o.model), pairs, o.neighbors);
    const std::vector<std::uint32_t> Ks = parse_k_list(o.k);
    const EvalStage stage = parse_stage(o.stage);

    std::string json;
    if (o.groups > 0) {
        json = grouped_eval_json(
            evaluate_grouped(model, split, stage, Ks, o.neg, o.seed, o.groups));
    } else {
        json = eval_json(evaluate(model, split, stage, Ks, o.neg, o.seed));
    }
    std::cout << json;
    if (o.out.empty()) return;
    write_text_file(o.out, json);
    std::vector<std::string> inputs = split_input_files(dir);
    inputs.push_back(o.pairs);
    write_manifest(o.out + ".manifest.json", "eval",
                   {{"split", o.split},
                    {"pairs", o.pairs},
                    {"model", o.model},
                    {"k", o.k},
                    {"neg", std::to_string(o.neg)},
                    {"stage", o.stage},
                    {"neighbors", std::to_string(o.neighbors)},
                    {"group-by-popularity", std::to_string(o.groups)},
                    {"out", o.out}},
                   o.seed, inputs, {fs::path(o.out).filename().string()});
}

// ------------------------------------------------------------------ augment

struct AugmentOpts {
    std::string in;
    std::string split;
    std::string out;
    std::string op;
    std::uint32_t delta = 0;
    double omega = 0.9;
    std::uint64_t seed = 0;
};

void run_augment(const AugmentOpts& o) {
    const std::string dir = resolve_split_dir(o.split);
    const SplitCorpus split = load_split(dir);
    std::vector<TrainingPair> pairs = load_pairs(o.in, split);
    const SeqAugSpec spec{parse_seqaug_kind(o.op), o.delta, o.omega};
    const ItemId universe = static_cast<ItemId>(split.vocabulary.size());

    Rng rng(derive_seed(o.seed, 0));
    std::uint64_t unchanged = 0;
    for (TrainingPair& p : pairs) p.input = apply_seqaug(spec, p.input, universe, rng, &unchanged);
    save_pairs(pairs, split, o.out);

    std::vector<std::string> inputs = split_input_files(dir);
    inputs.push_back(o.in);
    write_manifest(o.out + ".manifest.json", "augment",
                   {{"in", o.in},
                    {"split", o.split},
                    {"op", o.op},
                    {"delta", std::to_string(o.delta)},
                    {"omega", format_double(o.omega)},
                    {"out", o.out}},
                   o.seed, inputs, {fs::path(o.out).filename().string()});
    if (unchanged > 0)
        std::cerr << "warning: " << unchanged << " length-1 inputs left unchanged by delete\n";
    std::cout << "wrote " << pairs.size() << " pairs to " << o.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GenPAS sequential-recommendation data augmentation toolkit"};
    app.require_subcommand(1);

    CorpusOpts stats_opts;
    CLI::App* stats_cmd = app.add_subcommand("stats", "Corpus statistics from a log or split");
    stats_cmd->add_option("--in", stats_opts.in, "interaction log or split directory")->required();
    stats_cmd->add_option("--out", stats_opts.out, "output JSON path (default: stdout)");
    stats_cmd->add_option("--format", stats_opts.format, "tsv|csv|jsonl (default: by extension)");
    stats_cmd->add_flag("--no-dedup", stats_opts.no_dedup, "keep consecutive repeated items");
    stats_cmd->callback([&] { run_stats(stats_opts); });

    CorpusOpts split_opts;
    CLI::App* split_cmd = app.add_subcommand("split", "Leave-one-out split of an interaction log");
    split_cmd->add_option("--in", split_opts.in, "interaction log")->required();
    split_cmd->add_option("--out", split_opts.out, "output directory")->required();
    split_cmd->add_option("--format", split_opts.format, "tsv|csv|jsonl (default: by extension)");
    split_cmd->add_flag("--no-dedup", split_opts.no_dedup, "keep consecutive repeated items");
    split_cmd->add_option("--min-len", split_opts.min_len, "minimum raw sequence length (>= 3)");
    split_cmd->callback([&] { run_split(split_opts); });

    PairGenOpts enum_opts;
    CLI::App* enum_cmd = app.add_subcommand("enumerate", "Exhaustive pairs for LT, MT or SW");
    enum_cmd->add_option("--in", enum_opts.in, "split directory")->required();
    enum_cmd->add_option("--strategy", enum_opts.strategy, "LT|MT|SW")->required();
    enum_cmd->add_option("--out", enum_opts.out, "output pair file")->required();
    enum_cmd->callback([&] { run_enumerate(enum_opts); });

    PairGenOpts sample_opts;
    CLI::App* sample_cmd = app.add_subcommand("sample", "Sample training pairs from a config");
    sample_cmd->add_option("--in", sample_opts.in, "split directory")->required();
    sample_cmd->add_option("--config", sample_opts.config, "alpha,beta,gamma (inf allowed)");
    sample_cmd->add_option("--strategy", sample_opts.strategy, "LT|MT|SW recast");
    sample_cmd->add_option("--count", sample_opts.count, "draw count (0 = sum of |s|-1)");
    sample_cmd->add_option("--seed", sample_opts.seed, "rng seed");
    sample_cmd->add_option("--out", sample_opts.out, "output pair file")->required();
    sample_cmd->callback([&] { run_sample(sample_opts); });

    DiagOpts diag_opts;
    CLI::App* diag_cmd = app.add_subcommand("diagnose", "KL/alignment/discrimination report");
    diag_cmd->add_option("--in", diag_opts.in, "split directory")->required();
    diag_cmd->add_option("--config", diag_opts.configs, "alpha,beta,gamma (repeatable)")
        ->required();
    diag_cmd->add_option("--stage", diag_opts.stage, "val|test (default val)");
    diag_cmd->add_option("--eval-pairs", diag_opts.eval_pairs, "eval pairs per metric");
    diag_cmd->add_option("--negatives", diag_opts.negatives, "negative targets per eval pair");
    diag_cmd->add_option("--rep-samples", diag_opts.rep_samples,
                         "sampled representation size (0 = MT pair count)");
    diag_cmd->add_option("--epsilon", diag_opts.epsilon, "KL smoothing");
    diag_cmd->add_option("--seed", diag_opts.seed, "rng seed");
    diag_cmd->add_option("--out", diag_opts.out, "output CSV path")->required();
    diag_cmd->add_option("--json", diag_opts.json_out, "JSON report (single config only)");
    diag_cmd->callback([&] { run_diagnose(diag_opts); });

    SearchOpts search_opts;
    CLI::App* search_cmd = app.add_subcommand("search", "Two-stage (alpha,beta,gamma) filtering");
    search_cmd->add_option("--in", search_opts.in, "split directory")->required();
    search_cmd->add_option("--grid", search_opts.grid, "grid name (default)");
    search_cmd->add_option("--alpha-set", search_opts.alpha_set, "comma-separated alpha values");
    search_cmd->add_option("--beta-set", search_opts.beta_set, "comma-separated beta values");
    search_cmd->add_option("--gamma-set", search_opts.gamma_set, "comma-separated gamma values");
    search_cmd->add_option("--r", search_opts.r, "stage-1 survivor percentage");
    search_cmd->add_option("--k", search_opts.k, "configs kept after stage 2");
    search_cmd->add_option("--eval-pairs", search_opts.eval_pairs, "eval pairs per metric");
    search_cmd->add_option("--negatives", search_opts.negatives,
                           "negative targets per eval pair");
    search_cmd->add_option("--rep-samples", search_opts.rep_samples,
                           "sampled representation size (0 = MT pair count)");
    search_cmd->add_option("--epsilon", search_opts.epsilon, "KL smoothing");
    search_cmd->add_option("--seed", search_opts.seed, "rng seed");
    search_cmd->add_option("--out", search_opts.out, "output CSV path")->required();
    search_cmd->callback([&] { run_search(search_opts); });

    TheoryOpts theory_opts;
    CLI::App* theory_cmd = app.add_subcommand("theory", "Bias/variance experiments on synthetic "
                                                        "position models");
    theory_cmd->add_option("--profile", theory_opts.profile,
                           "uniform-identical|linear-recency|random-dirichlet")
        ->required();
    theory_cmd->add_option("--strength", theory_opts.strength, "profile strength");
    theory_cmd->add_option("--n", theory_opts.n, "training sequence length");
    theory_cmd->add_option("--items", theory_opts.items, "item universe size");
    theory_cmd->add_option("--m", theory_opts.m, "users per trial");
    theory_cmd->add_option("--trials", theory_opts.trials, "trial count");
    theory_cmd->add_option("--beta", theory_opts.beta, "position exponent (inf allowed)");
    theory_cmd->add_option("--convention", theory_opts.convention,
                           "theorem|sampling position weights");
    theory_cmd->add_option("--seed", theory_opts.seed, "rng seed");
    theory_cmd->add_option("--out", theory_opts.out, "output CSV path")->required();
    theory_cmd->add_option("--summary", theory_opts.summary_out, "summary JSON path");
    theory_cmd->callback([&] { run_theory(theory_opts); });

    EvalOpts eval_opts;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Reference-model leave-one-out evaluation");
    eval_cmd->add_option("--split", eval_opts.split, "split directory")->required();
    eval_cmd->add_option("--pairs", eval_opts.pairs, "training pair file")->required();
    eval_cmd->add_option("--model", eval_opts.model, "popularity|markov1|knn")->required();
    eval_cmd->add_option("--k", eval_opts.k, "cutoff list (default 5,10)");
    eval_cmd->add_option("--neg", eval_opts.neg, "sampled negatives (0 = full ranking)");
    eval_cmd->add_option("--stage", eval_opts.stage, "val|test (default test)");
    eval_cmd->add_option("--neighbors", eval_opts.neighbors, "knn neighbor count");
    eval_cmd->add_option("--group-by-popularity", eval_opts.groups,
                         "per-group report over this many popularity groups (0 = off)");
    eval_cmd->add_option("--seed", eval_opts.seed, "rng seed");
    eval_cmd->add_option("--out", eval_opts.out, "output JSON path");
    eval_cmd->callback([&] { run_eval(eval_opts); });

    AugmentOpts aug_opts;
    CLI::App* aug_cmd = app.add_subcommand("augment", "Perturb pair inputs with a sequence "
                                                      "operator");
    aug_cmd->add_option("--in", aug_opts.in, "input pair file")->required();
    aug_cmd->add_option("--split", aug_opts.split, "split directory (vocabulary source)")
        ->required();
    aug_cmd->add_option("--op", aug_opts.op, "insert|delete|replace|reorder|sample")->required();
    aug_cmd->add_option("--delta", aug_opts.delta, "reorder window (0 = max(2, |x|/5))");
    aug_cmd->add_option("--omega", aug_opts.omega, "sample keep probability");
    aug_cmd->add_option("--seed", aug_opts.seed, "rng seed");
    aug_cmd->add_option("--out", aug_opts.out, "output pair file")->required();
    aug_cmd->callback([&] { run_augment(aug_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
