// Python bindings for the core operations: splitting, pair generation,
// diagnostics, config search, the synthetic-population experiments and the
// reference-model evaluator. Items and users are exposed as dense indices;
// configs are (alpha, beta, gamma) float triples where +/-inf selects the
// degenerate point-mass behavior.

#include <cmath>
#include <tuple>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "genpas/corpus.hpp"
#include "genpas/diagnostics.hpp"
#include "genpas/editdist.hpp"
#include "genpas/evaluator.hpp"
#include "genpas/io.hpp"
#include "genpas/sampler.hpp"
#include "genpas/search.hpp"
#include "genpas/seqaug.hpp"
#include "genpas/theorylab.hpp"

namespace py = pybind11;

namespace {

using namespace genpas;

ExtExponent exponent_from(double v) {
    if (std::isinf(v)) return v > 0 ? ExtExponent::pos_inf() : ExtExponent::neg_inf();
    return ExtExponent::finite(v);
}

AugConfig config_from(const std::tuple<double, double, double>& t) {
    return AugConfig{exponent_from(std::get<0>(t)), exponent_from(std::get<1>(t)),
                     exponent_from(std::get<2>(t))};
}

std::vector<ExtExponent> exponents_from(const std::vector<double>& values) {
    std::vector<ExtExponent> out;
    for (double v : values) out.push_back(exponent_from(v));
    return out;
}

py::dict pair_to_dict(const TrainingPair& p) {
    py::dict d;
    d["user"] = p.user_index;
    d["k"] = p.k;
    d["j"] = p.j;
    d["input"] = p.input;
    d["target"] = p.target;
    d["weight"] = p.weight;
    return d;
}

py::list pairs_to_list(const std::vector<TrainingPair>& pairs) {
    py::list out;
    for (const TrainingPair& p : pairs) out.append(pair_to_dict(p));
    return out;
}

std::vector<TrainingPair> pairs_from_list(const py::iterable& rows) {
    std::vector<TrainingPair> out;
    for (const py::handle& row : rows) {
        const py::dict d = py::cast<py::dict>(row);
        TrainingPair p;
        p.user_index = py::cast<std::uint32_t>(d["user"]);
        p.k = py::cast<std::uint32_t>(d["k"]);
        p.j = py::cast<std::uint32_t>(d["j"]);
        p.input = py::cast<std::vector<ItemId>>(d["input"]);
        p.target = py::cast<ItemId>(d["target"]);
        p.weight = py::cast<double>(d["weight"]);
        out.push_back(std::move(p));
    }
    return out;
}

py::dict diag_to_dict(const DiagReport& r) {
    py::dict d;
    d["config"] = r.config.str();
    d["kl"] = r.kl;
    d["alignment"] = r.alignment;
    d["discrimination"] = r.discrimination;
    d["ad_ratio"] = r.ad_ratio;
    d["coverage"] = r.coverage;
    d["seed"] = r.seed;
    return d;
}

py::dict eval_to_dict(const EvalResult& r) {
    py::dict metrics;
    for (const auto& [K, m] : r.metrics) {
        py::dict entry;
        entry["ndcg"] = m.first;
        entry["recall"] = m.second;
        metrics[py::int_(K)] = entry;
    }
    py::dict d;
    d["n_eval"] = r.n_eval;
    d["metrics"] = metrics;
    return d;
}

}  // namespace

PYBIND11_MODULE(genpas, m) {
    m.doc() = "Sequential-recommendation data augmentation toolkit";

    // Translators run newest-first: the base must be registered before the
    // derived class or it would shadow it.
    py::register_exception<Error>(m, "GenpasError", PyExc_RuntimeError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

    py::class_<SplitCorpus>(m, "Split")
        .def_property_readonly("n_users", &SplitCorpus::n_users)
        .def_property_readonly("n_items",
                               [](const SplitCorpus& s) { return s.vocabulary.size(); })
        .def_property_readonly("users", [](const SplitCorpus& s) { return s.users; })
        .def_property_readonly("dropped_users",
                               [](const SplitCorpus& s) { return s.dropped_users; })
        .def("train", [](const SplitCorpus& s, std::uint32_t u) { return s.train.at(u).items; })
        .def("val_target", [](const SplitCorpus& s, std::uint32_t u) { return s.val_target.at(u); })
        .def("test_target",
             [](const SplitCorpus& s, std::uint32_t u) { return s.test_target.at(u); })
        .def("item_name", [](const SplitCorpus& s, ItemId i) { return s.vocabulary.name(i); });

    m.def(
        "split_log",
        [](const std::string& path, const std::string& format, bool dedup, std::uint32_t min_len) {
            const auto log = load_interactions(path, parse_log_format(format));
            return leave_one_out_split(build_sequences(log, dedup), min_len);
        },
        py::arg("path"), py::arg("format") = "tsv", py::arg("dedup") = true,
        py::arg("min_len") = 4);
    m.def("load_split", &load_split, py::arg("dir"));
    m.def("save_split", &save_split, py::arg("split"), py::arg("dir"));

    m.def(
        "enumerate_pairs",
        [](const SplitCorpus& split, const std::string& strategy) {
            return pairs_to_list(enumerate_strategy(split.train, parse_strategy(strategy)));
        },
        py::arg("split"), py::arg("strategy"));
    m.def(
        "sample_pairs",
        [](const SplitCorpus& split, const std::tuple<double, double, double>& config,
           std::uint64_t count, std::uint64_t seed) {
            Rng rng(derive_seed(seed, 0));
            if (count == 0) count = default_epoch_size(split.train);
            return pairs_to_list(sample_epoch(config_from(config), split.train, count, rng));
        },
        py::arg("split"), py::arg("config"), py::arg("count") = 0, py::arg("seed") = 0);
    m.def(
        "joint_probability",
        [](const SplitCorpus& split, const std::tuple<double, double, double>& config,
           std::uint32_t u, std::uint32_t k, std::uint32_t j) {
            return joint_probability(config_from(config), split.train, u, k, j);
        },
        py::arg("split"), py::arg("config"), py::arg("u"), py::arg("k"), py::arg("j"));
    m.def(
        "target_distribution",
        [](const SplitCorpus& split, const std::tuple<double, double, double>& config) {
            py::dict out;
            for (const auto& [item, prob] : exact_target_distribution(config_from(config),
                                                                      split.train)
                                                .probs)
                out[py::int_(item)] = prob;
            return out;
        },
        py::arg("split"), py::arg("config"));

    m.def(
        "similarity",
        [](const std::vector<ItemId>& a, const std::vector<ItemId>& b) { return similarity(a, b); },
        py::arg("a"), py::arg("b"));

    m.def(
        "diagnose",
        [](const SplitCorpus& split, const std::tuple<double, double, double>& config,
           const std::string& stage, std::uint32_t eval_pairs, std::uint32_t negatives,
           std::uint64_t rep_samples, double epsilon, std::uint64_t seed) {
            const DiagBudgets budgets{eval_pairs, negatives, rep_samples};
            return diag_to_dict(diagnostics_report(config_from(config), split, budgets, epsilon,
                                                   seed, parse_stage(stage)));
        },
        py::arg("split"), py::arg("config"), py::arg("stage") = "val",
        py::arg("eval_pairs") = 500, py::arg("negatives") = 100, py::arg("rep_samples") = 0,
        py::arg("epsilon") = 1e-9, py::arg("seed") = 0);

    m.def(
        "search",
        [](const SplitCorpus& split, const std::vector<double>& alphas,
           const std::vector<double>& betas, const std::vector<double>& gammas, double r_pct,
           std::uint32_t top_k, std::uint32_t eval_pairs, std::uint32_t negatives,
           std::uint64_t rep_samples, double epsilon, std::uint64_t seed) {
            const DiagBudgets budgets{eval_pairs, negatives, rep_samples};
            const SearchReport report =
                filter_configs(make_grid(exponents_from(alphas), exponents_from(betas),
                                         exponents_from(gammas)),
                               split, r_pct, top_k, budgets, epsilon, seed);
            py::list rows;
            for (const SearchRow& row : report.rows) {
                py::dict d;
                d["config"] = row.config.str();
                d["kl"] = row.kl;
                d["alignment"] = row.alignment;
                d["discrimination"] = row.discrimination;
                d["score"] = row.score;
                d["kept_stage1"] = row.kept_stage1;
                d["kept_stage2"] = row.kept_stage2;
                rows.append(d);
            }
            py::dict out;
            out["rows"] = rows;
            out["stage1_count"] = report.stage1_count;
            out["top_k"] = report.top_k;
            return out;
        },
        py::arg("split"), py::arg("alphas"), py::arg("betas"), py::arg("gammas"),
        py::arg("r_pct") = 20.0, py::arg("top_k") = 10, py::arg("eval_pairs") = 500,
        py::arg("negatives") = 100, py::arg("rep_samples") = 0, py::arg("epsilon") = 1e-9,
        py::arg("seed") = 0);

    m.def(
        "theory",
        [](const std::string& profile, double strength, std::uint32_t n, std::uint32_t items,
           std::uint32_t m_users, std::uint32_t trials, double beta,
           const std::string& convention, std::uint64_t seed) {
            Rng model_rng(derive_seed(seed, ~0ull));
            const PositionModel model =
                make_position_model(n, items, BiasProfile{parse_bias_kind(profile), strength},
                                    model_rng);
            const TvSummary summary = tv_experiment(exponent_from(beta), model, m_users, trials,
                                                    seed, parse_convention(convention));
            py::list trials_out;
            for (const TvTrial& t : summary.trials) {
                py::dict d;
                d["tv_empirical"] = t.tv_empirical;
                d["tv_expected"] = t.tv_expected;
                trials_out.append(d);
            }
            py::dict out;
            out["trials"] = trials_out;
            out["mean_empirical"] = summary.mean_empirical;
            out["std_empirical"] = summary.std_empirical;
            out["tv_expected"] = summary.tv_expected;
            return out;
        },
        py::arg("profile"), py::arg("strength") = 0.0, py::arg("n") = 10, py::arg("items") = 20,
        py::arg("m") = 1000, py::arg("trials") = 50, py::arg("beta") = 0.0,
        py::arg("convention") = "theorem", py::arg("seed") = 0);

    m.def(
        "evaluate",
        [](const SplitCorpus& split, const py::iterable& pairs, const std::string& model,
           const std::vector<std::uint32_t>& ks, std::uint32_t neg, const std::string& stage,
           std::uint32_t neighbors, std::uint32_t groups, std::uint64_t seed) {
            const ReferenceModel ref =
                train_reference_model(parse_model_kind(model), pairs_from_list(pairs), neighbors);
            if (groups > 0) {
                const GroupedEvalResult r = evaluate_grouped(ref, split, parse_stage(stage), ks,
                                                             neg, seed, groups);
                py::dict out;
                out["overall"] = eval_to_dict(r.overall);
                py::list group_list;
                for (const EvalResult& g : r.groups) group_list.append(eval_to_dict(g));
                out["groups"] = group_list;
                return py::object(out);
            }
            return py::object(
                eval_to_dict(evaluate(ref, split, parse_stage(stage), ks, neg, seed)));
        },
        py::arg("split"), py::arg("pairs"), py::arg("model"),
        py::arg("ks") = std::vector<std::uint32_t>{5, 10}, py::arg("neg") = 0,
        py::arg("stage") = "test", py::arg("neighbors") = 10, py::arg("groups") = 0,
        py::arg("seed") = 0);

    m.def(
        "augment_pairs",
        [](const py::iterable& pairs, const std::string& op, std::uint32_t universe,
           std::uint32_t delta, double omega, std::uint64_t seed) {
            std::vector<TrainingPair> out = pairs_from_list(pairs);
            const SeqAugSpec spec{parse_seqaug_kind(op), delta, omega};
            Rng rng(derive_seed(seed, 0));
            std::uint64_t unchanged = 0;
            for (TrainingPair& p : out)
                p.input = apply_seqaug(spec, p.input, universe, rng, &unchanged);
            return py::make_tuple(pairs_to_list(out), unchanged);
        },
        py::arg("pairs"), py::arg("op"), py::arg("universe"), py::arg("delta") = 0,
        py::arg("omega") = 0.9, py::arg("seed") = 0);
}
