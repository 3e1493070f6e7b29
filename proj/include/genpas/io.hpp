#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "genpas/corpus.hpp"
#include "genpas/diagnostics.hpp"
#include "genpas/evaluator.hpp"
#include "genpas/search.hpp"
#include "genpas/theorylab.hpp"

namespace genpas {

/** Writes content to path, replacing any existing file. */
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

/** FNV-1a digest of a file's bytes, rendered as "fnv64:<hex>". */
std::string file_digest(const std::string& path);

/**
 * Split persistence: <dir>/split.jsonl (one user per line with external ids)
 * and <dir>/vocab.jsonl (item -> dense index).
 */
void save_split(const SplitCorpus& split, const std::string& dir);
SplitCorpus load_split(const std::string& dir);

/** Pair files: {"user","input","target","k","j","weight"} per line, external ids. */
void save_pairs(const std::vector<TrainingPair>& pairs, const SplitCorpus& split,
                const std::string& path);
std::vector<TrainingPair> load_pairs(const std::string& path, const SplitCorpus& split);

std::string stats_json(const StatsReport& stats);
std::string split_summary_json(const SplitCorpus& split);

/** CSV rows: config,kl,alignment,discrimination,ad_ratio,coverage,seed. */
std::string diag_csv(const std::vector<DiagReport>& reports);
std::string diag_json(const DiagReport& report);

std::string search_csv(const SearchReport& report);

/** CSV rows: trial,tv_empirical,tv_expected. */
std::string theory_csv(const TvSummary& summary);
std::string theory_summary_json(const TvSummary& summary);

std::string eval_json(const EvalResult& result);
std::string grouped_eval_json(const GroupedEvalResult& result);

/**
 * Run manifest written beside outputs: command, flags, seed, input digests and
 * output names. Re-running the command described by a manifest reproduces the
 * outputs byte for byte.
 */
void write_manifest(const std::string& path, const std::string& command,
                    const std::map<std::string, std::string>& flags, std::uint64_t seed,
                    const std::vector<std::string>& input_paths,
                    const std::vector<std::string>& output_names);

}  // namespace genpas
