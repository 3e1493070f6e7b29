#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "genpas/common.hpp"

namespace genpas {

/** One raw interaction record, kept in input-file order. */
struct Interaction {
    std::string user;
    std::string item;
    std::int64_t timestamp = 0;
};

/** Bijection between external item ids and dense indices (first-appearance order). */
struct Vocabulary {
    std::unordered_map<std::string, ItemId> forward;
    std::vector<std::string> reverse;

    ItemId intern(const std::string& external);
    ItemId index_of(const std::string& external) const;  // throws on unknown id
    const std::string& name(ItemId index) const;
    std::size_t size() const { return reverse.size(); }
};

/** One user's ordered item sequence (dense indices). */
struct UserSequence {
    std::uint32_t user_index = 0;
    std::vector<ItemId> items;
};

/** Sequences plus the tables mapping dense ids back to external ids. */
struct SequenceCorpus {
    std::vector<UserSequence> seqs;
    Vocabulary vocabulary;
    std::vector<std::string> users;  // dense user index -> external id
};

/** Leave-one-out split: per-user training prefix, validation and test targets. */
struct SplitCorpus {
    std::vector<UserSequence> train;       // user_index == position
    std::vector<ItemId> val_target;        // parallel to train
    std::vector<ItemId> test_target;       // parallel to train
    Vocabulary vocabulary;
    std::vector<std::string> users;        // parallel to train (external ids)
    std::uint64_t dropped_users = 0;       // raw sequences shorter than min_len
    std::uint64_t dropped_interactions = 0;

    std::size_t n_users() const { return train.size(); }
};

struct StatsReport {
    std::uint64_t n_users = 0;
    std::uint64_t n_items = 0;
    std::uint64_t n_interactions = 0;
    double avg_length = 0.0;
    double sparsity = 0.0;  // 1 - interactions / (users * items); may be negative with repeats
};

enum class LogFormat { Tsv, Csv, Jsonl };

LogFormat parse_log_format(const std::string& name);

/**
 * Reads interaction records in file order. TSV/CSV columns are
 * user, item, timestamp; a leading header row is skipped when its timestamp
 * column is not numeric. JSONL records carry the same three keys.
 */
std::vector<Interaction> load_interactions(const std::string& path, LogFormat format);

/**
 * Groups interactions per user (users ordered by first appearance), sorts each
 * user's items by timestamp with ties kept in file order, optionally collapses
 * runs of identical adjacent items, and interns items by first appearance.
 */
SequenceCorpus build_sequences(const std::vector<Interaction>& log, bool dedup_consecutive);

/**
 * Holds out the last item per user for test and the second-to-last for
 * validation. Users with fewer than min_len raw items are dropped and counted.
 * Retained users are re-indexed densely in original order.
 */
SplitCorpus leave_one_out_split(const SequenceCorpus& corpus, std::uint32_t min_len = 4);

/** Dataset statistics over raw sequences (before any split). */
StatsReport corpus_stats(const std::vector<UserSequence>& seqs);

}  // namespace genpas
