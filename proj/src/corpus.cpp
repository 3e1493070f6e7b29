#include "genpas/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace genpas {

namespace {

bool parse_int64(const std::string& text, std::int64_t& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno != 0 || end == nullptr || *end != '\0') return false;
    out = v;
    return true;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

Interaction parse_jsonl_record(const std::string& line, std::size_t line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error("line " + std::to_string(line_no) + ": malformed JSON (" + e.what() + ")");
    }
    for (const char* key : {"user", "item", "timestamp"})
        if (!j.contains(key))
            throw Error("line " + std::to_string(line_no) + ": missing field '" + key + "'");
    Interaction rec;
    if (!j["user"].is_string() || !j["item"].is_string())
        throw Error("line " + std::to_string(line_no) + ": user and item must be strings");
    rec.user = j["user"].get<std::string>();
    rec.item = j["item"].get<std::string>();
    if (!j["timestamp"].is_number_integer())
        throw Error("line " + std::to_string(line_no) + ": field 'timestamp' must be an integer");
    rec.timestamp = j["timestamp"].get<std::int64_t>();
    if (rec.user.empty()) throw Error("line " + std::to_string(line_no) + ": empty field 'user'");
    if (rec.item.empty()) throw Error("line " + std::to_string(line_no) + ": empty field 'item'");
    return rec;
}

}  // namespace

ItemId Vocabulary::intern(const std::string& external) {
    auto it = forward.find(external);
    if (it != forward.end()) return it->second;
    ItemId idx = static_cast<ItemId>(reverse.size());
    forward.emplace(external, idx);
    reverse.push_back(external);
    return idx;
}

ItemId Vocabulary::index_of(const std::string& external) const {
    auto it = forward.find(external);
    if (it == forward.end()) throw Error("unknown item id '" + external + "'");
    return it->second;
}

const std::string& Vocabulary::name(ItemId index) const {
    if (index >= reverse.size()) throw Error("item index out of range");
    return reverse[index];
}

LogFormat parse_log_format(const std::string& name) {
    if (name == "tsv") return LogFormat::Tsv;
    if (name == "csv") return LogFormat::Csv;
    if (name == "jsonl") return LogFormat::Jsonl;
    throw UsageError("unknown format '" + name + "' (expected tsv, csv or jsonl)");
}

std::vector<Interaction> load_interactions(const std::string& path, LogFormat format) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::vector<Interaction> out;
    std::string line;
    std::size_t line_no = 0;
    const char sep = format == LogFormat::Csv ? ',' : '\t';
    static const char* field_names[3] = {"user", "item", "timestamp"};
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (format == LogFormat::Jsonl) {
            out.push_back(parse_jsonl_record(line, line_no));
            continue;
        }
        auto fields = split_fields(line, sep);
        if (fields.size() != 3) {
            if (fields.size() < 3)
                throw Error("line " + std::to_string(line_no) + ": missing field '" +
                            field_names[fields.size()] + "'");
            throw Error("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                        std::to_string(fields.size()));
        }
        Interaction rec;
        rec.user = fields[0];
        rec.item = fields[1];
        if (!parse_int64(fields[2], rec.timestamp)) {
            // A non-numeric timestamp on the first line is a header row.
            if (line_no == 1) continue;
            throw Error("line " + std::to_string(line_no) + ": timestamp '" + fields[2] +
                        "' is not an integer");
        }
        if (rec.user.empty()) throw Error("line " + std::to_string(line_no) + ": empty field 'user'");
        if (rec.item.empty()) throw Error("line " + std::to_string(line_no) + ": empty field 'item'");
        out.push_back(std::move(rec));
    }
    return out;
}

SequenceCorpus build_sequences(const std::vector<Interaction>& log, bool dedup_consecutive) {
    SequenceCorpus corpus;
    std::unordered_map<std::string, std::uint32_t> user_index;
    // (timestamp, file order, item) per user; stable order by construction.
    std::vector<std::vector<std::pair<std::int64_t, ItemId>>> per_user;

    for (const auto& rec : log) {
        auto [it, inserted] = user_index.emplace(rec.user, static_cast<std::uint32_t>(corpus.users.size()));
        if (inserted) {
            corpus.users.push_back(rec.user);
            per_user.emplace_back();
        }
        ItemId item = corpus.vocabulary.intern(rec.item);
        per_user[it->second].emplace_back(rec.timestamp, item);
    }

    corpus.seqs.reserve(per_user.size());
    for (std::uint32_t u = 0; u < per_user.size(); ++u) {
        auto& events = per_user[u];
        std::stable_sort(events.begin(), events.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        UserSequence seq;
        seq.user_index = u;
        seq.items.reserve(events.size());
        for (const auto& [ts, item] : events) {
            if (dedup_consecutive && !seq.items.empty() && seq.items.back() == item) continue;
            seq.items.push_back(item);
        }
        corpus.seqs.push_back(std::move(seq));
    }
    return corpus;
}

SplitCorpus leave_one_out_split(const SequenceCorpus& corpus, std::uint32_t min_len) {
    if (min_len < 3) throw UsageError("min_len must be at least 3");
    SplitCorpus split;
    split.vocabulary = corpus.vocabulary;
    for (const auto& seq : corpus.seqs) {
        if (seq.items.size() < min_len) {
            ++split.dropped_users;
            split.dropped_interactions += seq.items.size();
            continue;
        }
        UserSequence train;
        train.user_index = static_cast<std::uint32_t>(split.train.size());
        train.items.assign(seq.items.begin(), seq.items.end() - 2);
        split.train.push_back(std::move(train));
        split.val_target.push_back(seq.items[seq.items.size() - 2]);
        split.test_target.push_back(seq.items.back());
        split.users.push_back(corpus.users[seq.user_index]);
    }
    if (split.train.empty()) throw Error("empty split: every user is shorter than min_len");
    return split;
}

StatsReport corpus_stats(const std::vector<UserSequence>& seqs) {
    if (seqs.empty()) throw Error("corpus_stats: empty corpus");
    StatsReport r;
    r.n_users = seqs.size();
    std::set<ItemId> items;
    for (const auto& seq : seqs) {
        r.n_interactions += seq.items.size();
        items.insert(seq.items.begin(), seq.items.end());
    }
    r.n_items = items.size();
    r.avg_length = static_cast<double>(r.n_interactions) / static_cast<double>(r.n_users);
    r.sparsity = 1.0 - static_cast<double>(r.n_interactions) /
                           (static_cast<double>(r.n_users) * static_cast<double>(r.n_items));
    return r;
}

}  // namespace genpas
