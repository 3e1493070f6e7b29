#include "genpas/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace genpas {
namespace {

// JSON string escaping for externally supplied ids (users, items, paths).
std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

std::string quoted(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string item_array(const std::vector<ItemId>& items, const Vocabulary& vocab) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += quoted(vocab.name(items[i]));
    }
    out += "]";
    return out;
}

// Finite metric if present, JSON null for the NaN placeholder.
std::string number_or_null(double v) { return std::isnan(v) ? "null" : format_double(v); }

// Empty CSV cell for the NaN placeholder.
std::string number_or_empty(double v) { return std::isnan(v) ? "" : format_double(v); }

nlohmann::json parse_line(const std::string& line, const std::string& path, std::size_t line_no) {
    try {
        return nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(path + " line " + std::to_string(line_no) + ": malformed JSON (" + e.what() +
                    ")");
    }
}

const nlohmann::json& field(const nlohmann::json& rec, const char* key, const std::string& path,
                            std::size_t line_no) {
    if (!rec.contains(key))
        throw Error(path + " line " + std::to_string(line_no) + ": missing field '" + key + "'");
    return rec.at(key);
}

std::string metrics_json(const EvalResult& result, const std::string& indent) {
    std::string out = "{\n";
    out += indent + "  \"n_eval\": " + std::to_string(result.n_eval) + ",\n";
    out += indent + "  \"metrics\": {";
    bool first = true;
    for (const auto& [K, m] : result.metrics) {
        if (!first) out += ",";
        first = false;
        out += "\n" + indent + "    \"" + std::to_string(K) + "\": {\"ndcg\": " +
               format_double(m.first) + ", \"recall\": " + format_double(m.second) + "}";
    }
    out += "\n" + indent + "  }\n" + indent + "}";
    return out;
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed to write '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string file_digest(const std::string& path) {
    const std::string bytes = read_text_file(path);
    return "fnv64:" + to_hex(fnv1a64(bytes.data(), bytes.size()));
}

void save_split(const SplitCorpus& split, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::string users;
    for (std::size_t u = 0; u < split.n_users(); ++u) {
        users += "{\"user\":" + quoted(split.users[u]) +
                 ",\"train\":" + item_array(split.train[u].items, split.vocabulary) +
                 ",\"val\":" + quoted(split.vocabulary.name(split.val_target[u])) +
                 ",\"test\":" + quoted(split.vocabulary.name(split.test_target[u])) + "}\n";
    }
    write_text_file((std::filesystem::path(dir) / "split.jsonl").string(), users);

    std::string vocab;
    for (std::size_t i = 0; i < split.vocabulary.size(); ++i) {
        vocab += "{\"item\":" + quoted(split.vocabulary.reverse[i]) +
                 ",\"index\":" + std::to_string(i) + "}\n";
    }
    write_text_file((std::filesystem::path(dir) / "vocab.jsonl").string(), vocab);
}

SplitCorpus load_split(const std::string& dir) {
    SplitCorpus split;

    const std::string vocab_path = (std::filesystem::path(dir) / "vocab.jsonl").string();
    std::istringstream vocab_in(read_text_file(vocab_path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(vocab_in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const nlohmann::json rec = parse_line(line, vocab_path, line_no);
        const std::string item = field(rec, "item", vocab_path, line_no).get<std::string>();
        const std::uint64_t index = field(rec, "index", vocab_path, line_no).get<std::uint64_t>();
        if (index != split.vocabulary.size())
            throw Error(vocab_path + " line " + std::to_string(line_no) +
                        ": indices must be dense and ascending");
        if (split.vocabulary.intern(item) != index)
            throw Error(vocab_path + " line " + std::to_string(line_no) + ": duplicate item '" +
                        item + "'");
    }
    if (split.vocabulary.size() == 0) throw Error(vocab_path + ": empty vocabulary");

    const std::string split_path = (std::filesystem::path(dir) / "split.jsonl").string();
    std::istringstream split_in(read_text_file(split_path));
    line_no = 0;
    while (std::getline(split_in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const nlohmann::json rec = parse_line(line, split_path, line_no);
        UserSequence seq;
        seq.user_index = static_cast<std::uint32_t>(split.train.size());
        for (const auto& item : field(rec, "train", split_path, line_no))
            seq.items.push_back(split.vocabulary.index_of(item.get<std::string>()));
        if (seq.items.size() < 2)
            throw Error(split_path + " line " + std::to_string(line_no) +
                        ": training prefix must hold at least 2 items");
        split.users.push_back(field(rec, "user", split_path, line_no).get<std::string>());
        split.val_target.push_back(
            split.vocabulary.index_of(field(rec, "val", split_path, line_no).get<std::string>()));
        split.test_target.push_back(
            split.vocabulary.index_of(field(rec, "test", split_path, line_no).get<std::string>()));
        split.train.push_back(std::move(seq));
    }
    if (split.train.empty()) throw Error(split_path + ": no users");
    return split;
}

void save_pairs(const std::vector<TrainingPair>& pairs, const SplitCorpus& split,
                const std::string& path) {
    std::string out;
    for (const TrainingPair& p : pairs) {
        if (p.user_index >= split.n_users()) throw Error("save_pairs: user index out of range");
        out += "{\"user\":" + quoted(split.users[p.user_index]) +
               ",\"input\":" + item_array(p.input, split.vocabulary) +
               ",\"target\":" + quoted(split.vocabulary.name(p.target)) +
               ",\"k\":" + std::to_string(p.k) + ",\"j\":" + std::to_string(p.j) +
               ",\"weight\":" + format_double(p.weight) + "}\n";
    }
    write_text_file(path, out);
}

std::vector<TrainingPair> load_pairs(const std::string& path, const SplitCorpus& split) {
    std::unordered_map<std::string, std::uint32_t> user_index;
    for (std::size_t u = 0; u < split.n_users(); ++u)
        user_index.emplace(split.users[u], static_cast<std::uint32_t>(u));

    std::vector<TrainingPair> pairs;
    std::istringstream in(read_text_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const nlohmann::json rec = parse_line(line, path, line_no);
        TrainingPair p;
        const std::string user = field(rec, "user", path, line_no).get<std::string>();
        const auto it = user_index.find(user);
        if (it == user_index.end())
            throw Error(path + " line " + std::to_string(line_no) + ": unknown user '" + user +
                        "'");
        p.user_index = it->second;
        for (const auto& item : field(rec, "input", path, line_no))
            p.input.push_back(split.vocabulary.index_of(item.get<std::string>()));
        p.target =
            split.vocabulary.index_of(field(rec, "target", path, line_no).get<std::string>());
        p.k = field(rec, "k", path, line_no).get<std::uint32_t>();
        p.j = field(rec, "j", path, line_no).get<std::uint32_t>();
        p.weight = field(rec, "weight", path, line_no).get<double>();
        if (p.input.empty())
            throw Error(path + " line " + std::to_string(line_no) + ": empty input");
        pairs.push_back(std::move(p));
    }
    if (pairs.empty()) throw Error(path + ": no pairs");
    return pairs;
}

std::string stats_json(const StatsReport& stats) {
    std::string out = "{\n";
    out += "  \"users\": " + std::to_string(stats.n_users) + ",\n";
    out += "  \"items\": " + std::to_string(stats.n_items) + ",\n";
    out += "  \"interactions\": " + std::to_string(stats.n_interactions) + ",\n";
    out += "  \"avg_length\": " + format_double(stats.avg_length) + ",\n";
    out += "  \"sparsity\": " + format_double(stats.sparsity) + "\n";
    out += "}\n";
    return out;
}

std::string split_summary_json(const SplitCorpus& split) {
    std::string out = "{\n";
    out += "  \"users\": " + std::to_string(split.n_users()) + ",\n";
    out += "  \"items\": " + std::to_string(split.vocabulary.size()) + ",\n";
    out += "  \"dropped_users\": " + std::to_string(split.dropped_users) + ",\n";
    out += "  \"dropped_interactions\": " + std::to_string(split.dropped_interactions) + "\n";
    out += "}\n";
    return out;
}

std::string diag_csv(const std::vector<DiagReport>& reports) {
    std::string out = "config,kl,alignment,discrimination,ad_ratio,coverage,seed\n";
    for (const DiagReport& r : reports) {
        out += "\"" + r.config.str() + "\"," + format_double(r.kl) + "," +
               format_double(r.alignment) + "," + format_double(r.discrimination) + "," +
               number_or_empty(r.ad_ratio) + "," + format_double(r.coverage) + "," +
               std::to_string(r.seed) + "\n";
    }
    return out;
}

std::string diag_json(const DiagReport& r) {
    std::string out = "{\n";
    out += "  \"config\": " + quoted(r.config.str()) + ",\n";
    out += "  \"kl\": " + format_double(r.kl) + ",\n";
    out += "  \"alignment\": " + format_double(r.alignment) + ",\n";
    out += "  \"discrimination\": " + format_double(r.discrimination) + ",\n";
    out += "  \"ad_ratio\": " + number_or_null(r.ad_ratio) + ",\n";
    out += "  \"coverage\": " + format_double(r.coverage) + ",\n";
    out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
    out += "  \"budgets\": {\"eval_pairs\": " + std::to_string(r.budgets.eval_pairs) +
           ", \"negatives\": " + std::to_string(r.budgets.negatives) +
           ", \"rep_samples\": " + std::to_string(r.budgets.rep_samples) + "},\n";
    out += "  \"epsilon\": " + format_double(r.epsilon) + "\n";
    out += "}\n";
    return out;
}

std::string search_csv(const SearchReport& report) {
    std::string out =
        "config,kl,alignment,discrimination,rank_alignment,rank_discrimination,score,"
        "kept_stage1,kept_stage2\n";
    for (const SearchRow& r : report.rows) {
        out += "\"" + r.config.str() + "\"," + format_double(r.kl) + "," +
               number_or_empty(r.alignment) + "," + number_or_empty(r.discrimination) + ",";
        out += r.kept_stage1 ? std::to_string(r.rank_a) : "";
        out += ",";
        out += r.kept_stage1 ? std::to_string(r.rank_d) : "";
        out += ",";
        out += r.kept_stage1 ? std::to_string(r.score) : "";
        out += ",";
        out += std::string(r.kept_stage1 ? "1" : "0") + "," + (r.kept_stage2 ? "1" : "0") + "\n";
    }
    return out;
}

std::string theory_csv(const TvSummary& summary) {
    std::string out = "trial,tv_empirical,tv_expected\n";
    for (std::size_t t = 0; t < summary.trials.size(); ++t) {
        out += std::to_string(t) + "," + format_double(summary.trials[t].tv_empirical) + "," +
               format_double(summary.trials[t].tv_expected) + "\n";
    }
    return out;
}

std::string theory_summary_json(const TvSummary& summary) {
    std::string out = "{\n";
    out += "  \"trials\": " + std::to_string(summary.trials.size()) + ",\n";
    out += "  \"mean_empirical\": " + format_double(summary.mean_empirical) + ",\n";
    out += "  \"std_empirical\": " + format_double(summary.std_empirical) + ",\n";
    out += "  \"tv_expected\": " + format_double(summary.tv_expected) + "\n";
    out += "}\n";
    return out;
}

std::string eval_json(const EvalResult& result) { return metrics_json(result, "") + "\n"; }

std::string grouped_eval_json(const GroupedEvalResult& result) {
    std::string out = "{\n  \"overall\": " + metrics_json(result.overall, "  ") + ",\n";
    out += "  \"groups\": [";
    for (std::size_t g = 0; g < result.groups.size(); ++g) {
        if (g) out += ",";
        out += "\n    " + metrics_json(result.groups[g], "    ");
    }
    out += "\n  ]\n}\n";
    return out;
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::map<std::string, std::string>& flags, std::uint64_t seed,
                    const std::vector<std::string>& input_paths,
                    const std::vector<std::string>& output_names) {
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["flags"] = nlohmann::json::object();
    for (const auto& [k, v] : flags) manifest["flags"][k] = v;
    manifest["inputs"] = nlohmann::json::object();
    for (const std::string& p : input_paths)
        manifest["inputs"][std::filesystem::path(p).filename().string()] = file_digest(p);
    manifest["outputs"] = output_names;
    manifest["seed"] = seed;
    write_text_file(path, manifest.dump(2) + "\n");
}

}  // namespace genpas
