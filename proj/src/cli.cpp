#include "coclust/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "coclust/coclustering.hpp"
#include "coclust/corpus.hpp"
#include "coclust/errors.hpp"
#include "coclust/search_index.hpp"
#include "coclust/store.hpp"

namespace coclust::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kVersion = "1.0.0";

std::string fixed9(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", value);
    return buf;
}

struct Paths {
    fs::path dir;
    fs::path links() const { return dir / "links.db"; }
    fs::path matrix() const { return dir / "matrix.csv"; }
    fs::path vocabulary() const { return dir / "vocabulary.txt"; }
    fs::path documents() const { return dir / "documents.txt"; }
    fs::path doc_memberships() const { return dir / "doc_memberships.csv"; }
    fs::path word_memberships() const { return dir / "word_memberships.csv"; }
    fs::path trace() const { return dir / "trace.csv"; }
};

corpus::Stoplist stoplist_for(const std::string& stopword_file) {
    if (stopword_file.empty()) return corpus::default_stopwords();
    return corpus::load_stopwords_file(stopword_file);
}

search::SearchIndex load_index_or_empty(const Paths& paths, corpus::Stoplist stoplist) {
    if (!fs::exists(paths.links())) return search::SearchIndex(std::move(stoplist));
    return store::load_links(paths.links(), std::move(stoplist));
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create data directory " + dir.string() + ": " + ec.message());
}

nlohmann::json link_json(const search::QueryMatch& match) {
    return {
        {"id", match.link.id},
        {"name", match.link.name},
        {"description", match.link.description},
        {"keywords", match.link.keywords},
        {"visit_count", match.link.visit_count},
        {"registered_seq", match.link.registered_seq},
        {"last_visit_seq", match.link.last_visit_seq},
        {"match_level", match.match_level},
    };
}

void print_frame_line(std::ostream& out, const search::QueryMatch& match) {
    out << "[" << match.link.id << "] " << match.link.name << " | visits "
        << match.link.visit_count << " | match " << match.match_level << " | "
        << match.link.description << "\n";
}

void print_frames(std::ostream& out, const search::QueryFrameSet& frames) {
    for (std::size_t i = 0; i < search::kHighFrameCapacity; ++i) {
        out << "frame " << (i + 1) << ": ";
        if (i < frames.high_frames.size()) {
            print_frame_line(out, frames.high_frames[i]);
        } else {
            out << "(empty)\n";
        }
    }
    out << "frame 6 (zero priority):\n";
    if (frames.zero_frame.empty()) {
        out << "  (none)\n";
    } else {
        for (const auto& match : frames.zero_frame) {
            out << "  ";
            print_frame_line(out, match);
        }
    }
    out << "total rows: " << frames.total_matches << "\n";
}

int do_register(const Paths& paths, const std::string& name, const std::string& description,
                const std::string& keywords, std::ostream& out) {
    ensure_dir(paths.dir);
    search::SearchIndex index = load_index_or_empty(paths, corpus::default_stopwords());
    std::int64_t id = index.register_link(name, description, keywords);
    store::save_links(paths.links(), index);
    out << "registered link " << id << "\n";
    return 0;
}

int do_visit(const Paths& paths, std::int64_t id, std::ostream& out) {
    search::SearchIndex index = store::load_links(paths.links());
    std::uint64_t count = index.record_visit(id);
    store::save_links(paths.links(), index);
    out << "link " << id << " visits " << count << "\n";
    return 0;
}

int do_query(const Paths& paths, const std::string& text, const std::string& policy_name,
             std::size_t page, bool as_json, const std::string& stopword_file,
             std::ostream& out) {
    search::ReplacementPolicy policy = search::parse_policy(policy_name);
    search::SearchIndex index = load_index_or_empty(paths, stoplist_for(stopword_file));
    search::QueryFrameSet frames = index.query(text, policy, page);
    if (as_json) {
        nlohmann::json doc;
        doc["high_frames"] = nlohmann::json::array();
        for (const auto& match : frames.high_frames) doc["high_frames"].push_back(link_json(match));
        doc["zero_frame"] = nlohmann::json::array();
        for (const auto& match : frames.zero_frame) doc["zero_frame"].push_back(link_json(match));
        doc["total_matches"] = frames.total_matches;
        out << doc.dump(2) << "\n";
    } else {
        print_frames(out, frames);
    }
    return 0;
}

int do_ingest(const Paths& paths, const std::string& docs_dir, const std::string& weighting_name,
              const std::string& stopword_file, std::ostream& out) {
    if (!fs::is_directory(docs_dir)) {
        throw IoError("document directory " + docs_dir + " does not exist");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(docs_dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no documents found in " + docs_dir);

    corpus::Stoplist stoplist = stoplist_for(stopword_file);
    std::vector<corpus::Document> docs;
    std::vector<std::vector<std::string>> token_lists;
    docs.reserve(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        docs.push_back({static_cast<std::int64_t>(i), store::read_file(files[i])});
        token_lists.push_back(corpus::analyze(docs.back().text, stoplist));
    }
    corpus::Vocabulary vocab = corpus::Vocabulary::build(token_lists);
    if (vocab.size() == 0) {
        throw InvalidArgument("documents contain no usable terms after stop-word removal");
    }
    corpus::Weighting weighting =
        weighting_name == "tfidf" ? corpus::Weighting::TfIdf : corpus::Weighting::Tf;
    Matrix matrix = corpus::build_correlation_matrix(docs, vocab, weighting, stoplist);

    ensure_dir(paths.dir);
    store::save_matrix(paths.matrix(), matrix);
    std::string vocab_bytes;
    for (const auto& term : vocab.terms()) {
        vocab_bytes += term;
        vocab_bytes += '\n';
    }
    store::atomic_write(paths.vocabulary(), vocab_bytes);
    std::string doc_bytes;
    for (std::size_t i = 0; i < files.size(); ++i) {
        doc_bytes += std::to_string(i);
        doc_bytes += '\t';
        doc_bytes += files[i].filename().string();
        doc_bytes += '\n';
    }
    store::atomic_write(paths.documents(), doc_bytes);

    out << "ingested " << docs.size() << " documents, " << vocab.size() << " terms (weighting "
        << weighting_name << ")\n";
    out << "matrix: " << paths.matrix().string() << "\n";
    return 0;
}

int do_cluster(const Paths& paths, const fcc::FccStfConfig& config, bool as_json,
               std::ostream& out) {
    Matrix d = store::load_matrix(paths.matrix());
    fcc::CoClusterResult result = fcc::run_fcc_stf(config, d);

    store::save_matrix(paths.doc_memberships(), result.doc_memberships);
    store::save_matrix(paths.word_memberships(), result.word_memberships);
    store::atomic_write(paths.trace(), fcc::export_trace(result));

    const auto& last = result.trace.records.back();
    if (as_json) {
        nlohmann::json doc{
            {"clusters", config.cluster_count},
            {"documents", d.rows()},
            {"words", d.cols()},
            {"converged", result.converged},
            {"iterations_run", result.iterations_run},
            {"final_j", last.objective},
            {"max_delta_u", last.max_delta_u},
        };
        out << doc.dump(2) << "\n";
    } else {
        out << "clusters: " << config.cluster_count << "\n";
        out << "documents: " << d.rows() << "\n";
        out << "words: " << d.cols() << "\n";
        out << "converged: " << (result.converged ? "yes" : "no") << "\n";
        out << "iterations: " << result.iterations_run << "\n";
        out << "final J: " << fixed9(last.objective) << "\n";
        out << "max |dU|: " << fixed9(last.max_delta_u) << "\n";
    }
    return 0;
}

int do_trace(const Paths& paths, const std::string& out_path, std::ostream& out) {
    if (!fs::exists(paths.trace())) {
        throw IoError("no trace at " + paths.trace().string() + "; run cluster first");
    }
    std::string bytes = store::read_file(paths.trace());
    if (out_path.empty()) {
        out << bytes;
    } else {
        store::atomic_write(out_path, bytes);
        out << "trace written to " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fuzzy co-clustering and priority-frame keyword search"};
    app.name("coclust");
    app.set_version_flag("--version", std::string("coclust ") + std::string(kVersion));
    app.require_subcommand(1);

    std::string data_dir = "coclust_data";
    std::string stopword_file;

    auto add_data_dir = [&](CLI::App* sub) {
        sub->add_option("--data-dir", data_dir, "data directory")
            ->envname("COCLUST_DATA_DIR");
    };

    auto* reg = app.add_subcommand("register", "register a link");
    std::string name, description, keywords;
    reg->add_option("--name", name, "link name (max 45 chars)")->required();
    reg->add_option("--desc", description, "link description (max 450 chars)")->required();
    reg->add_option("--keywords", keywords, "comma-separated keywords (max 400 chars)")
        ->required();
    add_data_dir(reg);

    auto* visit = app.add_subcommand("visit", "record a visit to a link");
    std::int64_t visit_id = 0;
    visit->add_option("id", visit_id, "link id")->required();
    add_data_dir(visit);

    auto* query = app.add_subcommand("query", "search registered links");
    std::string query_text;
    std::string policy = "priority";
    std::size_t page = 0;
    bool query_json = false;
    query->add_option("text", query_text, "query text")->required();
    query->add_option("--policy", policy, "priority|fifo|lru (default priority)");
    query->add_option("--page", page, "high-priority frame page offset");
    query->add_flag("--json", query_json, "emit JSON");
    query->add_option("--stopwords", stopword_file, "stop-word list file");
    add_data_dir(query);

    auto* ingest = app.add_subcommand("ingest", "build the document-term matrix");
    std::string docs_dir;
    std::string weighting = "tf";
    ingest->add_option("--docs", docs_dir, "directory of text documents")->required();
    ingest->add_option("--weighting", weighting, "tf|tfidf (default tf)")
        ->check(CLI::IsMember({"tf", "tfidf"}));
    ingest->add_option("--stopwords", stopword_file, "stop-word list file");
    add_data_dir(ingest);

    auto* cluster = app.add_subcommand("cluster", "run fuzzy co-clustering");
    fcc::FccStfConfig config;
    cluster->add_option("--c", config.cluster_count, "number of co-clusters")->required();
    cluster->add_option("--tu", config.tu, "document fuzziness (default 1.0)");
    cluster->add_option("--tv", config.tv, "word fuzziness (default 1.0)");
    cluster->add_option("--e", config.epsilon, "convergence threshold (default 1e-6)");
    cluster->add_option("--seed", config.seed, "random seed (default 1)");
    cluster->add_option("--max-iters", config.max_iters, "iteration cap (default 100)");
    bool cluster_json = false;
    cluster->add_flag("--json", cluster_json, "emit JSON");
    add_data_dir(cluster);

    auto* trace = app.add_subcommand("trace", "export the last clustering trace CSV");
    std::string trace_out;
    trace->add_option("--out", trace_out, "output path (stdout when omitted)");
    add_data_dir(trace);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("coclust");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Paths paths{fs::path(data_dir)};
    try {
        if (*reg) return do_register(paths, name, description, keywords, out);
        if (*visit) return do_visit(paths, visit_id, out);
        if (*query) return do_query(paths, query_text, policy, page, query_json, stopword_file, out);
        if (*ingest) return do_ingest(paths, docs_dir, weighting, stopword_file, out);
        if (*cluster) return do_cluster(paths, config, cluster_json, out);
        if (*trace) return do_trace(paths, trace_out, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand given\n";
    return 2;
}

}  // namespace coclust::cli
