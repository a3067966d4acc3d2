#include "coclust/corpus.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include "coclust/errors.hpp"

namespace coclust::corpus {

namespace {

bool is_token_byte(unsigned char c) {
    if (c >= 'a' && c <= 'z') return true;
    if (c >= 'A' && c <= 'Z') return true;
    if (c >= '0' && c <= '9') return true;
    return c >= 0x80;  // UTF-8 continuation/lead bytes
}

unsigned char to_lower_ascii(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<unsigned char>(c - 'A' + 'a') : c;
}

}  // namespace

std::size_t Vocabulary::add(const std::string& term) {
    auto it = index_.find(term);
    if (it != index_.end()) return it->second;
    std::size_t idx = terms_.size();
    terms_.push_back(term);
    index_.emplace(term, idx);
    return idx;
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vocabulary Vocabulary::build(std::span<const std::vector<std::string>> token_lists) {
    Vocabulary vocab;
    for (const auto& tokens : token_lists) {
        for (const auto& token : tokens) vocab.add(token);
    }
    return vocab;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_token_byte(c)) {
            current.push_back(static_cast<char>(to_lower_ascii(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const Stoplist& stoplist) {
    std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t); });
    return tokens;
}

std::vector<std::string> analyze(std::string_view text, const Stoplist& stoplist) {
    return remove_stopwords(tokenize(text), stoplist);
}

Stoplist load_stopwords_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file " + path.string());
    Stoplist list;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string token;
        for (unsigned char c : line) {
            if (c == ' ' || c == '\t' || c == '\r') continue;
            token.push_back(static_cast<char>(to_lower_ascii(c)));
        }
        if (!token.empty()) list.insert(std::move(token));
    }
    return list;
}

CorrelationMatrix build_correlation_matrix(const std::vector<Document>& docs,
                                           const Vocabulary& vocab, Weighting weighting,
                                           const Stoplist& stoplist, bool strict) {
    const std::size_t n = docs.size();
    const std::size_t k = vocab.size();
    if (n == 0) throw InvalidArgument("corpus is empty");
    if (k == 0) throw InvalidArgument("vocabulary is empty");

    std::unordered_set<std::int64_t> seen_ids;
    for (const auto& doc : docs) {
        if (!seen_ids.insert(doc.id).second) {
            throw InvalidArgument("duplicate document id " + std::to_string(doc.id));
        }
    }

    Matrix tf(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& token : analyze(docs[i].text, stoplist)) {
            auto idx = vocab.index_of(token);
            if (!idx) {
                if (strict) {
                    throw DimensionMismatch("out-of-vocabulary token \"" + token +
                                            "\" in document " + std::to_string(docs[i].id));
                }
                continue;
            }
            tf(i, *idx) += 1.0;
        }
    }

    if (weighting == Weighting::Tf) return tf;

    // tf * ln(N/df); terms absent from every document get weight 0.
    std::vector<double> idf(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t df = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (tf(i, j) > 0.0) ++df;
        }
        if (df > 0) idf[j] = std::log(static_cast<double>(n) / static_cast<double>(df));
    }
    Matrix weighted(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) weighted(i, j) = tf(i, j) * idf[j];
    }
    return weighted;
}

void validate_correlation_matrix(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw InvalidArgument("correlation matrix must have at least one row and column");
    }
    for (double v : m.flat()) {
        if (!std::isfinite(v)) throw NonFinite("correlation matrix contains a non-finite entry");
        if (v < 0.0) throw InvalidArgument("correlation matrix contains a negative entry");
    }
}

}  // namespace coclust::corpus
