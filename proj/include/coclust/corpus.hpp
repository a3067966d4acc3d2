#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coclust/matrix.hpp"

namespace coclust::corpus {

// A document–term weight matrix: one row per document, one column per
// vocabulary term, every entry finite and >= 0.
using CorrelationMatrix = Matrix;

struct Document {
    std::int64_t id = 0;
    std::string text;
};

// Ordered set of distinct normalized tokens; index_of is a bijection onto
// [0, size()).
class Vocabulary {
public:
    Vocabulary() = default;

    // Adds a term if absent; returns its index either way.
    std::size_t add(const std::string& term);

    std::optional<std::size_t> index_of(std::string_view term) const;
    std::size_t size() const noexcept { return terms_.size(); }
    const std::vector<std::string>& terms() const noexcept { return terms_; }

    // Terms in first-occurrence order across the given token lists.
    static Vocabulary build(std::span<const std::vector<std::string>> token_lists);

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, std::size_t> index_;
};

using Stoplist = std::unordered_set<std::string>;

// Lowercases ASCII letters, strips punctuation, splits on whitespace and
// punctuation. Bytes >= 0x80 pass through so UTF-8 sequences stay intact.
std::vector<std::string> tokenize(std::string_view text);

// Input order preserved; members of the stoplist dropped.
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const Stoplist& stoplist);

// tokenize + remove_stopwords in one call.
std::vector<std::string> analyze(std::string_view text, const Stoplist& stoplist);

// The list shipped with the library (data/stopwords_en.txt, list version en-1).
const Stoplist& default_stopwords();

// One token per line, '#' starts a comment, blank lines ignored.
Stoplist load_stopwords_file(const std::filesystem::path& path);

enum class Weighting { Tf, TfIdf };

// TF: d_ij = count of term j in document i. TFIDF: d_ij = tf_ij * ln(N/df_j).
// Out-of-vocabulary tokens are skipped unless strict is set, in which case
// they raise DimensionMismatch.
CorrelationMatrix build_correlation_matrix(const std::vector<Document>& docs,
                                           const Vocabulary& vocab, Weighting weighting,
                                           const Stoplist& stoplist, bool strict = false);

// Checks the CorrelationMatrix invariants (finite, nonnegative, non-empty).
void validate_correlation_matrix(const Matrix& m);

}  // namespace coclust::corpus
