#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coclust/corpus.hpp"

namespace coclust::search {

inline constexpr std::size_t kNameLimit = 45;
inline constexpr std::size_t kDescriptionLimit = 450;
inline constexpr std::size_t kKeywordsLimit = 400;
inline constexpr std::size_t kHighFrameCapacity = 5;

enum class ReplacementPolicy { Priority, Fifo, Lru };

std::string_view policy_name(ReplacementPolicy policy);
ReplacementPolicy parse_policy(std::string_view name);

struct LinkRecord {
    std::int64_t id = 0;
    std::string name;         // <= 45 chars
    std::string description;  // <= 450 chars
    std::string keywords;     // raw comma-separated string, <= 400 chars
    std::vector<std::string> keyword_set;  // normalized, deduplicated, non-empty
    std::uint64_t visit_count = 0;
    std::uint64_t registered_seq = 0;
    std::uint64_t last_visit_seq = 0;  // 0 when never visited

    friend bool operator==(const LinkRecord&, const LinkRecord&) = default;
};

struct QueryMatch {
    LinkRecord link;
    std::size_t match_level = 0;  // number of link keywords found in the query
};

struct QueryFrameSet {
    std::vector<QueryMatch> high_frames;  // at most 5, descending priority
    std::vector<QueryMatch> zero_frame;   // every zero-visit match
    std::size_t total_matches = 0;
};

// Snapshot used by the persistence layer; restoring it reproduces the exact
// index state including sequence counters.
struct IndexSnapshot {
    std::vector<LinkRecord> records;
    std::int64_t next_id = 1;
    std::uint64_t next_seq = 1;
};

// Normalized keyword set for a raw comma-separated keyword string.
std::vector<std::string> parse_keywords(std::string_view raw);

// In-memory link index with visit-count priorities. Registrations and visit
// recordings take the writer lock; queries run under the shared lock and see
// a consistent snapshot.
class SearchIndex {
public:
    explicit SearchIndex(corpus::Stoplist stoplist = corpus::default_stopwords());
    SearchIndex(IndexSnapshot snapshot, corpus::Stoplist stoplist);

    // Validates the length limits, normalizes keywords, assigns the next id
    // and registration sequence. The new link starts with zero visits.
    std::int64_t register_link(std::string_view name, std::string_view description,
                               std::string_view keywords);

    // Increments the visit counter and stamps a fresh sequence value.
    std::uint64_t record_visit(std::int64_t id);

    // Tokenizes and stop-words the query, assigns each link the number of
    // its keywords present in the query (its match level), then splits the
    // matches: links with visits fill at most five high-priority frames in
    // (match level desc, policy order, registration asc) order, and every
    // zero-visit match lands in the unbounded zero-priority frame. `page`
    // offsets the high-priority window in steps of five.
    QueryFrameSet query(std::string_view text,
                        ReplacementPolicy policy = ReplacementPolicy::Priority,
                        std::size_t page = 0) const;

    LinkRecord link(std::int64_t id) const;
    std::vector<LinkRecord> links() const;
    std::size_t size() const;
    IndexSnapshot snapshot() const;
    const corpus::Stoplist& stoplist() const noexcept { return stoplist_; }

private:
    // behind a pointer so the index stays movable
    std::unique_ptr<std::shared_mutex> mutex_ = std::make_unique<std::shared_mutex>();
    std::vector<LinkRecord> records_;
    std::unordered_map<std::int64_t, std::size_t> by_id_;
    std::int64_t next_id_ = 1;
    std::uint64_t next_seq_ = 1;
    corpus::Stoplist stoplist_;
};

// Capacity-5 frame replacement. With free capacity the incoming link is
// appended. Otherwise the victim is: FIFO -> oldest registered_seq; LRU ->
// smallest last_visit_seq; PRIORITY -> smallest visit_count, and the frame
// is left unchanged unless the incoming link's visit_count is strictly
// larger than the victim's. Ties break on registered_seq ascending.
std::vector<LinkRecord> apply_replacement(std::vector<LinkRecord> frame,
                                          const LinkRecord& incoming,
                                          ReplacementPolicy policy);

}  // namespace coclust::search
