#include "coclust/search_index.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_set>

#include "coclust/errors.hpp"

namespace coclust::search {

namespace {

void validate_lengths(std::string_view name, std::string_view description,
                      std::string_view keywords) {
    if (name.size() > kNameLimit) throw FieldTooLong("name", kNameLimit, name.size());
    if (description.size() > kDescriptionLimit) {
        throw FieldTooLong("description", kDescriptionLimit, description.size());
    }
    if (keywords.size() > kKeywordsLimit) {
        throw FieldTooLong("keywords", kKeywordsLimit, keywords.size());
    }
}

std::size_t match_level(const LinkRecord& link,
                        const std::unordered_set<std::string>& query_terms) {
    std::size_t level = 0;
    for (const auto& kw : link.keyword_set) {
        if (query_terms.contains(kw)) ++level;
    }
    return level;
}

bool before_by_policy(const QueryMatch& a, const QueryMatch& b, ReplacementPolicy policy) {
    if (a.match_level != b.match_level) return a.match_level > b.match_level;
    switch (policy) {
        case ReplacementPolicy::Priority:
            if (a.link.visit_count != b.link.visit_count) {
                return a.link.visit_count > b.link.visit_count;
            }
            break;
        case ReplacementPolicy::Fifo:
            break;  // registration order decides below
        case ReplacementPolicy::Lru:
            if (a.link.last_visit_seq != b.link.last_visit_seq) {
                return a.link.last_visit_seq > b.link.last_visit_seq;
            }
            break;
    }
    return a.link.registered_seq < b.link.registered_seq;
}

}  // namespace

std::string_view policy_name(ReplacementPolicy policy) {
    switch (policy) {
        case ReplacementPolicy::Fifo: return "fifo";
        case ReplacementPolicy::Lru: return "lru";
        case ReplacementPolicy::Priority: break;
    }
    return "priority";
}

ReplacementPolicy parse_policy(std::string_view name) {
    if (name == "fifo") return ReplacementPolicy::Fifo;
    if (name == "lru") return ReplacementPolicy::Lru;
    if (name == "priority") return ReplacementPolicy::Priority;
    throw InvalidArgument("unknown policy \"" + std::string(name) +
                          "\" (expected priority, fifo or lru)");
}

std::vector<std::string> parse_keywords(std::string_view raw) {
    std::vector<std::string> keywords;
    std::unordered_set<std::string> seen;
    for (const auto& token : corpus::tokenize(raw)) {
        if (seen.insert(token).second) keywords.push_back(token);
    }
    return keywords;
}

SearchIndex::SearchIndex(corpus::Stoplist stoplist) : stoplist_(std::move(stoplist)) {}

SearchIndex::SearchIndex(IndexSnapshot snapshot, corpus::Stoplist stoplist)
    : records_(std::move(snapshot.records)),
      next_id_(snapshot.next_id),
      next_seq_(snapshot.next_seq),
      stoplist_(std::move(stoplist)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        auto& record = records_[i];
        validate_lengths(record.name, record.description, record.keywords);
        record.keyword_set = parse_keywords(record.keywords);
        if (record.keyword_set.empty()) throw EmptyKeywords();
        if (!by_id_.emplace(record.id, i).second) {
            throw InvalidArgument("duplicate link id " + std::to_string(record.id));
        }
    }
}

std::int64_t SearchIndex::register_link(std::string_view name, std::string_view description,
                                        std::string_view keywords) {
    validate_lengths(name, description, keywords);
    auto keyword_set = parse_keywords(keywords);
    if (keyword_set.empty()) throw EmptyKeywords();

    std::unique_lock lock(*mutex_);
    LinkRecord record;
    record.id = next_id_++;
    record.name = std::string(name);
    record.description = std::string(description);
    record.keywords = std::string(keywords);
    record.keyword_set = std::move(keyword_set);
    record.registered_seq = next_seq_++;
    by_id_.emplace(record.id, records_.size());
    records_.push_back(std::move(record));
    return records_.back().id;
}

std::uint64_t SearchIndex::record_visit(std::int64_t id) {
    std::unique_lock lock(*mutex_);
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw UnknownLink(id);
    auto& record = records_[it->second];
    record.visit_count += 1;
    record.last_visit_seq = next_seq_++;
    return record.visit_count;
}

QueryFrameSet SearchIndex::query(std::string_view text, ReplacementPolicy policy,
                                 std::size_t page) const {
    std::shared_lock lock(*mutex_);
    QueryFrameSet result;
    std::unordered_set<std::string> query_terms;
    for (auto& token : corpus::analyze(text, stoplist_)) query_terms.insert(std::move(token));
    if (query_terms.empty()) return result;

    std::vector<QueryMatch> ranked;
    for (const auto& record : records_) {
        std::size_t level = match_level(record, query_terms);
        if (level == 0) continue;
        ++result.total_matches;
        if (record.visit_count == 0) {
            result.zero_frame.push_back({record, level});
        } else {
            ranked.push_back({record, level});
        }
    }

    std::sort(ranked.begin(), ranked.end(),
              [&](const QueryMatch& a, const QueryMatch& b) {
                  return before_by_policy(a, b, policy);
              });
    std::sort(result.zero_frame.begin(), result.zero_frame.end(),
              [](const QueryMatch& a, const QueryMatch& b) {
                  if (a.match_level != b.match_level) return a.match_level > b.match_level;
                  return a.link.registered_seq < b.link.registered_seq;
              });

    std::size_t offset = page * kHighFrameCapacity;
    for (std::size_t i = offset; i < ranked.size() && i < offset + kHighFrameCapacity; ++i) {
        result.high_frames.push_back(std::move(ranked[i]));
    }
    return result;
}

LinkRecord SearchIndex::link(std::int64_t id) const {
    std::shared_lock lock(*mutex_);
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw UnknownLink(id);
    return records_[it->second];
}

std::vector<LinkRecord> SearchIndex::links() const {
    std::shared_lock lock(*mutex_);
    return records_;
}

std::size_t SearchIndex::size() const {
    std::shared_lock lock(*mutex_);
    return records_.size();
}

IndexSnapshot SearchIndex::snapshot() const {
    std::shared_lock lock(*mutex_);
    return {records_, next_id_, next_seq_};
}

std::vector<LinkRecord> apply_replacement(std::vector<LinkRecord> frame,
                                          const LinkRecord& incoming,
                                          ReplacementPolicy policy) {
    if (frame.size() > kHighFrameCapacity) {
        throw InvalidArgument("frame holds more than " +
                              std::to_string(kHighFrameCapacity) + " links");
    }
    for (const auto& present : frame) {
        if (present.id == incoming.id) return frame;
    }
    if (frame.size() < kHighFrameCapacity) {
        frame.push_back(incoming);
        return frame;
    }

    auto victim = frame.begin();
    for (auto it = frame.begin() + 1; it != frame.end(); ++it) {
        bool better = false;
        switch (policy) {
            case ReplacementPolicy::Fifo:
                better = it->registered_seq < victim->registered_seq;
                break;
            case ReplacementPolicy::Lru:
                better = it->last_visit_seq < victim->last_visit_seq ||
                         (it->last_visit_seq == victim->last_visit_seq &&
                          it->registered_seq < victim->registered_seq);
                break;
            case ReplacementPolicy::Priority:
                better = it->visit_count < victim->visit_count ||
                         (it->visit_count == victim->visit_count &&
                          it->registered_seq < victim->registered_seq);
                break;
        }
        if (better) victim = it;
    }
    if (policy == ReplacementPolicy::Priority && incoming.visit_count <= victim->visit_count) {
        return frame;  // low-priority pages never displace higher ones
    }
    frame.erase(victim);
    frame.push_back(incoming);
    return frame;
}

}  // namespace coclust::search
