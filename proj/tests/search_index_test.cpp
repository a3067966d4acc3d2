#include <doctest.h>

#include <string>

#include "coclust/errors.hpp"
#include "coclust/search_index.hpp"
#include "oracles.hpp"

using namespace coclust;
namespace se = coclust::search;

namespace {

se::LinkRecord make_link(std::int64_t id, std::uint64_t reg, std::uint64_t visits,
                         std::uint64_t last_visit = 0) {
    se::LinkRecord link;
    link.id = id;
    link.name = "page" + std::to_string(id);
    link.description = "desc";
    link.keywords = "kw";
    link.keyword_set = {"kw"};
    link.registered_seq = reg;
    link.visit_count = visits;
    link.last_visit_seq = last_visit;
    return link;
}

// A corpus where "education system parameter" matches exactly 18 links:
// ten with positive visit counts, eight never visited, plus unrelated noise.
se::SearchIndex make_section_corpus() {
    se::SearchIndex index;
    struct Row {
        const char* name;
        const char* keywords;
        int visits;
    };
    const Row rows[] = {
        {"www.education.ac.in", "education,system,parameter", 12},
        {"www.schools.example", "education,system", 9},
        {"www.params.example", "parameter,tuning", 9},
        {"www.unisys.example", "system,education,learning", 7},
        {"www.gradebook.example", "education", 15},
        {"www.sysadmin.example", "system", 4},
        {"www.tuning.example", "parameter,system", 2},
        {"www.courses.example", "education,courses", 1},
        {"www.control.example", "parameter,control", 3},
        {"www.elearn.example", "education,online", 5},
        {"www.newedu.example", "education,system,parameter", 0},
        {"www.fresh.example", "education", 0},
        {"www.sysplan.example", "system,planning", 0},
        {"www.paramzero.example", "parameter", 0},
        {"www.eduzero.example", "education,archive", 0},
        {"www.syszero.example", "system", 0},
        {"www.parzero.example", "parameter,logs", 0},
        {"www.combozero.example", "system,parameter", 0},
        {"www.sports.example", "cricket,football", 20},
        {"www.cooking.example", "recipes,food", 6},
        {"www.travel.example", "flights,hotels", 0},
        {"www.music.example", "songs,albums", 2},
    };
    for (const auto& row : rows) {
        std::int64_t id = index.register_link(row.name, "about: " + std::string(row.name),
                                              row.keywords);
        for (int v = 0; v < row.visits; ++v) index.record_visit(id);
    }
    return index;
}

}  // namespace

TEST_CASE("register_link stores the worked example") {
    se::SearchIndex index;
    std::int64_t id = index.register_link("www.education.ac.in",
                                          "we deal in all type of education",
                                          "education,system,parameter");
    se::LinkRecord link = index.link(id);
    CHECK(link.visit_count == 0);
    CHECK(link.last_visit_seq == 0);
    CHECK(link.keyword_set == std::vector<std::string>{"education", "system", "parameter"});
    CHECK(link.registered_seq == 1);
}

TEST_CASE("register_link enforces the varchar limits") {
    se::SearchIndex index;
    std::string name46(46, 'a');
    CHECK_THROWS_WITH_AS(index.register_link(name46, "d", "kw"), doctest::Contains("45"),
                         FieldTooLong);
    CHECK_THROWS_AS(index.register_link("n", std::string(451, 'b'), "kw"), FieldTooLong);
    CHECK_THROWS_AS(index.register_link("n", "d", std::string(401, 'c')), FieldTooLong);

    // exactly at the limits is accepted
    CHECK_NOTHROW(index.register_link(std::string(45, 'a'), std::string(450, 'b'),
                                      "kw," + std::string(397, 'c')));
}

TEST_CASE("register_link rejects empty keyword sets") {
    se::SearchIndex index;
    CHECK_THROWS_AS(index.register_link("n", "d", ""), EmptyKeywords);
    CHECK_THROWS_AS(index.register_link("n", "d", ",,,"), EmptyKeywords);
    CHECK_THROWS_AS(index.register_link("n", "d", "!!! ???"), EmptyKeywords);
}

TEST_CASE("keyword parsing normalizes, flattens and deduplicates") {
    CHECK(se::parse_keywords("Education, SYSTEM,parameter") ==
          std::vector<std::string>{"education", "system", "parameter"});
    CHECK(se::parse_keywords("education system, education") ==
          std::vector<std::string>{"education", "system"});
}

TEST_CASE("record_visit counts and rejects unknown ids") {
    se::SearchIndex index;
    std::int64_t id = index.register_link("n", "d", "kw");
    CHECK(index.record_visit(id) == 1);
    for (int i = 0; i < 4; ++i) index.record_visit(id);
    CHECK(index.link(id).visit_count == 5);
    CHECK(index.link(id).last_visit_seq > index.link(id).registered_seq);
    CHECK_THROWS_AS(index.record_visit(999), UnknownLink);
    CHECK_THROWS_AS(index.link(999), UnknownLink);
}

TEST_CASE("query on an empty index returns empty frames") {
    se::SearchIndex index;
    auto frames = index.query("education system");
    CHECK(frames.total_matches == 0);
    CHECK(frames.high_frames.empty());
    CHECK(frames.zero_frame.empty());
}

TEST_CASE("query made only of stop words matches nothing") {
    se::SearchIndex index;
    index.register_link("n", "d", "the education");
    auto frames = index.query("the of and");
    CHECK(frames.total_matches == 0);
}

TEST_CASE("match level is the keyword overlap, higher levels rank first") {
    se::SearchIndex index;
    std::int64_t one = index.register_link("one-kw", "d", "education,extra");
    std::int64_t three = index.register_link("three-kw", "d", "education,system,parameter");
    // the single-keyword page is far more visited
    for (int i = 0; i < 50; ++i) index.record_visit(one);
    index.record_visit(three);

    auto frames = index.query("education system parameter");
    REQUIRE(frames.high_frames.size() == 2);
    CHECK(frames.high_frames[0].link.id == three);
    CHECK(frames.high_frames[0].match_level == 3);
    CHECK(frames.high_frames[1].link.id == one);
    CHECK(frames.high_frames[1].match_level == 1);
}

TEST_CASE("seven distinct-visit matches: top five shown, rest nowhere") {
    se::SearchIndex index;
    std::vector<std::int64_t> ids;
    for (int i = 0; i < 7; ++i) {
        ids.push_back(index.register_link("page" + std::to_string(i), "d", "education"));
    }
    // distinct positive visit counts 1..7
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t v = 0; v <= i; ++v) index.record_visit(ids[i]);
    }
    auto frames = index.query("education");
    CHECK(frames.total_matches == 7);
    REQUIRE(frames.high_frames.size() == 5);
    CHECK(frames.zero_frame.empty());
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(frames.high_frames[i].link.visit_count == 7 - i);
    }

    auto oracle = oracles::brute_force_query(index.links(), {"education"},
                                             se::ReplacementPolicy::Priority);
    REQUIRE(oracle.high.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(frames.high_frames[i].link.id == oracle.high[i].first.id);
    }
}

TEST_CASE("zero-visit matches land in the zero frame regardless of rank") {
    auto index = make_section_corpus();
    auto frames = index.query("education system parameter");
    CHECK(frames.total_matches == 18);
    CHECK(frames.high_frames.size() == 5);
    CHECK(frames.zero_frame.size() == 8);
    for (const auto& match : frames.zero_frame) CHECK(match.link.visit_count == 0);
    for (const auto& match : frames.high_frames) CHECK(match.link.visit_count > 0);

    // frames are disjoint
    for (const auto& high : frames.high_frames) {
        for (const auto& zero : frames.zero_frame) CHECK(high.link.id != zero.link.id);
    }
}

TEST_CASE("query equals the brute-force oracle on every policy") {
    auto index = make_section_corpus();
    auto links = index.links();
    for (auto policy : {se::ReplacementPolicy::Priority, se::ReplacementPolicy::Fifo,
                        se::ReplacementPolicy::Lru}) {
        auto frames = index.query("education system parameter", policy);
        auto oracle = oracles::brute_force_query(links, {"education", "system", "parameter"},
                                                 policy);
        CHECK(frames.total_matches == oracle.total);
        REQUIRE(frames.high_frames.size() == oracle.high.size());
        for (std::size_t i = 0; i < oracle.high.size(); ++i) {
            CHECK(frames.high_frames[i].link.id == oracle.high[i].first.id);
            CHECK(frames.high_frames[i].match_level == oracle.high[i].second);
        }
        REQUIRE(frames.zero_frame.size() == oracle.zero.size());
        for (std::size_t i = 0; i < oracle.zero.size(); ++i) {
            CHECK(frames.zero_frame[i].link.id == oracle.zero[i].first.id);
        }
    }
}

TEST_CASE("pagination shifts the high-priority window") {
    auto index = make_section_corpus();
    auto page0 = index.query("education system parameter", se::ReplacementPolicy::Priority, 0);
    auto page1 = index.query("education system parameter", se::ReplacementPolicy::Priority, 1);
    CHECK(page1.high_frames.size() == 5);
    for (const auto& late : page1.high_frames) {
        for (const auto& early : page0.high_frames) CHECK(late.link.id != early.link.id);
    }
    auto oracle = oracles::brute_force_query(index.links(),
                                             {"education", "system", "parameter"},
                                             se::ReplacementPolicy::Priority, 1);
    REQUIRE(oracle.high.size() == page1.high_frames.size());
    for (std::size_t i = 0; i < oracle.high.size(); ++i) {
        CHECK(page1.high_frames[i].link.id == oracle.high[i].first.id);
    }
}

TEST_CASE("raising a visit count never lowers the rank under priority") {
    se::SearchIndex index;
    std::vector<std::int64_t> ids;
    for (int i = 0; i < 6; ++i) {
        ids.push_back(index.register_link("page" + std::to_string(i), "d", "education"));
        for (int v = 0; v < i + 1; ++v) index.record_visit(ids.back());
    }
    auto rank_of = [&](std::int64_t id) {
        auto frames = index.query("education");
        for (std::size_t i = 0; i < frames.high_frames.size(); ++i) {
            if (frames.high_frames[i].link.id == id) return static_cast<int>(i);
        }
        return 99;
    };
    int before = rank_of(ids[2]);
    index.record_visit(ids[2]);
    index.record_visit(ids[2]);
    CHECK(rank_of(ids[2]) <= before);
}

TEST_CASE("read your writes: a visit is visible to the next query") {
    se::SearchIndex index;
    std::int64_t id = index.register_link("n", "d", "education");
    CHECK(index.query("education").zero_frame.size() == 1);
    index.record_visit(id);
    auto frames = index.query("education");
    CHECK(frames.zero_frame.empty());
    REQUIRE(frames.high_frames.size() == 1);
    CHECK(frames.high_frames[0].link.visit_count == 1);
}

TEST_CASE("apply_replacement: fifo evicts the first registered") {
    std::vector<se::LinkRecord> frame;
    for (int i = 1; i <= 5; ++i) frame.push_back(make_link(i, i, 10 + i));
    auto incoming = make_link(6, 6, 1);
    auto after = se::apply_replacement(frame, incoming, se::ReplacementPolicy::Fifo);
    REQUIRE(after.size() == 5);
    CHECK(after[0].id == 2);
    CHECK(after.back().id == 6);
}

TEST_CASE("apply_replacement: lru evicts the least recently visited") {
    std::vector<se::LinkRecord> frame;
    // p1 just visited (seq 50); p2..p5 older visits
    frame.push_back(make_link(1, 1, 5, 50));
    frame.push_back(make_link(2, 2, 5, 14));
    frame.push_back(make_link(3, 3, 5, 12));
    frame.push_back(make_link(4, 4, 5, 13));
    frame.push_back(make_link(5, 5, 5, 15));
    auto after = se::apply_replacement(frame, make_link(6, 6, 1, 51),
                                       se::ReplacementPolicy::Lru);
    REQUIRE(after.size() == 5);
    for (const auto& link : after) CHECK(link.id != 3);  // seq 12 was the LRU victim
    CHECK(after.back().id == 6);
}

TEST_CASE("apply_replacement: priority never admits a zero-visit page") {
    std::vector<se::LinkRecord> frame;
    for (int i = 1; i <= 5; ++i) frame.push_back(make_link(i, i, i));
    auto zero = make_link(9, 9, 0);
    CHECK(se::apply_replacement(frame, zero, se::ReplacementPolicy::Priority) == frame);

    auto strong = make_link(10, 10, 100);
    auto after = se::apply_replacement(frame, strong, se::ReplacementPolicy::Priority);
    REQUIRE(after.size() == 5);
    for (const auto& link : after) CHECK(link.id != 1);  // visit_count 1 was evicted
    CHECK(after.back().id == 10);
}

TEST_CASE("apply_replacement: appends while below capacity, idempotent on repeats") {
    std::vector<se::LinkRecord> frame;
    auto a = make_link(1, 1, 0);
    frame = se::apply_replacement(frame, a, se::ReplacementPolicy::Priority);
    CHECK(frame.size() == 1);
    frame = se::apply_replacement(frame, a, se::ReplacementPolicy::Priority);
    CHECK(frame.size() == 1);
}

TEST_CASE("snapshot round-trips through the restoring constructor") {
    auto index = make_section_corpus();
    auto snapshot = index.snapshot();
    se::SearchIndex restored(snapshot, corpus::default_stopwords());
    CHECK(restored.links() == index.links());
    CHECK(restored.size() == index.size());

    // sequences continue after restore
    std::int64_t id = restored.register_link("www.new.example", "d", "fresh");
    CHECK(restored.link(id).registered_seq == snapshot.next_seq);
}
