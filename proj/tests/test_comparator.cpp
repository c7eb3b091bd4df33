#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "dow/comparator.hpp"

using namespace dow;
using Catch::Approx;

TEST_CASE("reverse scoring reproduces the shipped score column") {
    const RankingTable t = default_ranking_table();
    const auto scores = scores_from_ranks(t);
    REQUIRE(scores.size() == 6);
    CHECK(scores[0] == 12);  // Copenhagen: ranks 5,2,3,6
    CHECK(scores[1] == 13);  // Many-Worlds
    CHECK(scores[2] == 11);  // Bohmian mechanics
    CHECK(scores[3] == 18);  // GRW
    CHECK(scores[4] == 8);   // Epistemic
    CHECK(scores[5] == 24);  // DOW: four firsts
    int total = 0;
    for (int s : scores) total += s;
    CHECK(total == 86);
}

TEST_CASE("single model, single criterion") {
    RankingTable t;
    t.models = {"only"};
    t.criteria = {"c"};
    t.ranks = {{1}};
    const auto scores = scores_from_ranks(t);
    CHECK(scores[0] == 1);  // n+1-rank = 1
    const auto post = posteriors(scores);
    CHECK(post[0] == Approx(1.0));
}

TEST_CASE("posteriors are score/total and sum to one") {
    const std::vector<int> scores{12, 13, 11, 18, 8, 24};
    const auto p = posteriors(scores);
    CHECK(p[0] == Approx(12.0 / 86.0).margin(1e-15));
    CHECK(p[1] == Approx(13.0 / 86.0).margin(1e-15));  // 15.116%, not the rounded 15.11
    CHECK(p[5] == Approx(24.0 / 86.0).margin(1e-15));
    // against the published percentages, to 0.01 percentage points
    CHECK(100.0 * p[0] == Approx(13.95).margin(0.01));
    CHECK(100.0 * p[2] == Approx(12.79).margin(0.01));
    CHECK(100.0 * p[3] == Approx(20.93).margin(0.01));
    CHECK(100.0 * p[4] == Approx(9.30).margin(0.01));
    CHECK(100.0 * p[5] == Approx(27.91).margin(0.01));
    double total = 0.0;
    for (double v : p) total += v;
    CHECK(total == Approx(1.0).margin(1e-12));
}

TEST_CASE("posteriors: uniform for equal scores, scale invariant") {
    const std::vector<int> equal{3, 3, 3, 3, 3, 3};
    for (double v : posteriors(equal)) CHECK(v == Approx(1.0 / 6.0).margin(1e-15));

    const std::vector<int> base{2, 5, 9};
    const std::vector<int> scaled{6, 15, 27};
    const auto pb = posteriors(base);
    const auto ps = posteriors(scaled);
    for (std::size_t i = 0; i < pb.size(); ++i)
        CHECK(pb[i] == Approx(ps[i]).margin(1e-15));

    CHECK_THROWS_AS(posteriors(std::vector<int>{}), EmptyInput);
    CHECK_THROWS_AS(posteriors(std::vector<int>{4, 0}), NonpositiveScore);
}

TEST_CASE("improving any single rank strictly increases the score") {
    const RankingTable t = default_ranking_table();
    const auto base = scores_from_ranks(t);
    for (std::size_t m = 0; m < t.models.size(); ++m) {
        for (std::size_t c = 0; c < t.criteria.size(); ++c) {
            if (t.ranks[m][c] == 1) continue;
            RankingTable improved = t;
            improved.ranks[m][c] -= 1;
            const auto s = scores_from_ranks(improved);
            CHECK(s[m] == base[m] + 1);
        }
    }
}

TEST_CASE("rank validation") {
    RankingTable t = default_ranking_table();
    t.ranks[0][0] = 7;  // only six models
    CHECK_THROWS_AS(scores_from_ranks(t), InvalidRank);
    t.ranks[0][0] = 0;
    CHECK_THROWS_AS(scores_from_ranks(t), InvalidRank);
}

TEST_CASE("parsing a ranking table round-trips the default dataset") {
    std::stringstream ss;
    ss << "model,Coherence,Explanatory Power,Simplicity,Ontological Clarity\n"
       << "Copenhagen,5,2,3,6\n"
       << "Many-Worlds,3,5,4,3\n"
       << "Bohmian mechanics,3,6,5,3\n"
       << "GRW,2,4,2,2\n"
       << "Epistemic,6,3,6,5\n"
       << "DOW,1,1,1,1\n";
    const RankingTable t = parse_ranking_table(ss);
    const RankingTable d = default_ranking_table();
    CHECK(t.models == d.models);
    CHECK(t.criteria == d.criteria);
    CHECK(t.ranks == d.ranks);

    std::stringstream bad;
    bad << "model,a,b\nx,1\n";
    CHECK_THROWS_AS(parse_ranking_table(bad), ConfigError);
}

TEST_CASE("shipped data file matches the embedded default") {
    // the default dataset also ships as a plain file for the CLI
    std::ifstream in(std::string(DOW_SOURCE_DIR) + "/data/interpretation_ranks.csv");
    REQUIRE(in.good());
    const RankingTable t = parse_ranking_table(in);
    const RankingTable d = default_ranking_table();
    CHECK(t.models == d.models);
    CHECK(t.ranks == d.ranks);
}
