#include <gtest/gtest.h>

#include <filesystem>

#include "bfp/corpus.hpp"
#include "bfp/io.hpp"

using namespace bfp;

TEST(Corpus, FixturesMatchCheckedInFiles) {
    auto r = corpus::check(BFP_FIXTURE_DIR);
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.differing.empty());
    EXPECT_TRUE(r.missing.empty());
    EXPECT_EQ(r.matching.size(), corpus::fixture_files().size());
}

TEST(Corpus, RenderingIsStable) {
    EXPECT_EQ(corpus::render_pc_table(corpus::example_pc_table()), corpus::render_pc_table(corpus::example_pc_table()));
    EXPECT_EQ(corpus::fixture_files(), corpus::fixture_files());
}

TEST(Corpus, RegenerateThenCheck) {
    auto dir = std::filesystem::temp_directory_path() / "bfp_corpus_test";
    std::filesystem::remove_all(dir);
    corpus::regenerate(dir.string());
    EXPECT_TRUE(corpus::check(dir.string()).ok());

    io::write_text_file((dir / "example_pc_table.golden").string(), "tampered\n");
    std::filesystem::remove(dir / "constant_map.json");
    auto r = corpus::check(dir.string());
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.differing, (std::vector<std::string>{"example_pc_table.golden"}));
    EXPECT_EQ(r.missing, (std::vector<std::string>{"constant_map.json"}));
    std::filesystem::remove_all(dir);
}

TEST(Corpus, SpacesSatisfyAxioms) {
    EXPECT_TRUE(check_axioms(corpus::example_pc_table().space).all_ok());
    auto ne = corpus::example_nonexpansive();
    EXPECT_TRUE(check_axioms(ne.theta1_space).all_ok());
    EXPECT_TRUE(check_axioms(ne.theta2_space).all_ok());
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_TRUE(check_axioms(corpus::discrete_space(n)).all_ok());
}

TEST(PcTable, VerdictsAndPrintedRows) {
    auto c = corpus::example_pc_table();
    EXPECT_EQ(c.spec.pi, 0.5);
    EXPECT_EQ(c.coeffs.degree(), 1u);
    EXPECT_EQ(fixed_point_labels(c.space, c.fixed), (std::vector<std::string>{"e1", "f1"}));
    EXPECT_EQ(c.cycle_run.status, IterationStatus::CycleDetected);
    EXPECT_EQ(c.cycle_run.cycle, (std::vector<std::string>{"e2", "e3", "e4"}));
    EXPECT_FALSE(c.weakly_picard.weakly_picard);
    for (const auto& r : c.table) {
        if (r.v == 2 && r.r == 4) {
            EXPECT_EQ(r.printed_lhs, 5.0);
            EXPECT_EQ(r.printed_unscaled, 8.0);
        }
        if (r.v == 4 && r.r == 5) {
            EXPECT_EQ(r.lhs, 8.0);
            EXPECT_EQ(r.unscaled, 9.0);
        }
        if (r.v == 3 && r.r == 4) {
            EXPECT_EQ(r.lhs, 8.0);
            EXPECT_EQ(r.literal_rhs, 2.5);
        }
    }
}

TEST(Nonexpansive, TableRows) {
    auto c = corpus::example_nonexpansive();
    ASSERT_EQ(c.rows.size(), 4u);
    EXPECT_TRUE(c.nonexpansive);
    EXPECT_TRUE(c.images_zero);
    bool saw_e1f1 = false, saw_e1e2 = false;
    for (const auto& r : c.rows) {
        EXPECT_TRUE(r.holds);
        EXPECT_EQ(r.image_d1, 0.0);
        EXPECT_EQ(r.image_d2, 0.0);
        EXPECT_EQ(r.d1, r.printed_d1);
        EXPECT_EQ(r.d2, r.printed_d2);
        if (r.x == "e1" && r.y == "f1") {
            saw_e1f1 = true;
            EXPECT_EQ(r.d2, 2.0);
        }
        if (r.x == "e1" && r.y == "e2") {
            saw_e1e2 = true;
            EXPECT_EQ(r.d1, 1.0);
        }
    }
    EXPECT_TRUE(saw_e1f1);
    EXPECT_TRUE(saw_e1e2);
    EXPECT_TRUE(c.almost_pc.holds);
}

TEST(Interval, OrbitsAndContinuity) {
    auto c = corpus::example_interval_picard();
    ASSERT_GE(c.orbit_from_one.size(), 4u);
    EXPECT_EQ(c.orbit_from_one[0], 1.0);
    EXPECT_EQ(c.orbit_from_one[1], 1.0 / 3.0);
    EXPECT_EQ(c.orbit_from_one[2], 0.0);
    EXPECT_EQ(c.orbit_from_one[3], 0.0);
    EXPECT_TRUE(c.collapses);
    EXPECT_TRUE(c.continuity.picard_continuous);
    EXPECT_TRUE(c.continuity.inconclusive.empty());
    EXPECT_TRUE(c.discontinuous_at_one);
    EXPECT_EQ(c.value_at_one, 1.0 / 3.0);
    for (double v : c.left_values) EXPECT_EQ(v, 0.0);
}

TEST(Golden, PcTableContents) {
    auto text = corpus::render_pc_table(corpus::example_pc_table());
    EXPECT_NE(text.find("(2,4) 5 5 8 8"), std::string::npos);
    EXPECT_NE(text.find("(4,5) 8 8 9 9"), std::string::npos);
    EXPECT_NE(text.find("(3,4) 8 8 4 4 2.5"), std::string::npos);
    EXPECT_NE(text.find("lhs_discrepancies: (e3,f5)"), std::string::npos);
}
