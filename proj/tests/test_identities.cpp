#include <gtest/gtest.h>

#include <set>

#include "qstat/identities.hpp"

using namespace qstat;

namespace {

const std::vector<std::string> expected_ids = {
    "L2.1.m1", "L2.1.m2", "L2.2.a", "L2.2.b", "L2.2.c", "L2.2.d", "L2.2.e", "L2.2.f", "L2.2.g", "L2.2.h",
    "L2.2.i", "L2.2.master", "L2.3.a", "L2.3.b", "T3.1.b0", "T3.1.b1", "T3.1.b2", "T3.1.b3", "T3.1.b4",
    "E4.1", "E4.3", "E4.4", "E4.5", "E4.7", "E4.9", "E4.10", "E4.12", "E4.13", "T1.a", "T1.b", "T2", "T3",
    "T4", "INTRO.beck", "INTRO.chern", "INTRO.mao7.a", "INTRO.mao7.b", "INTRO.dyson.5", "INTRO.dyson.7",
    "C5.1", "C5.2", "C5.3"};

void expect_consistent(const identity_report& r) {
  EXPECT_EQ(r.passed, !r.first_mismatch.has_value()) << r.id;
  EXPECT_FALSE(r.lhs_sample.empty()) << r.id;
  EXPECT_FALSE(r.rhs_sample.empty()) << r.id;
}

} // namespace

TEST(Registry, StableIds) {
  std::vector<std::string> ids;
  for (const auto& e : registry()) ids.push_back(e.id);
  EXPECT_EQ(ids, expected_ids);
}

TEST(Registry, UnknownIdThrows) {
  EXPECT_THROW(run_check("NOPE", 10), unknown_identity);
  try {
    find_check("E9.9");
  } catch (const unknown_identity& e) {
    EXPECT_EQ(e.id(), "E9.9");
  }
}

TEST(Registry, ZeroLambertPair) {
  const auto r = run_check("L2.2.b", 200);
  EXPECT_TRUE(r.passed);
  for (const auto& c : r.lhs_sample) EXPECT_EQ(c, "0");
  expect_consistent(r);
}

TEST(Registry, TheoremOneLeadingCoefficients) {
  const auto r = run_check("T1.a", 200);
  ASSERT_TRUE(r.passed) << r.detail;
  const std::vector<std::string> want = {"-5", "-5", "-10", "-15", "-25"};
  EXPECT_EQ(std::vector<std::string>(r.lhs_sample.begin(), r.lhs_sample.begin() + 5), want);
}

TEST(Registry, TheoremTwoAtSmallOrder) {
  const auto r = run_check("T2", 45);
  ASSERT_TRUE(r.passed) << r.detail;
  EXPECT_EQ(r.lhs_sample.front(), "4");
}

TEST(Registry, RunAllPasses) {
  for (std::size_t order : {0u, 1u, 17u, 100u}) {
    const auto reports = run_all(order);
    ASSERT_EQ(reports.size(), expected_ids.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
      EXPECT_EQ(reports[i].id, expected_ids[i]);
      EXPECT_TRUE(reports[i].passed) << reports[i].id << " at order " << order << ": " << reports[i].detail;
      EXPECT_EQ(reports[i].order, order);
      expect_consistent(reports[i]);
    }
  }
}

TEST(Registry, TwoCrankDissectionsDifferByMinusTwo) {
  check_context ctx;
  const auto m = ctx.momega(5 * 300 + 4);
  const auto lhs7 = dissect(m[1] - m[4], 4);
  const auto lhs3 = dissect(m[2] - m[3], 4);
  EXPECT_EQ(first_mismatch(lhs7, lhs3 * rational(-2), 300), std::nullopt);
}

TEST(Registry, CorruptedBuilderIsCaught) {
  check_options opts;
  opts.order = 60;
  const auto honest = default_garvan_builder();
  opts.garvan = [honest](garvan g, std::size_t order) {
    auto s = honest(g, order);
    if (g == garvan::B && order >= 3) s[3] += rational(1);
    return s;
  };
  check_context ctx(opts);
  for (int b = 0; b < 5; ++b) {
    const auto r = run_check(find_check("T3.1.b" + std::to_string(b)), ctx);
    EXPECT_FALSE(r.passed);
    ASSERT_TRUE(r.first_mismatch.has_value());
    // q B(q^5) times Lambert sums starting at q: damage first shows at q^(1 + 5*3 + 1)
    EXPECT_EQ(*r.first_mismatch, 17u);
    expect_consistent(r);
  }
  EXPECT_FALSE(run_check(find_check("L2.1.m1"), ctx).passed);
}

TEST(Registry, RandomLambertInstancesAreDeterministic) {
  const auto a = detail::random_lambert_specs(7, 20);
  const auto b = detail::random_lambert_specs(7, 20);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].r, b[i].r);
    EXPECT_EQ(a[i].s, b[i].s);
    EXPECT_EQ(a[i].t, b[i].t);
    EXPECT_FALSE(a[i].degenerate());
  }
}

TEST(Density, RowsAndForcedMatches) {
  const auto rows = density(statistic::momega, 1, 4, 2, 500, 100);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].upto, 100 * (i + 1));
    EXPECT_LE(rows[i].matches, rows[i].upto);
    EXPECT_TRUE(rows[i].forced_ok);
    EXPECT_EQ(rows[i].forced, 2 * rows[i].upto / 5);
    EXPECT_GE(rows[i].density, rational(2, 5));
    EXPECT_EQ(rows[i].target, rational(3, 10));
  }
}

TEST(Density, PairTwoThree) {
  const auto rows = density(statistic::momega, 2, 3, 2, 203, 50);
  ASSERT_EQ(rows.back().upto, 203u);
  EXPECT_EQ(rows.size(), 5u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.forced_ok);
    EXPECT_GE(r.density * rational(static_cast<long>(r.upto)), rational(static_cast<long>(r.upto / 5)));
    EXPECT_EQ(r.target, rational(2, 5));
  }
}

TEST(Density, MatchesExactParities) {
  const auto nt = nt_dp_series<rational>(5, 200);
  std::size_t matches = 0;
  for (std::size_t k = 1; k <= 200; ++k)
    if (parity(nt[0][k]) == parity(nt[2][k])) ++matches;
  const auto rows = density(statistic::nt, 0, 2, 2, 200, 200);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].matches, matches);
  EXPECT_EQ(rows[0].target, rational(1, 2));
}

TEST(Density, RejectsBadArguments) {
  EXPECT_THROW(density(statistic::nt, 3, 1, 2, 10, 1), error);
  EXPECT_THROW(density(statistic::nt, 0, 5, 2, 10, 1), error);
  EXPECT_THROW(density(statistic::nt, 0, 1, 3, 10, 1), error);
  EXPECT_THROW(density(statistic::nt, 0, 1, 2, 10, 0), error);
  EXPECT_THROW(density(statistic::momega, 0, 1, 2, 6000, 100), budget_exceeded);
}
