#include "infoq/classify.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "infoq/errors.h"
#include "infoq/information.h"
#include "oracles.h"

namespace infoq {
namespace {

using PerClass = std::vector<std::pair<std::string, double>>;

std::string repeat(std::string_view unit, std::size_t times) {
  std::string s;
  for (std::size_t i = 0; i < times; ++i) s += unit;
  return s;
}

TEST(BuildGroup, JoinsMembersWithSeparator) {
  const std::vector<LabeledScore> one = {{"s1", "A", "01"}};
  EXPECT_EQ(build_group("A", one).index.text(), "01");
  const std::vector<LabeledScore> two = {{"s1", "A", "01"}, {"s2", "A", "10"}};
  const ComposerGroup g = build_group("A", two);
  EXPECT_EQ(g.index.text(), "01#10");
  EXPECT_EQ(g.score_ids, (std::vector<std::string>{"s1", "s2"}));

  std::vector<LabeledScore> fifteen;
  for (int i = 0; i < 15; ++i) fifteen.push_back({std::to_string(i), "A", std::string(88, '0')});
  EXPECT_EQ(build_group("A", fifteen).index.size(), 15u * 88u + 14u);
  EXPECT_THROW(build_group("A", std::span<const LabeledScore>{}), ArgumentError);
}

TEST(ArgminLabel, PublishedRows) {
  const PerClass bach04 = {{"Bach", 2711}, {"Chopin", 3376}, {"Debussy", 3509},
                           {"Mozart", 2846}, {"Satie", 3464}};
  EXPECT_EQ(argmin_label(bach04).label, "Bach");
  EXPECT_FALSE(argmin_label(bach04).tie);
  const PerClass bach01 = {{"Bach", 27451}, {"Chopin", 24371}, {"Debussy", 23512},
                           {"Mozart", 25252}, {"Satie", 23938}};
  EXPECT_EQ(argmin_label(bach01).label, "Debussy");
}

TEST(ArgminLabel, SingleClassAndTies) {
  const PerClass single = {{"Only", 5.0}};
  EXPECT_EQ(argmin_label(single).label, "Only");
  EXPECT_FALSE(argmin_label(single).tie);

  const PerClass tied = {{"B", 1.0}, {"A", 1.0}, {"C", 2.0}};
  EXPECT_EQ(argmin_label(tied).label, "A");
  EXPECT_TRUE(argmin_label(tied).tie);

  const double inf = Bits::infinite().value();
  const PerClass all_inf = {{"Z", inf}, {"Y", inf}};
  EXPECT_EQ(argmin_label(all_inf).label, "Y");
  EXPECT_THROW(argmin_label(PerClass{}), ArgumentError);
}

TEST(ArgminLabel, ScaleInvariant) {
  SplitMix64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    PerClass values;
    for (int c = 0; c < 5; ++c) {
      values.emplace_back(std::string(1, static_cast<char>('A' + c)),
                          static_cast<double>(rng.next() % 1000));
    }
    const double scale = 0.01 + 100.0 * rng.uniform();
    PerClass scaled = values;
    for (auto& [label, v] : scaled) v *= scale;
    EXPECT_EQ(argmin_label(values).label, argmin_label(scaled).label);
  }
}

TEST(ClassifyInfoq, PicksGroupSharingStructure) {
  const std::vector<LabeledScore> corpus = {
      {"a1", "A", repeat("0011", 10)}, {"a2", "A", repeat("0011", 12)},
      {"b1", "B", repeat("01", 20)},   {"b2", "B", repeat("01", 25)}};
  const auto groups = build_groups(corpus);
  const auto out = classify_infoq(repeat("0011", 6), groups);
  EXPECT_EQ(out.predicted, "A");
  ASSERT_EQ(out.per_class.size(), 2u);
  EXPECT_EQ(out.per_class[0].first, "A");
  EXPECT_LT(out.per_class[0].second, out.per_class[1].second);

  const std::vector<ComposerGroup> single(groups.begin() + 1, groups.end());
  const auto only = classify_infoq(repeat("0011", 6), single);
  EXPECT_EQ(only.predicted, "B");
  EXPECT_FALSE(only.tie);
}

TEST(ClassifyCdm, NearestNeighbourAndMajority) {
  // Identity CDM is always 1, so use lzw with hand-made neighbours.
  const std::string x = repeat("0110", 60);
  const std::vector<LabeledScore> known = {
      {"a", "A", repeat("0110", 50)},
      {"b", "B", testing::top_bit_string(240, 3)},
      {"c", "B", testing::top_bit_string(240, 4)}};
  const auto backend = CompressorBackend::lzw();
  EXPECT_EQ(classify_cdm(x, known, backend, 1).predicted, "A");
  EXPECT_EQ(classify_cdm(x, known, backend, 3).predicted, "B");
  EXPECT_THROW(classify_cdm(x, known, backend, 0), ArgumentError);
  EXPECT_THROW(classify_cdm(x, known, backend, 4), ArgumentError);
}

TEST(ClassifyCdm, KOneEqualsMinimumDistanceLabel) {
  SplitMix64 rng(53);
  const auto backend = CompressorBackend::lzw();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LabeledScore> known;
    for (int i = 0; i < 6; ++i) {
      known.push_back({std::to_string(i), std::string(1, static_cast<char>('A' + i % 3)),
                       testing::random_string(rng, 50 + testing::random_length(rng, 300))});
    }
    const std::string q = testing::random_string(rng, 200);
    double best = 1e9;
    std::string best_label;
    for (const auto& k : known) {
      const double d = cdm(backend, q, k.text);
      if (d < best || (d == best && k.label < best_label)) {
        best = d;
        best_label = k.label;
      }
    }
    EXPECT_EQ(classify_cdm(q, known, backend, 1).predicted, best_label);
  }
}

TEST(ClassifyCdm, IdentityBackendIsAllTies) {
  const std::vector<LabeledScore> known = {
      {"1", "Chopin", "0101"}, {"2", "Bach", "0011"}, {"3", "Satie", "1111"}};
  const auto out = classify_cdm("0110", known, CompressorBackend::identity(), 1);
  EXPECT_EQ(out.predicted, "Bach");
  EXPECT_TRUE(out.tie);
  for (const auto& [label, value] : out.per_class) EXPECT_EQ(value, 1.0);
}

TEST(LeaveOneOut, TwinCorpusIsAllCorrect) {
  const std::string a = repeat("0011", 8);
  const std::string b = repeat("0101", 8);
  const std::vector<LabeledScore> corpus = {
      {"a1", "A", a}, {"a2", "A", a}, {"b1", "B", b}, {"b2", "B", b}};
  const auto records = leave_one_out(corpus, EvalMethod::infoq());
  ASSERT_EQ(records.size(), 4u);
  // Expected bits from tests/tools/oracle.py.
  const double a_vs_a = 4.174925682500679, a_vs_b = 18.49690555629515;
  const double b_vs_a = 33.489750470263694, b_vs_b = 2.1749256825006786;
  for (const auto& r : records) {
    EXPECT_TRUE(r.correct) << r.id;
    ASSERT_EQ(r.outcome.per_class.size(), 2u);
    const bool is_a = r.true_label == "A";
    EXPECT_NEAR(r.outcome.per_class[0].second, is_a ? a_vs_a : b_vs_a, 1e-9);
    EXPECT_NEAR(r.outcome.per_class[1].second, is_a ? a_vs_b : b_vs_b, 1e-9);
  }
}

TEST(LeaveOneOut, SingletonClassIsAnError) {
  const std::vector<LabeledScore> corpus = {
      {"a1", "A", "0101"}, {"a2", "A", "0110"}, {"b1", "B", "1100"}};
  EXPECT_THROW(leave_one_out(corpus, EvalMethod::infoq()), ArgumentError);
  EXPECT_THROW(leave_one_out(corpus, EvalMethod::cdm(CompressorBackend::lzw())),
               ArgumentError);
}

TEST(LeaveOneOut, HeldOutScoreNeverInItsGroup) {
  SyntheticCorpusConfig cfg;
  cfg.classes = 3;
  cfg.scores_per_class = 4;
  cfg.length = 300;
  const auto corpus = synthetic_corpus(cfg);
  std::size_t folds = 0;
  LeaveOneOutOptions options;
  options.on_fold = [&](const FoldView& fold) {
    ++folds;
    EXPECT_EQ(std::count(fold.rebuilt.score_ids.begin(), fold.rebuilt.score_ids.end(),
                         fold.held_out.id),
              0);
    EXPECT_EQ(fold.rebuilt.index.size(),
              fold.full.index.size() - fold.held_out.text.size() - 1);
  };
  const auto records = leave_one_out(corpus, EvalMethod::infoq(), options);
  EXPECT_EQ(folds, corpus.size());
  EXPECT_EQ(records.size(), corpus.size());
}

TEST(LeaveOneOut, ParallelFoldsMatchSerial) {
  SyntheticCorpusConfig cfg;
  cfg.classes = 3;
  cfg.scores_per_class = 4;
  cfg.length = 400;
  const auto corpus = synthetic_corpus(cfg);
  for (const auto& method : {EvalMethod::infoq(), EvalMethod::cdm(CompressorBackend::lzw())}) {
    LeaveOneOutOptions parallel;
    parallel.threads = 4;
    const auto serial_records = leave_one_out(corpus, method);
    const auto parallel_records = leave_one_out(corpus, method, parallel);
    ASSERT_EQ(serial_records.size(), parallel_records.size());
    for (std::size_t i = 0; i < serial_records.size(); ++i) {
      EXPECT_EQ(serial_records[i].id, corpus[i].id);
      EXPECT_EQ(serial_records[i].id, parallel_records[i].id);
      EXPECT_EQ(serial_records[i].outcome.per_class, parallel_records[i].outcome.per_class);
    }
  }
}

TEST(LeaveOneOut, CdmExcludesOnlyTheHeldOutScore) {
  // With a single twin per class, 1-NN must find the twin (CDM of identical
  // strings is the smallest possible here).
  const std::vector<LabeledScore> corpus = {
      {"a1", "A", repeat("0011", 30)}, {"a2", "A", repeat("0011", 30)},
      {"b1", "B", testing::top_bit_string(120, 1)},
      {"b2", "B", testing::top_bit_string(120, 1)}};
  const auto records = leave_one_out(corpus, EvalMethod::cdm(CompressorBackend::lzw()));
  for (const auto& r : records) EXPECT_TRUE(r.correct) << r.id;
}

std::vector<EvalRecord> records_from_flags(const std::vector<bool>& flags,
                                           const std::vector<std::string>& labels) {
  std::vector<EvalRecord> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    EvalRecord r;
    r.id = "q" + std::to_string(i);
    r.true_label = labels[i % labels.size()];
    r.correct = flags[i];
    out.push_back(r);
  }
  return out;
}

TEST(AccuracyTable, CountsPerClassAndTotal) {
  const auto all_right = records_from_flags(std::vector<bool>(10, true), {"A", "B"});
  EXPECT_EQ(accuracy_table(all_right).correct, 10u);
  const auto all_wrong = records_from_flags(std::vector<bool>(10, false), {"A", "B"});
  const auto t = accuracy_table(all_wrong);
  EXPECT_EQ(t.correct, 0u);
  EXPECT_EQ(t.total, 10u);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].label, "A");
  EXPECT_EQ(t.rows[0].total, 5u);
  EXPECT_THROW(accuracy_table(std::vector<EvalRecord>{}), ArgumentError);
}

TEST(AccuracyTable, OrderInvariant) {
  SplitMix64 rng(59);
  std::vector<bool> flags;
  for (int i = 0; i < 60; ++i) flags.push_back(rng.next() & 1u);
  auto records = records_from_flags(flags, {"A", "B", "C"});
  const auto before = accuracy_table(records);
  std::shuffle(records.begin(), records.end(), std::mt19937(1));
  const auto after = accuracy_table(records);
  EXPECT_EQ(before.correct, after.correct);
  EXPECT_EQ(before.correct,
            static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true)));
  for (std::size_t i = 0; i < before.rows.size(); ++i) {
    EXPECT_EQ(before.rows[i].correct, after.rows[i].correct);
  }
}

TEST(BuildContingency, IdenticalListsHaveNoDiscordance) {
  const auto r = records_from_flags({true, false, true, true}, {"A"});
  const auto t = build_contingency(r, r);
  EXPECT_EQ(t.only_a_correct, 0u);
  EXPECT_EQ(t.only_b_correct, 0u);
  EXPECT_EQ(t.total(), 4u);
}

TEST(BuildContingency, PairsByIdNotPosition) {
  auto a = records_from_flags({true, false, true}, {"A"});
  auto b = records_from_flags({false, false, true}, {"A"});
  std::reverse(b.begin(), b.end());
  EXPECT_EQ(build_contingency(a, b), (ContingencyTable{1, 1, 0, 1}));
  b[0].id = "other";
  EXPECT_THROW(build_contingency(a, b), ArgumentError);
  b.pop_back();
  EXPECT_THROW(build_contingency(a, b), ArgumentError);
}

TEST(McNemar, ContinuityCorrectedStatistic) {
  const auto r = mcnemar({38, 17, 3, 17});
  EXPECT_NEAR(r.statistic, 8.45, 1e-12);
  EXPECT_LT(r.chi_square_p, 0.01);
  EXPECT_NEAR(r.chi_square_p, 0.0036504, 1e-6);
  EXPECT_LT(r.exact_p, 0.01);

  const auto s = mcnemar({43, 12, 5, 15});
  EXPECT_NEAR(s.statistic, 36.0 / 17.0, 1e-12);
  EXPECT_GT(s.chi_square_p, 0.05);
  EXPECT_GT(s.exact_p, 0.05);
}

TEST(McNemar, NoDiscordantPairs) {
  const auto r = mcnemar({5, 0, 0, 5});
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.chi_square_p, 1.0);
  EXPECT_EQ(r.exact_p, 1.0);
}

TEST(McNemar, SymmetricUnderSwap) {
  for (std::size_t b = 0; b < 15; ++b) {
    for (std::size_t c = 0; c < 15; ++c) {
      const auto x = mcnemar({1, b, c, 2});
      const auto y = mcnemar({1, c, b, 2});
      EXPECT_EQ(x.statistic, y.statistic);
      EXPECT_EQ(x.chi_square_p, y.chi_square_p);
      EXPECT_EQ(x.exact_p, y.exact_p);
      EXPECT_LE(x.exact_p, 1.0);
    }
  }
}

TEST(McNemar, ExactBinomialByHand) {
  // b=1, c=4: P(X <= 1) for Bin(5, 1/2) = 6/32, two-sided 12/32.
  EXPECT_NEAR(mcnemar({0, 1, 4, 0}).exact_p, 12.0 / 32.0, 1e-12);
}

TEST(ChiSquare, OneDofMatchesErfc) {
  for (double x : {0.1, 1.0, 3.841458820694124, 6.634896601021214, 10.0}) {
    EXPECT_NEAR(chi_square_survival(x, 1.0), std::erfc(std::sqrt(x / 2.0)), 1e-12);
  }
  EXPECT_NEAR(chi_square_survival(3.841458820694124, 1.0), 0.05, 1e-9);
}

}  // namespace
}  // namespace infoq
