// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "infoq/bench.h"
#include "infoq/cdm.h"
#include "infoq/classify.h"
#include "infoq/information.h"
#include "infoq/suffix_index.h"
#include "infoq/synthetic.h"
#include "oracles.h"

namespace {

using infoq::Bits;
using infoq::SplitMix64;
using infoq::SuffixIndex;
using infoq::testing::random_length;
using infoq::testing::random_string;

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

bool relative_close(Bits a, Bits b, double tol) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
  const double scale = std::max({1.0, std::abs(a.value()), std::abs(b.value())});
  return std::abs(a.value() - b.value()) <= tol * scale;
}

struct DpCase {
  std::string text;
  std::string query;
};

std::vector<DpCase> dp_cases() {
  SplitMix64 rng(101);
  std::vector<DpCase> cases;
  for (int i = 0; i < 400; ++i) {
    DpCase c;
    c.text = random_string(rng, random_length(rng, 256));
    c.query = random_string(rng, random_length(rng, 14));
    cases.push_back(std::move(c));
  }
  return cases;
}

Verdict dp_matches_brute_force() {
  const auto cases = dp_cases();
  std::size_t bad = 0;
  for (const auto& c : cases) {
    const auto index = SuffixIndex::build(c.text);
    if (!relative_close(infoq::info_min_partition(c.query, index).total,
                        infoq::brute_force_info(c.query, index), 1e-9)) {
      ++bad;
    }
  }
  return {bad == 0, std::to_string(cases.size()) + " cases, " +
                        std::to_string(bad) + " mismatches"};
}

Verdict counting_matches_scan() {
  SplitMix64 rng(103);
  std::size_t cases = 0, bad = 0;
  for (int t = 0; t < 100; ++t) {
    const std::string text = random_string(rng, random_length(rng, 2000));
    const auto index = SuffixIndex::build(text);
    for (int q = 0; q < 6; ++q) {
      const std::string pattern = random_string(rng, random_length(rng, 20));
      ++cases;
      if (index.count_occurrences(pattern) !=
          infoq::testing::naive_count(text, pattern)) {
        ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(cases) + " cases, " + std::to_string(bad) +
                        " mismatches"};
}

Verdict partition_never_worse_than_characters() {
  const auto cases = dp_cases();
  std::size_t violations = 0, strict = 0;
  for (const auto& c : cases) {
    const auto index = SuffixIndex::build(c.text);
    const Bits dp = infoq::info_min_partition(c.query, index).total;
    const Bits chars = infoq::info_characters(c.query, index);
    if (chars < dp) ++violations;
    if (dp < chars) ++strict;
  }
  // A fixed case with a repeated bigram must show the gap.
  const auto fixed = SuffixIndex::build("00100110");
  const bool fixed_strict = infoq::info_min_partition("01", fixed).total <
                            infoq::info_characters("01", fixed);
  return {violations == 0 && strict > 0 && fixed_strict,
          std::to_string(violations) + " violations, " + std::to_string(strict) +
              " strict of " + std::to_string(cases.size())};
}

Verdict published_tables_reproduce() {
  std::ifstream in(std::string(INFOQ_FIXTURE_DIR) + "/composer_tables.txt");
  if (!in) return {false, "fixture missing"};
  const std::vector<std::string> labels = {"Bach", "Chopin", "Debussy", "Mozart", "Satie"};
  std::map<std::string, int> infoq_per_class;
  int rows = 0, mismatches = 0, ties = 0, infoq_total = 0, cdm_total = 0,
      offset_total = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string id, composer;
    fields >> id >> composer;
    std::vector<std::pair<std::string, double>> per_class;
    for (const auto& label : labels) {
      double v = 0;
      fields >> v;
      per_class.emplace_back(label, v);
    }
    int infoq_flag = 0, cdm_flag = 0, offset_flag = 0;
    fields >> infoq_flag >> cdm_flag >> offset_flag;
    if (!fields) return {false, "malformed row " + id};
    ++rows;
    const auto decision = infoq::argmin_label(per_class);
    if (decision.tie) ++ties;
    const int correct = decision.label == composer ? 1 : 0;
    if (correct != infoq_flag) ++mismatches;
    infoq_per_class[composer] += correct;
    infoq_total += correct;
    cdm_total += cdm_flag;
    offset_total += offset_flag;
  }
  const std::vector<int> expected = {9, 9, 14, 13, 10};
  bool per_class_ok = true;
  std::string per_class_text;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    per_class_ok = per_class_ok && infoq_per_class[labels[i]] == expected[i];
    per_class_text += std::to_string(infoq_per_class[labels[i]]) + (i + 1 < labels.size() ? "," : "");
  }
  const bool pass = rows == 75 && mismatches == 0 && per_class_ok &&
                    infoq_total == 55 && cdm_total == 41 && offset_total == 48;
  return {pass, std::to_string(rows) + " rows, " + std::to_string(mismatches) +
                    " result mismatches, " + std::to_string(ties) + " ties, per class (" +
                    per_class_text + "), totals " + std::to_string(infoq_total) + "/" +
                    std::to_string(cdm_total) + "/" + std::to_string(offset_total)};
}

Verdict mcnemar_significance() {
  const auto strong = infoq::mcnemar({38, 17, 3, 17});
  const auto weak = infoq::mcnemar({43, 12, 5, 15});
  const bool pass = std::abs(strong.statistic - 8.45) <= 0.01 &&
                    strong.chi_square_p < 0.01 &&
                    std::abs(weak.statistic - 2.118) <= 0.01 &&
                    weak.chi_square_p > 0.05;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "(17,3): %.4f p=%.5f; (12,5): %.4f p=%.5f",
                strong.statistic, strong.chi_square_p, weak.statistic,
                weak.chi_square_p);
  return {pass, buf};
}

Verdict identity_cdm_is_one() {
  SplitMix64 rng(107);
  const auto backend = infoq::CompressorBackend::identity();
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    const std::string x = random_string(rng, random_length(rng, 1000));
    const std::string y = random_string(rng, random_length(rng, 1000));
    if (infoq::cdm(backend, x, y) != 1.0) ++bad;
  }
  return {bad == 0, "50 pairs, " + std::to_string(bad) + " not exactly 1"};
}

Verdict synthetic_accuracy() {
  const auto start = Clock::now();
  const auto corpus = infoq::synthetic_corpus({});
  const auto records = infoq::leave_one_out(corpus, infoq::EvalMethod::infoq());
  const auto table = infoq::accuracy_table(records);
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const double accuracy = static_cast<double>(table.correct) / table.total;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%zu/%zu = %.1f%%, length %zu, %.1f s",
                table.correct, table.total, 100.0 * accuracy, corpus.front().text.size(),
                seconds);
  return {accuracy >= 0.60 && seconds < 120.0, buf};
}

Verdict scaling() {
  infoq::BenchConfig config;
  config.l = 2000;
  config.c = 5;
  config.n = 20;
  // Best of three runs per g damps scheduler noise in the per-query means.
  std::map<std::size_t, double> infoq_best, cdm_best;
  bool builds_ok = true;
  for (int rep = 0; rep < 3; ++rep) {
    const auto report = infoq::bench_scaling(config, {5, 20});
    for (const auto& row : report.rows) {
      builds_ok = builds_ok && row.index_builds == config.c &&
                  row.index_builds_during_queries == 0;
      auto& ib = infoq_best[row.g];
      auto& cb = cdm_best[row.g];
      ib = rep == 0 ? row.infoq_query_seconds : std::min(ib, row.infoq_query_seconds);
      cb = rep == 0 ? row.cdm_query_seconds : std::min(cb, row.cdm_query_seconds);
    }
  }
  const double infoq_factor = infoq_best[20] / infoq_best[5];
  const double cdm_factor = cdm_best[20] / cdm_best[5];
  const bool infoq_ok = infoq_factor <= 2.0 && infoq_factor >= 0.5;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "infoq x%.2f (%.2f ms -> %.2f ms), cdm x%.2f, builds per run %s",
                infoq_factor, 1e3 * infoq_best[5], 1e3 * infoq_best[20], cdm_factor,
                builds_ok ? "= groups" : "WRONG");
  return {infoq_ok && cdm_factor >= 1.5 && builds_ok, buf};
}

Verdict leave_one_out_hygiene() {
  const auto corpus = infoq::synthetic_corpus({});
  std::size_t folds = 0, bad = 0;
  infoq::LeaveOneOutOptions options;
  options.on_fold = [&](const infoq::FoldView& fold) {
    ++folds;
    const bool length_ok = fold.rebuilt.index.size() + fold.held_out.text.size() + 1 ==
                           fold.full.index.size();
    const bool absent = std::find(fold.rebuilt.score_ids.begin(),
                                  fold.rebuilt.score_ids.end(),
                                  fold.held_out.id) == fold.rebuilt.score_ids.end();
    if (!length_ok || !absent) ++bad;
  };
  infoq::leave_one_out(corpus, infoq::EvalMethod::infoq(), options);
  return {folds == 75 && bad == 0,
          std::to_string(folds) + " folds, " + std::to_string(bad) + " violations"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1 dp-vs-brute-force", dp_matches_brute_force},
      {"2 suffix-counting", counting_matches_scan},
      {"3 partition-vs-characters", partition_never_worse_than_characters},
      {"4 published-argmin-tables", published_tables_reproduce},
      {"5 mcnemar", mcnemar_significance},
      {"6 identity-cdm", identity_cdm_is_one},
      {"7 synthetic-accuracy", synthetic_accuracy},
      {"8 scalability", scaling},
      {"9 leave-one-out-hygiene", leave_one_out_hygiene},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s criterion %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL",
                name.c_str(), v.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
