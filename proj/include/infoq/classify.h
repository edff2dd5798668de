#ifndef INFOQ_CLASSIFY_H
#define INFOQ_CLASSIFY_H

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infoq/cdm.h"
#include "infoq/suffix_index.h"

namespace infoq {

struct LabeledScore {
  std::string id;
  std::string label;
  std::string text;  // '0'/'1' piano-roll string
};

// All known scores of one class, joined with '#' and indexed once.
struct ComposerGroup {
  std::string label;
  std::vector<std::string> score_ids;
  SuffixIndex index;
};

// Throws ArgumentError on an empty member list. Member labels are not
// inspected; the group takes the given label.
ComposerGroup build_group(std::string label,
                          std::span<const LabeledScore> members);

// One group per distinct label, ordered by label.
std::vector<ComposerGroup> build_groups(std::span<const LabeledScore> corpus);

struct ClassificationOutcome {
  std::string query_id;
  // Information quantity in bits (infoq) or nearest CDM within the class
  // (cdm), in label order. Infinite bits are +inf.
  std::vector<std::pair<std::string, double>> per_class;
  std::string predicted;
  bool tie = false;
};

struct ArgminDecision {
  std::string label;
  bool tie = false;
};

// Lowest value wins; equal minima pick the lexicographically least label and
// set tie. Throws ArgumentError on an empty list.
ArgminDecision argmin_label(
    std::span<const std::pair<std::string, double>> per_class);

ClassificationOutcome classify_infoq(std::string_view query,
                                     std::span<const ComposerGroup> groups);

// k-NN over CDM(query, known). The k nearest vote; vote ties go to the label
// with the smaller mean CDM over its voters, then the lexicographically least
// label. tie is set whenever the lexicographic rule decided the selection of
// neighbours or the winner.
ClassificationOutcome classify_cdm(std::string_view query,
                                   std::span<const LabeledScore> known,
                                   const CompressorBackend& backend,
                                   std::size_t k);

struct EvalMethod {
  enum class Kind { kInfoq, kCdm };
  Kind kind = Kind::kInfoq;
  CompressorBackend backend = CompressorBackend::lzw();
  std::size_t k = 1;

  static EvalMethod infoq() { return {}; }
  static EvalMethod cdm(CompressorBackend backend, std::size_t k = 1) {
    return {Kind::kCdm, std::move(backend), k};
  }
  std::string name() const;
};

struct EvalRecord {
  std::string id;
  std::string true_label;
  ClassificationOutcome outcome;
  bool correct = false;
};

// What the infoq fold saw: the held-out score and its class rebuilt without it.
struct FoldView {
  const LabeledScore& held_out;
  const ComposerGroup& rebuilt;
  const ComposerGroup& full;
};

struct LeaveOneOutOptions {
  unsigned threads = 1;
  // Called once per infoq fold, possibly from several threads at once.
  std::function<void(const FoldView&)> on_fold;
};

// One record per corpus score, in corpus order. For infoq the held-out
// score's own group is rebuilt without it; for cdm it is dropped from the
// known list. Throws ArgumentError when a class has fewer than two scores.
std::vector<EvalRecord> leave_one_out(std::span<const LabeledScore> corpus,
                                      const EvalMethod& method,
                                      const LeaveOneOutOptions& options = {});

struct AccuracyTable {
  struct Row {
    std::string label;
    std::size_t correct = 0;
    std::size_t total = 0;
  };
  std::vector<Row> rows;  // label order
  std::size_t correct = 0;
  std::size_t total = 0;
};

AccuracyTable accuracy_table(std::span<const EvalRecord> records);

struct ContingencyTable {
  std::size_t both_correct = 0;  // a
  std::size_t only_a_correct = 0;  // b
  std::size_t only_b_correct = 0;  // c
  std::size_t both_wrong = 0;    // d

  std::size_t total() const {
    return both_correct + only_a_correct + only_b_correct + both_wrong;
  }
  bool operator==(const ContingencyTable&) const = default;
};

// Pairs records by query id. Throws ArgumentError when the id sets differ.
ContingencyTable build_contingency(std::span<const EvalRecord> a,
                                   std::span<const EvalRecord> b);

// Same, from parallel correctness flags.
ContingencyTable build_contingency(std::span<const bool> a_correct,
                                   std::span<const bool> b_correct);

struct McNemarResult {
  double statistic = 0.0;  // continuity corrected
  double chi_square_p = 1.0;
  double exact_p = 1.0;    // two-sided binomial over the discordant pairs
};

McNemarResult mcnemar(const ContingencyTable& table);

// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, double dof);

}  // namespace infoq

#endif  // INFOQ_CLASSIFY_H
