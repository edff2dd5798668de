#ifndef INFOQ_REPORT_H
#define INFOQ_REPORT_H

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "infoq/classify.h"

namespace infoq {

struct MethodRun {
  std::string name;
  std::vector<EvalRecord> records;
};

// Evaluation report layout:
//   # method <name>
//   # columns id true predicted correct <label>...
//   <id> <true> <predicted> <0|1> <value>...
//   # accuracy <name>
//   <label> <correct> <total>
//   Total <correct> <total>
// repeated per method, and when exactly two methods are given:
//   # contingency <first> <second>
//   both_correct / only_<first>_correct / only_<second>_correct / both_wrong
//   # mcnemar
//   statistic / chi_square_p / exact_p
// Values are printed with 6 decimals, or truncated to integers when
// paper_style is set. Infinite bits print as "inf".
void write_evaluation_report(std::ostream& out, std::span<const MethodRun> runs,
                             bool paper_style = false);

void write_accuracy_table(std::ostream& out, const AccuracyTable& table);

void write_mcnemar(std::ostream& out, const std::string& first,
                   const std::string& second, const ContingencyTable& table,
                   const McNemarResult& result);

}  // namespace infoq

#endif  // INFOQ_REPORT_H
