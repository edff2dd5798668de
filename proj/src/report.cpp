#include "infoq/report.h"

#include <cstdio>
#include <ostream>

#include "infoq/information.h"

namespace infoq {
namespace {

std::string format_value(double v, bool paper_style) {
  const Bits bits(v);
  return paper_style ? format_bits_truncated(bits) : format_bits(bits);
}

std::string format_probability(double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", p);
  return buf;
}

}  // namespace

void write_accuracy_table(std::ostream& out, const AccuracyTable& table) {
  for (const auto& row : table.rows) {
    out << row.label << ' ' << row.correct << ' ' << row.total << '\n';
  }
  out << "Total " << table.correct << ' ' << table.total << '\n';
}

void write_mcnemar(std::ostream& out, const std::string& first,
                   const std::string& second, const ContingencyTable& table,
                   const McNemarResult& result) {
  out << "# contingency " << first << ' ' << second << '\n';
  out << "both_correct " << table.both_correct << '\n';
  out << "only_" << first << "_correct " << table.only_a_correct << '\n';
  out << "only_" << second << "_correct " << table.only_b_correct << '\n';
  out << "both_wrong " << table.both_wrong << '\n';
  out << "# mcnemar\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", result.statistic);
  out << "statistic " << buf << '\n';
  out << "chi_square_p " << format_probability(result.chi_square_p) << '\n';
  out << "exact_p " << format_probability(result.exact_p) << '\n';
}

void write_evaluation_report(std::ostream& out, std::span<const MethodRun> runs,
                             bool paper_style) {
  for (const auto& run : runs) {
    out << "# method " << run.name << '\n';
    out << "# columns id true predicted correct";
    if (!run.records.empty()) {
      for (const auto& [label, value] : run.records.front().outcome.per_class) {
        out << ' ' << label;
      }
    }
    out << '\n';
    for (const auto& r : run.records) {
      out << r.id << ' ' << r.true_label << ' ' << r.outcome.predicted << ' '
          << (r.correct ? 1 : 0);
      for (const auto& [label, value] : r.outcome.per_class) {
        out << ' ' << format_value(value, paper_style);
      }
      out << '\n';
    }
    out << "# accuracy " << run.name << '\n';
    write_accuracy_table(out, accuracy_table(run.records));
  }
  if (runs.size() == 2) {
    const auto table = build_contingency(runs[0].records, runs[1].records);
    write_mcnemar(out, runs[0].name, runs[1].name, table, mcnemar(table));
  }
}

}  // namespace infoq
