#include "infoq/classify.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "infoq/errors.h"
#include "infoq/information.h"
#include "infoq/score_codec.h"

namespace infoq {
namespace {

struct Neighbour {
  double distance;
  const LabeledScore* score;
};

// k-NN core shared by classify_cdm and the leave-one-out driver, which
// precomputes every C(y) once. skip, when set, names a known index to ignore.
ClassificationOutcome knn_cdm(std::string_view query, std::size_t query_size,
                              std::span<const LabeledScore> known,
                              std::span<const std::size_t> known_sizes,
                              const CompressorBackend& backend, std::size_t k,
                              std::optional<std::size_t> skip) {
  std::vector<Neighbour> neighbours;
  neighbours.reserve(known.size());
  for (std::size_t i = 0; i < known.size(); ++i) {
    if (skip && *skip == i) continue;
    neighbours.push_back({cdm_with_sizes(backend, query, known[i].text,
                                         query_size, known_sizes[i]),
                          &known[i]});
  }
  if (k < 1 || k > neighbours.size()) {
    throw ArgumentError("classify_cdm: k=" + std::to_string(k) +
                        " outside 1.." + std::to_string(neighbours.size()));
  }
  std::stable_sort(neighbours.begin(), neighbours.end(),
                   [](const Neighbour& a, const Neighbour& b) {
                     if (a.distance != b.distance) return a.distance < b.distance;
                     return a.score->label < b.score->label;
                   });

  ClassificationOutcome out;
  std::map<std::string, double> nearest_per_class;
  for (const Neighbour& nb : neighbours) {
    auto [it, inserted] = nearest_per_class.emplace(nb.score->label, nb.distance);
    if (!inserted) it->second = std::min(it->second, nb.distance);
  }
  out.per_class.assign(nearest_per_class.begin(), nearest_per_class.end());

  // A distance tie across the k-th boundary was settled by label order.
  if (k < neighbours.size() &&
      neighbours[k].distance == neighbours[k - 1].distance &&
      neighbours[k].score->label != neighbours[k - 1].score->label) {
    out.tie = true;
  }

  struct Vote {
    std::size_t count = 0;
    double sum = 0.0;
  };
  std::map<std::string, Vote> votes;
  for (std::size_t i = 0; i < k; ++i) {
    Vote& v = votes[neighbours[i].score->label];
    ++v.count;
    v.sum += neighbours[i].distance;
  }
  const std::string* winner = nullptr;
  const Vote* best = nullptr;
  bool lexicographic = false;
  // Map order is label order, so the first of equals is the least label.
  for (const auto& [label, vote] : votes) {
    if (best == nullptr) {
      winner = &label;
      best = &vote;
      continue;
    }
    const double mean = vote.sum / static_cast<double>(vote.count);
    const double best_mean = best->sum / static_cast<double>(best->count);
    if (vote.count > best->count ||
        (vote.count == best->count && mean < best_mean)) {
      winner = &label;
      best = &vote;
      lexicographic = false;
    } else if (vote.count == best->count && mean == best_mean) {
      lexicographic = true;
    }
  }
  out.predicted = *winner;
  out.tie = out.tie || lexicographic;
  return out;
}

void require_classes_of_two(std::span<const LabeledScore> corpus) {
  if (corpus.empty()) throw ArgumentError("leave_one_out: empty corpus");
  std::map<std::string, std::size_t> sizes;
  for (const auto& s : corpus) ++sizes[s.label];
  for (const auto& [label, n] : sizes) {
    if (n < 2) {
      throw ArgumentError("leave_one_out: class '" + label +
                          "' has a single score");
    }
  }
}

template <typename Fn>
void run_folds(std::size_t count, unsigned threads, Fn&& fold) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fold(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fold(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ComposerGroup build_group(std::string label,
                          std::span<const LabeledScore> members) {
  if (members.empty()) {
    throw ArgumentError("build_group: class '" + label + "' has no scores");
  }
  std::vector<std::string_view> texts;
  std::vector<std::string> ids;
  texts.reserve(members.size());
  ids.reserve(members.size());
  for (const auto& m : members) {
    texts.push_back(m.text);
    ids.push_back(m.id);
  }
  return {std::move(label), std::move(ids),
          SuffixIndex::build(concat_group(texts))};
}

std::vector<ComposerGroup> build_groups(std::span<const LabeledScore> corpus) {
  std::map<std::string, std::vector<LabeledScore>> by_label;
  for (const auto& s : corpus) by_label[s.label].push_back(s);
  std::vector<ComposerGroup> groups;
  for (auto& [label, members] : by_label) {
    groups.push_back(build_group(label, members));
  }
  return groups;
}

ArgminDecision argmin_label(
    std::span<const std::pair<std::string, double>> per_class) {
  if (per_class.empty()) throw ArgumentError("argmin_label: no classes");
  const auto* best = &per_class.front();
  bool tie = false;
  for (const auto& entry : per_class.subspan(1)) {
    if (entry.second < best->second) {
      best = &entry;
      tie = false;
    } else if (entry.second == best->second) {
      tie = true;
      if (entry.first < best->first) best = &entry;
    }
  }
  return {best->first, tie};
}

ClassificationOutcome classify_infoq(std::string_view query,
                                     std::span<const ComposerGroup> groups) {
  if (groups.empty()) throw ArgumentError("classify_infoq: no groups");
  ClassificationOutcome out;
  for (const auto& g : groups) {
    out.per_class.emplace_back(g.label,
                               info_min_partition(query, g.index).total.value());
  }
  std::sort(out.per_class.begin(), out.per_class.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  auto decision = argmin_label(out.per_class);
  out.predicted = std::move(decision.label);
  out.tie = decision.tie;
  return out;
}

ClassificationOutcome classify_cdm(std::string_view query,
                                   std::span<const LabeledScore> known,
                                   const CompressorBackend& backend,
                                   std::size_t k) {
  if (k < 1 || k > known.size()) {
    throw ArgumentError("classify_cdm: k=" + std::to_string(k) +
                        " outside 1.." + std::to_string(known.size()));
  }
  std::vector<std::size_t> sizes;
  sizes.reserve(known.size());
  for (const auto& s : known) sizes.push_back(compress_size(backend, s.text));
  return knn_cdm(query, compress_size(backend, query), known, sizes, backend,
                 k, std::nullopt);
}

std::string EvalMethod::name() const {
  return kind == Kind::kInfoq ? "infoq" : "cdm";
}

std::vector<EvalRecord> leave_one_out(std::span<const LabeledScore> corpus,
                                      const EvalMethod& method,
                                      const LeaveOneOutOptions& options) {
  require_classes_of_two(corpus);
  std::vector<EvalRecord> records(corpus.size());

  if (method.kind == EvalMethod::Kind::kInfoq) {
    const std::vector<ComposerGroup> full = build_groups(corpus);
    run_folds(corpus.size(), options.threads, [&](std::size_t q) {
      const LabeledScore& held_out = corpus[q];
      std::vector<LabeledScore> rest;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (i != q && corpus[i].label == held_out.label) rest.push_back(corpus[i]);
      }
      auto own = std::find_if(full.begin(), full.end(), [&](const auto& g) {
        return g.label == held_out.label;
      });
      ComposerGroup rebuilt = build_group(held_out.label, rest);
      if (options.on_fold) options.on_fold({held_out, rebuilt, *own});

      // Groups other than the held-out score's own are shared read-only.
      std::vector<std::pair<std::string, double>> per_class;
      for (const auto& g : full) {
        const SuffixIndex& index = (&g == &*own) ? rebuilt.index : g.index;
        per_class.emplace_back(
            g.label, info_min_partition(held_out.text, index).total.value());
      }
      EvalRecord& rec = records[q];
      rec.outcome.per_class = std::move(per_class);
      auto decision = argmin_label(rec.outcome.per_class);
      rec.outcome.predicted = std::move(decision.label);
      rec.outcome.tie = decision.tie;
    });
  } else {
    std::vector<std::size_t> sizes(corpus.size());
    run_folds(corpus.size(), options.threads, [&](std::size_t i) {
      sizes[i] = compress_size(method.backend, corpus[i].text);
    });
    run_folds(corpus.size(), options.threads, [&](std::size_t q) {
      records[q].outcome = knn_cdm(corpus[q].text, sizes[q], corpus, sizes,
                                   method.backend, method.k, q);
    });
  }

  for (std::size_t q = 0; q < corpus.size(); ++q) {
    EvalRecord& rec = records[q];
    rec.id = corpus[q].id;
    rec.true_label = corpus[q].label;
    rec.outcome.query_id = corpus[q].id;
    rec.correct = rec.outcome.predicted == rec.true_label;
  }
  return records;
}

AccuracyTable accuracy_table(std::span<const EvalRecord> records) {
  if (records.empty()) throw ArgumentError("accuracy_table: no records");
  std::map<std::string, AccuracyTable::Row> rows;
  AccuracyTable table;
  for (const auto& r : records) {
    auto& row = rows[r.true_label];
    row.label = r.true_label;
    ++row.total;
    ++table.total;
    if (r.correct) {
      ++row.correct;
      ++table.correct;
    }
  }
  for (auto& [label, row] : rows) table.rows.push_back(std::move(row));
  return table;
}

ContingencyTable build_contingency(std::span<const bool> a_correct,
                                   std::span<const bool> b_correct) {
  if (a_correct.size() != b_correct.size()) {
    throw ArgumentError("build_contingency: flag lists differ in length");
  }
  ContingencyTable t;
  for (std::size_t i = 0; i < a_correct.size(); ++i) {
    const bool a = a_correct[i];
    const bool b = b_correct[i];
    if (a && b) {
      ++t.both_correct;
    } else if (a) {
      ++t.only_a_correct;
    } else if (b) {
      ++t.only_b_correct;
    } else {
      ++t.both_wrong;
    }
  }
  return t;
}

ContingencyTable build_contingency(std::span<const EvalRecord> a,
                                   std::span<const EvalRecord> b) {
  if (a.size() != b.size()) {
    throw ArgumentError("build_contingency: record lists differ in size");
  }
  std::unordered_map<std::string, bool> b_by_id;
  for (const auto& r : b) {
    if (!b_by_id.emplace(r.id, r.correct).second) {
      throw ArgumentError("build_contingency: duplicate id '" + r.id + "'");
    }
  }
  auto a_flags = std::make_unique<bool[]>(a.size());
  auto b_flags = std::make_unique<bool[]>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto it = b_by_id.find(a[i].id);
    if (it == b_by_id.end()) {
      throw ArgumentError("build_contingency: id '" + a[i].id +
                          "' missing from second record list");
    }
    a_flags[i] = a[i].correct;
    b_flags[i] = it->second;
    b_by_id.erase(it);
  }
  return build_contingency(std::span<const bool>(a_flags.get(), a.size()),
                           std::span<const bool>(b_flags.get(), a.size()));
}

double chi_square_survival(double statistic, double dof) {
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

McNemarResult mcnemar(const ContingencyTable& table) {
  McNemarResult r;
  const std::size_t b = table.only_a_correct;
  const std::size_t c = table.only_b_correct;
  const std::size_t n = b + c;
  if (n == 0) return r;
  const double diff = std::abs(static_cast<double>(b) - static_cast<double>(c));
  const double corrected = std::max(diff - 1.0, 0.0);
  r.statistic = corrected * corrected / static_cast<double>(n);
  r.chi_square_p = chi_square_survival(r.statistic, 1.0);
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n),
                                                        0.5);
  const double tail = boost::math::cdf(dist, static_cast<double>(std::min(b, c)));
  r.exact_p = std::min(1.0, 2.0 * tail);
  return r;
}

}  // namespace infoq
