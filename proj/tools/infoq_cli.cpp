// Command-line front end: encode scores, build indexes, compute information
// quantities and CDM values, classify, evaluate, test significance, bench.
//
// Exit status: 0 success, 2 usage or input error, 3 backend failure.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "infoq/bench.h"
#include "infoq/cdm.h"
#include "infoq/classify.h"
#include "infoq/corpus.h"
#include "infoq/errors.h"
#include "infoq/information.h"
#include "infoq/report.h"
#include "infoq/score_codec.h"
#include "infoq/suffix_index.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBackend = 3;

struct RunConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> methods;
  std::string backend = "lzw";
  std::string external_cmd;
  std::size_t offset = 0;
  std::size_t k = 1;
  std::string out;
  std::uint64_t seed = infoq::kDefaultSeed;
  bool paper_style = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  int verbosity = 0;

  // bench
  std::size_t l = 2000;
  std::size_t c = 5;
  std::string g_list = "5,10,20";
  std::size_t n = 10;

  // mcnemar
  std::vector<std::size_t> cells;
};

infoq::CompressorBackend make_backend(const RunConfig& cfg) {
  if (cfg.backend == "identity") return infoq::CompressorBackend::identity(cfg.offset);
  if (cfg.backend == "lzw") return infoq::CompressorBackend::lzw(cfg.offset);
  if (cfg.backend == "external") {
    if (cfg.external_cmd.empty()) {
      throw infoq::ArgumentError("--backend external needs --external-cmd");
    }
    return infoq::CompressorBackend::external(cfg.external_cmd, cfg.offset);
  }
  throw infoq::ArgumentError("unknown backend '" + cfg.backend + "'");
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw infoq::IoError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string load_query(const std::string& path) {
  std::string query = infoq::load_encoded(path);
  if (!infoq::is_binary_string(query)) {
    throw infoq::ArgumentError("query '" + path +
                               "' must be a non-empty '0'/'1' string");
  }
  return query;
}

void print_outcome(std::ostream& out, const infoq::ClassificationOutcome& o,
                   bool as_bits, bool paper_style) {
  for (const auto& [label, value] : o.per_class) {
    const infoq::Bits bits(value);
    out << label << ' '
        << (paper_style && as_bits ? infoq::format_bits_truncated(bits)
                                   : infoq::format_bits(bits))
        << '\n';
  }
  out << "predicted " << o.predicted << (o.tie ? " tie" : "") << '\n';
}

bool is_sqix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  in.read(magic, 4);
  return in && std::string_view(magic, 4) == "SQIX";
}

int cmd_encode(const RunConfig& cfg) {
  const std::string& path = cfg.inputs.at(0);
  const std::string encoded = infoq::load_encoded(path);
  const std::string out_path = cfg.out.empty() ? path + ".bits" : cfg.out;
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw infoq::IoError("cannot write '" + out_path + "'");
  out << encoded << '\n';
  std::cout << encoded.size() << '\n';
  return kExitOk;
}

int cmd_index(const RunConfig& cfg) {
  if (cfg.out.empty()) throw infoq::ArgumentError("index needs --out <path>");
  std::vector<std::string> encoded;
  for (const auto& p : cfg.inputs) encoded.push_back(infoq::load_encoded(p));
  const auto index = infoq::SuffixIndex::build(infoq::concat_group(
      std::span<const std::string>(encoded.data(), encoded.size())));
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw infoq::IoError("cannot write '" + cfg.out + "'");
  index.save(out);
  std::cout << index.size() << '\n';
  return kExitOk;
}

int cmd_infoq(const RunConfig& cfg) {
  const std::string query = load_query(cfg.inputs.at(0));
  const std::string& reference = cfg.inputs.at(1);
  Output out(cfg.out);
  if (is_sqix(reference)) {
    std::ifstream in(reference, std::ios::binary);
    const auto index = infoq::SuffixIndex::load(in);
    infoq::write_info_report(out.stream(),
                             infoq::info_min_partition(query, index));
    return kExitOk;
  }
  const auto corpus = infoq::load_corpus(reference);
  const auto groups = infoq::build_groups(corpus);
  print_outcome(out.stream(), infoq::classify_infoq(query, groups), true,
                cfg.paper_style);
  return kExitOk;
}

int cmd_cdm(const RunConfig& cfg) {
  const std::string x = infoq::load_encoded(cfg.inputs.at(0));
  const std::string y = infoq::load_encoded(cfg.inputs.at(1));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", infoq::cdm(make_backend(cfg), x, y));
  Output out(cfg.out);
  out.stream() << buf << '\n';
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg) {
  const std::string query = load_query(cfg.inputs.at(0));
  const auto corpus = infoq::load_corpus(cfg.inputs.at(1));
  const std::string method = cfg.methods.empty() ? "infoq" : cfg.methods.front();
  Output out(cfg.out);
  if (method == "infoq") {
    print_outcome(out.stream(),
                  infoq::classify_infoq(query, infoq::build_groups(corpus)),
                  true, cfg.paper_style);
  } else {
    print_outcome(out.stream(),
                  infoq::classify_cdm(query, corpus, make_backend(cfg), cfg.k),
                  false, false);
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg) {
  const auto corpus = infoq::load_corpus(cfg.inputs.at(0));
  std::vector<std::string> methods = cfg.methods;
  if (methods.empty()) methods.push_back("infoq");
  if (methods.size() > 2) {
    throw infoq::ArgumentError("evaluate takes at most two --method flags");
  }
  if (methods.size() == 2 && methods[0] == methods[1]) {
    throw infoq::ArgumentError("the two --method flags must differ");
  }
  infoq::LeaveOneOutOptions options;
  options.threads = cfg.threads;
  std::vector<infoq::MethodRun> runs;
  for (const auto& m : methods) {
    const infoq::EvalMethod method =
        m == "infoq" ? infoq::EvalMethod::infoq()
                     : infoq::EvalMethod::cdm(make_backend(cfg), cfg.k);
    if (cfg.verbosity > 0) std::cerr << "evaluating " << m << '\n';
    runs.push_back({m, infoq::leave_one_out(corpus, method, options)});
  }
  Output out(cfg.out);
  infoq::write_evaluation_report(out.stream(), runs, cfg.paper_style);
  return kExitOk;
}

int cmd_mcnemar(const RunConfig& cfg) {
  if (cfg.cells.size() != 4) {
    throw infoq::ArgumentError("mcnemar takes four counts: a b c d");
  }
  infoq::ContingencyTable t{cfg.cells[0], cfg.cells[1], cfg.cells[2],
                            cfg.cells[3]};
  Output out(cfg.out);
  infoq::write_mcnemar(out.stream(), "A", "B", t, infoq::mcnemar(t));
  return kExitOk;
}

std::vector<std::size_t> parse_g_list(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size() || v == 0) {
      throw infoq::ArgumentError("bad --g entry '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw infoq::ArgumentError("--g list is empty");
  return values;
}

int cmd_bench(const RunConfig& cfg) {
  const auto g_values = parse_g_list(cfg.g_list);
  infoq::BenchConfig config{cfg.l, cfg.c, g_values.front(), cfg.n};
  config.validate();
  const auto report =
      infoq::bench_scaling(config, g_values, cfg.seed, make_backend(cfg));
  Output out(cfg.out);
  infoq::write_bench_report(out.stream(), report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composer classification by information quantity and CDM"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto add_backend = [&](CLI::App* sub) {
    sub->add_option("--backend", cfg.backend, "identity | lzw | external")
        ->check(CLI::IsMember({"identity", "lzw", "external"}));
    sub->add_option("--external-cmd", cfg.external_cmd,
                    "compressor command, {in} is the input file");
    sub->add_option("--offset", cfg.offset, "bytes subtracted from each size");
  };

  auto* encode = app.add_subcommand("encode", "encode a score file to '0'/'1'");
  encode->add_option("score", cfg.inputs, "score file")->required()->expected(1);
  encode->add_option("--out", cfg.out, "output path (default <score>.bits)");

  auto* index = app.add_subcommand("index", "build and save a group index");
  index->add_option("scores", cfg.inputs, "group members")->required();
  index->add_option("--out", cfg.out, "SQIX output path")->required();

  auto* infoq_cmd = app.add_subcommand(
      "infoq", "information quantity of a query per class (or vs one index)");
  infoq_cmd->add_option("files", cfg.inputs, "query, then manifest or SQIX index")
      ->required()
      ->expected(2);
  infoq_cmd->add_flag("--paper-style", cfg.paper_style, "truncate to integers");
  infoq_cmd->add_option("--out", cfg.out);

  auto* cdm_cmd = app.add_subcommand("cdm", "CDM(x, y)");
  cdm_cmd->add_option("files", cfg.inputs, "x y")->required()->expected(2);
  add_backend(cdm_cmd);
  cdm_cmd->add_option("--out", cfg.out);

  auto* classify = app.add_subcommand("classify", "classify one query");
  classify->add_option("files", cfg.inputs, "query manifest")->required()->expected(2);
  classify->add_option("--method", cfg.methods, "infoq | cdm")
      ->check(CLI::IsMember({"infoq", "cdm"}))
      ->expected(1);
  classify->add_option("--k", cfg.k, "neighbours for cdm")->check(CLI::PositiveNumber);
  classify->add_flag("--paper-style", cfg.paper_style);
  add_backend(classify);
  classify->add_option("--out", cfg.out);

  auto* evaluate = app.add_subcommand("evaluate", "leave-one-out evaluation");
  evaluate->add_option("manifest", cfg.inputs)->required()->expected(1);
  evaluate->add_option("--method", cfg.methods, "infoq | cdm (repeatable)")
      ->check(CLI::IsMember({"infoq", "cdm"}))
      ->expected(1)
      ->take_all();
  evaluate->add_option("--k", cfg.k)->check(CLI::PositiveNumber);
  evaluate->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
  evaluate->add_flag("--paper-style", cfg.paper_style);
  evaluate->add_option("--out", cfg.out);
  add_backend(evaluate);

  auto* mcnemar = app.add_subcommand("mcnemar", "McNemar test on a 2x2 table");
  mcnemar->add_option("cells", cfg.cells, "a b c d")->required()->expected(4);
  mcnemar->add_option("--out", cfg.out);

  auto* bench = app.add_subcommand("bench", "scaling benchmark");
  bench->add_option("--l", cfg.l, "string length");
  bench->add_option("--c", cfg.c, "classes");
  bench->add_option("--g", cfg.g_list, "comma-separated scores per class");
  bench->add_option("--n", cfg.n, "queries");
  bench->add_option("--seed", cfg.seed);
  bench->add_option("--out", cfg.out);
  add_backend(bench);

  app.add_flag("-v,--verbose", cfg.verbosity, "more diagnostics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*encode) return cmd_encode(cfg);
    if (*index) return cmd_index(cfg);
    if (*infoq_cmd) return cmd_infoq(cfg);
    if (*cdm_cmd) return cmd_cdm(cfg);
    if (*classify) return cmd_classify(cfg);
    if (*evaluate) return cmd_evaluate(cfg);
    if (*mcnemar) return cmd_mcnemar(cfg);
    if (*bench) return cmd_bench(cfg);
  } catch (const infoq::BackendError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
