// yayambo: fuse, evaluate and compare classifier probability outputs.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "yayambo/commands.hpp"

namespace {

using namespace yayambo;

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::string format = "jsonl";
  std::string rule = "all";
  double epsilon = ConsensusParams{}.epsilon;
  double epsilon0 = ConsensusParams{}.epsilon0;
  std::size_t max_iter = ConsensusParams{}.max_iter;
  bool trace = false;
  std::uint64_t seed = 0;
  double floor = kDefaultCrossEntropyFloor;
  bool json = false;
  std::size_t n_per_class = 5000;
  std::vector<std::string> classifiers{"f1", "f2", "f3", "f4", "f5"};
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RecordFormat record_format(const Options& opt) {
  auto f = parse_format(opt.format);
  if (!f) throw UsageError("unknown format '" + opt.format + "'");
  return *f;
}

RunConfig run_config(const Options& opt, const CLI::App& sub) {
  RunConfig cfg;
  auto rules = parse_rule_selection(opt.rule);
  if (!rules) throw UsageError("unknown rule '" + opt.rule + "'");
  cfg.rules = std::move(*rules);
  cfg.params = ConsensusParams{opt.epsilon, opt.epsilon0, opt.max_iter};
  cfg.trace = opt.trace;
  if (sub.count("--seed") > 0) cfg.seed = opt.seed;
  cfg.floor = opt.floor;
  cfg.validate();
  return cfg;
}

// Writes to --output, or stdout when it is "-".
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void add_io_flags(CLI::App* sub, Options& opt) {
  sub->add_option("input", opt.input, "Prediction file, '-' for stdin")->capture_default_str();
  sub->add_option("--format", opt.format, "Input record format (jsonl|csv)")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  sub->add_option("--output", opt.output, "Output path, '-' for stdout")->capture_default_str();
}

void add_fusion_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--rule", opt.rule, "sum|product|majority|borda|yayambo|all")
      ->capture_default_str();
  sub->add_option("--epsilon", opt.epsilon, "Consensus threshold per member")
      ->capture_default_str();
  sub->add_option("--epsilon0", opt.epsilon0, "Log smoothing term")->capture_default_str();
  sub->add_option("--max-iter", opt.max_iter, "Iteration cap")->capture_default_str();
  sub->add_option("--seed", opt.seed, "Accepted for symmetry with synth; fusion is deterministic");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuse classifier probability outputs by iterative consensus and baseline rules"};
  app.require_subcommand(1);
  Options opt;

  auto* fuse = app.add_subcommand("fuse", "Fuse every record and write JSONL results");
  add_io_flags(fuse, opt);
  add_fusion_flags(fuse, opt);
  fuse->add_flag("--trace", opt.trace, "Include consensus trajectories");

  auto* eval = app.add_subcommand("eval", "Score classifiers and fusion rules against labels");
  add_io_flags(eval, opt);
  add_fusion_flags(eval, opt);
  eval->add_option("--floor", opt.floor, "Probability floor for cross-entropy")
      ->capture_default_str();
  eval->add_flag("--json", opt.json, "Write the report as JSON instead of a text table");

  auto* pairwise = app.add_subcommand("pairwise", "Pairwise disagreement between classifiers");
  add_io_flags(pairwise, opt);
  pairwise->add_flag("--json", opt.json, "Write the matrices as JSON instead of text tables");

  auto* synth = app.add_subcommand("synth", "Generate the artificial f1..f5 ensemble");
  synth->add_option("--classifiers", opt.classifiers, "Subset of f1..f5, in column order")
      ->delimiter(',')
      ->capture_default_str();
  synth->add_option("--n-per-class", opt.n_per_class, "Observations per class")
      ->capture_default_str();
  synth->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  synth->add_option("--format", opt.format, "Output record format (jsonl|csv)")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  synth->add_option("--output", opt.output, "Output path, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth->parsed()) {
      ArtificialEnsembleSpec spec;
      spec.n_per_class = opt.n_per_class;
      spec.seed = opt.seed;
      for (const auto& name : opt.classifiers) {
        auto c = parse_classifier(name);
        if (!c) throw UsageError("unknown classifier '" + name + "'");
        spec.classifiers.push_back(*c);
      }
      spec.validate();
      OutputSink sink(opt.output);
      cmd_synth(spec, record_format(opt), sink.stream());
      return kExitOk;
    }

    const auto records = parse_predictions(opt.input, record_format(opt));

    if (fuse->parsed()) {
      const auto cfg = run_config(opt, *fuse);
      OutputSink sink(opt.output);
      return cmd_fuse(records, cfg, sink.stream(), std::cerr);
    }
    if (eval->parsed()) {
      const auto cfg = run_config(opt, *eval);
      const auto report = cmd_eval(records, cfg, std::cerr);
      OutputSink sink(opt.output);
      sink.stream() << (opt.json ? eval_to_json(report) : eval_to_text(report));
      return report.any_failures() ? kExitRecordFailure : kExitOk;
    }
    if (pairwise->parsed()) {
      const auto report = cmd_pairwise(records);
      OutputSink sink(opt.output);
      sink.stream() << (opt.json ? pairwise_to_json(report) : pairwise_to_text(report));
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RecordError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
