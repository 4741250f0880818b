#include "yayambo/synth.hpp"

#include <algorithm>
#include <random>

namespace yayambo {

std::string_view classifier_name(ArtificialClassifier c) {
  switch (c) {
    case ArtificialClassifier::F1: return "f1";
    case ArtificialClassifier::F2: return "f2";
    case ArtificialClassifier::F3: return "f3";
    case ArtificialClassifier::F4: return "f4";
    case ArtificialClassifier::F5: return "f5";
  }
  return "unknown";
}

std::optional<ArtificialClassifier> parse_classifier(std::string_view name) {
  for (auto c : {ArtificialClassifier::F1, ArtificialClassifier::F2, ArtificialClassifier::F3,
                 ArtificialClassifier::F4, ArtificialClassifier::F5}) {
    const auto canon = classifier_name(c);
    if (name == canon || (name.size() == 2 && name[0] == 'F' && name[1] == canon[1])) return c;
  }
  return std::nullopt;
}

void ArtificialEnsembleSpec::validate() const {
  if (n_per_class == 0) throw Error(ErrorCode::InvalidParams, "n_per_class must be positive");
  if (classifiers.empty()) throw Error(ErrorCode::InvalidParams, "no classifiers requested");
}

namespace {

class OpenUnitStream {
 public:
  explicit OpenUnitStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    for (;;) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

 private:
  std::mt19937_64 engine_;
};

Distribution on_true_class(double p_true, std::size_t label) {
  return label == 0 ? normalize({p_true, 1.0 - p_true}) : normalize({1.0 - p_true, p_true});
}

Distribution first_class(double p0) { return normalize({p0, 1.0 - p0}); }

bool wants(const ArtificialEnsembleSpec& spec, ArtificialClassifier c) {
  return std::find(spec.classifiers.begin(), spec.classifiers.end(), c) != spec.classifiers.end();
}

}  // namespace

SyntheticDataset generate(const ArtificialEnsembleSpec& spec) {
  spec.validate();
  const std::size_t n = 2 * spec.n_per_class;
  const bool with_f4 = wants(spec, ArtificialClassifier::F4);
  const bool with_f5 = wants(spec, ArtificialClassifier::F5);

  SyntheticDataset out;
  out.labels.reserve(n);
  out.outputs.resize(spec.classifiers.size());
  for (auto& column : out.outputs) column.reserve(n);

  OpenUnitStream stream(spec.seed);
  for (std::size_t obs = 0; obs < n; ++obs) {
    const std::size_t label = obs < spec.n_per_class ? 0 : 1;
    out.labels.push_back(label);

    std::optional<Distribution> f4, f5;
    if (with_f4) {
      f4 = stream.next() < 0.65 ? on_true_class(0.7, label) : first_class(stream.next());
    }
    if (with_f5) f5 = first_class(stream.next());

    for (std::size_t c = 0; c < spec.classifiers.size(); ++c) {
      switch (spec.classifiers[c]) {
        case ArtificialClassifier::F1: out.outputs[c].push_back(on_true_class(0.51, label)); break;
        case ArtificialClassifier::F2: out.outputs[c].push_back(on_true_class(0.9, label)); break;
        case ArtificialClassifier::F3: out.outputs[c].push_back(on_true_class(0.49, label)); break;
        case ArtificialClassifier::F4: out.outputs[c].push_back(*f4); break;
        case ArtificialClassifier::F5: out.outputs[c].push_back(*f5); break;
      }
    }
  }
  return out;
}

}  // namespace yayambo
