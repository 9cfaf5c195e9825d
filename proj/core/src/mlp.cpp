#include "jacq/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jacq/random.hpp"

namespace jacq {

using nlohmann::json;

MlpModel MlpModel::zeros(int input_dim, int hidden_dim) {
  if (input_dim < 1 || hidden_dim < 1) throw std::invalid_argument("model dimensions must be positive");
  MlpModel m;
  m.input_dim = input_dim;
  m.hidden_dim = hidden_dim;
  m.w1.assign(static_cast<std::size_t>(hidden_dim) * input_dim, 0.0);
  m.b1.assign(hidden_dim, 0.0);
  m.w2.assign(hidden_dim, 0.0);
  m.feat_mean.assign(input_dim, 0.0);
  m.feat_std.assign(input_dim, 1.0);
  return m;
}

void MlpModel::validate() const {
  if (input_dim < 1 || hidden_dim < 1) throw std::invalid_argument("model dimensions must be positive");
  const auto h = static_cast<std::size_t>(hidden_dim);
  const auto d = static_cast<std::size_t>(input_dim);
  if (w1.size() != h * d || b1.size() != h || w2.size() != h || feat_mean.size() != d ||
      feat_std.size() != d) {
    throw std::invalid_argument("model parameter shapes are inconsistent with its dimensions");
  }
  const auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(w1) || !finite(b1) || !finite(w2) || !std::isfinite(b2) || !finite(feat_mean) ||
      !finite(feat_std)) {
    throw std::invalid_argument("model contains non-finite values");
  }
  if (std::any_of(feat_std.begin(), feat_std.end(), [](double s) { return !(s > 0.0); })) {
    throw std::invalid_argument("feat_std entries must be positive");
  }
}

std::vector<double> MlpGradient::flat() const {
  std::vector<double> out;
  out.reserve(w1.size() + b1.size() + w2.size() + 1);
  out.insert(out.end(), w1.begin(), w1.end());
  out.insert(out.end(), b1.begin(), b1.end());
  out.insert(out.end(), w2.begin(), w2.end());
  out.push_back(b2);
  return out;
}

namespace {

double sigmoid(double a) {
  if (a >= 0.0) return 1.0 / (1.0 + std::exp(-a));
  const double e = std::exp(a);
  return e / (1.0 + e);
}

// Activations of one forward pass, kept for backpropagation.
struct Pass {
  std::vector<double> z;
  std::vector<double> hidden;
  double p = 0.5;
};

void run(const MlpModel& m, std::span<const double> input, Pass& pass) {
  if (input.size() != static_cast<std::size_t>(m.input_dim)) {
    throw std::invalid_argument("input has " + std::to_string(input.size()) +
                                " features, model expects " + std::to_string(m.input_dim));
  }
  pass.z.resize(m.input_dim);
  for (int k = 0; k < m.input_dim; ++k) pass.z[k] = (input[k] - m.feat_mean[k]) / m.feat_std[k];
  pass.hidden.resize(m.hidden_dim);
  double out = m.b2;
  for (int h = 0; h < m.hidden_dim; ++h) {
    const double* row = m.w1.data() + static_cast<std::size_t>(h) * m.input_dim;
    double a = m.b1[h];
    for (int k = 0; k < m.input_dim; ++k) a += row[k] * pass.z[k];
    pass.hidden[h] = std::tanh(a);
    out += m.w2[h] * pass.hidden[h];
  }
  pass.p = sigmoid(out);
}

double clamp_probability(double p) {
  return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
}

void require_samples(std::span<const LabeledSample> samples) {
  if (samples.empty()) throw std::invalid_argument("sample list is empty");
}

}  // namespace

double forward(const MlpModel& model, std::span<const double> input) {
  Pass pass;
  run(model, input, pass);
  return pass.p;
}

double forward(const MlpModel& model, const FeatureVector& fv) {
  return forward(model, std::span<const double>(fv.values));
}

double loss(const MlpModel& model, std::span<const LabeledSample> samples) {
  require_samples(samples);
  Pass pass;
  double total = 0.0;
  for (const auto& s : samples) {
    run(model, s.features.values, pass);
    const double p = clamp_probability(pass.p);
    total -= s.label ? std::log(p) : std::log(1.0 - p);
  }
  return total / static_cast<double>(samples.size());
}

MlpGradient gradient(const MlpModel& model, std::span<const LabeledSample> samples) {
  require_samples(samples);
  MlpGradient g;
  g.w1.assign(model.w1.size(), 0.0);
  g.b1.assign(model.b1.size(), 0.0);
  g.w2.assign(model.w2.size(), 0.0);

  const double scale = 1.0 / static_cast<double>(samples.size());
  Pass pass;
  for (const auto& s : samples) {
    run(model, s.features.values, pass);
    // d(loss)/d(output pre-activation) for sigmoid + cross-entropy; zero where
    // the clamp holds p constant.
    if (pass.p <= kProbabilityClamp || pass.p >= 1.0 - kProbabilityClamp) continue;
    const double delta = (pass.p - static_cast<double>(s.label)) * scale;
    g.b2 += delta;
    for (int h = 0; h < model.hidden_dim; ++h) {
      g.w2[h] += delta * pass.hidden[h];
      const double dh = delta * model.w2[h] * (1.0 - pass.hidden[h] * pass.hidden[h]);
      g.b1[h] += dh;
      double* row = g.w1.data() + static_cast<std::size_t>(h) * model.input_dim;
      for (int k = 0; k < model.input_dim; ++k) row[k] += dh * pass.z[k];
    }
  }
  return g;
}

TrainResult train(std::span<const LabeledSample> samples, const TrainConfig& cfg) {
  if (samples.size() < 2) throw std::invalid_argument("training needs at least 2 samples");
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (!(cfg.momentum >= 0.0 && cfg.momentum < 1.0)) throw std::invalid_argument("momentum must be in [0, 1)");
  if (cfg.epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  const bool has_defect = std::any_of(samples.begin(), samples.end(), [](const auto& s) { return s.label == 1; });
  const bool has_clean = std::any_of(samples.begin(), samples.end(), [](const auto& s) { return s.label == 0; });
  if (std::any_of(samples.begin(), samples.end(), [](const auto& s) { return s.label != 0 && s.label != 1; })) {
    throw std::invalid_argument("labels must be 0 or 1");
  }
  if (!has_defect || !has_clean) throw std::invalid_argument("training set must contain both labels");

  const int d = static_cast<int>(kFeatureCount);
  MlpModel m = MlpModel::zeros(d, cfg.hidden_dim);

  const double n = static_cast<double>(samples.size());
  for (int k = 0; k < d; ++k) {
    double sum = 0.0;
    for (const auto& s : samples) sum += s.features.values[k];
    const double mean = sum / n;
    double sq = 0.0;
    for (const auto& s : samples) sq += (s.features.values[k] - mean) * (s.features.values[k] - mean);
    m.feat_mean[k] = mean;
    m.feat_std[k] = std::max(std::sqrt(sq / n), kMinFeatureStd);
  }

  Rng rng(cfg.seed);
  const double limit1 = 1.0 / std::sqrt(static_cast<double>(d));
  const double limit2 = 1.0 / std::sqrt(static_cast<double>(cfg.hidden_dim));
  for (double& w : m.w1) w = rng.uniform(-limit1, limit1);
  for (double& w : m.w2) w = rng.uniform(-limit2, limit2);

  MlpGradient velocity;
  velocity.w1.assign(m.w1.size(), 0.0);
  velocity.b1.assign(m.b1.size(), 0.0);
  velocity.w2.assign(m.w2.size(), 0.0);

  const auto step = [&](std::vector<double>& w, std::vector<double>& v, const std::vector<double>& g) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      v[i] = cfg.momentum * v[i] - cfg.learning_rate * g[i];
      w[i] += v[i];
    }
  };

  TrainResult result;
  result.loss_history.reserve(static_cast<std::size_t>(cfg.epochs) + 1);
  for (int epoch = 0; epoch <= cfg.epochs; ++epoch) {
    const double l = loss(m, samples);
    if (!std::isfinite(l)) {
      throw TrainingError(epoch, "non-finite training loss at epoch " + std::to_string(epoch));
    }
    result.loss_history.push_back(l);
    if (epoch == cfg.epochs) break;

    const MlpGradient g = gradient(m, samples);
    step(m.w1, velocity.w1, g.w1);
    step(m.b1, velocity.b1, g.b1);
    step(m.w2, velocity.w2, g.w2);
    velocity.b2 = cfg.momentum * velocity.b2 - cfg.learning_rate * g.b2;
    m.b2 += velocity.b2;
  }
  result.model = std::move(m);
  return result;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

constexpr std::string_view kFormatName = "jacq-mlp";

[[noreturn]] void fail(ModelFormatErrorKind kind, const std::string& what) {
  throw ModelFormatError(kind, "model file: " + what);
}

// NaN and infinity serialize as null in JSON, so null reads as non-finite.
double read_number(const json& v, const std::string& key) {
  if (v.is_null()) fail(ModelFormatErrorKind::non_finite, "'" + key + "' holds a non-finite value");
  if (!v.is_number()) fail(ModelFormatErrorKind::schema, "'" + key + "' holds a non-numeric value");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(ModelFormatErrorKind::non_finite, "'" + key + "' holds a non-finite value");
  return x;
}

std::vector<double> read_array(const json& arr, const std::string& key, std::size_t expected) {
  if (!arr.is_array()) fail(ModelFormatErrorKind::schema, "'" + key + "' must be an array");
  if (arr.size() != expected) {
    fail(ModelFormatErrorKind::dimension, "'" + key + "' has " + std::to_string(arr.size()) +
                                              " entries, expected " + std::to_string(expected));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const json& v : arr) out.push_back(read_number(v, key));
  return out;
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(ModelFormatErrorKind::schema, std::string("missing key '") + key + "'");
  return doc.at(key);
}

int read_dim(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer()) {
    fail(ModelFormatErrorKind::schema, std::string("'") + key + "' must be an integer");
  }
  const auto v = doc.at(key).get<long long>();
  if (v < 1 || v > 1'000'000) fail(ModelFormatErrorKind::dimension, std::string("'") + key + "' out of range");
  return static_cast<int>(v);
}

MlpModel model_from_json(const json& doc) {
  if (!doc.is_object()) fail(ModelFormatErrorKind::schema, "top level must be an object");
  if (doc.value("format", std::string()) != kFormatName) {
    fail(ModelFormatErrorKind::schema, "not a jacq-mlp model");
  }
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer() ||
      doc.at("schema_version").get<long long>() != kModelSchemaVersion) {
    fail(ModelFormatErrorKind::schema, "unsupported schema_version (expected " +
                                           std::to_string(kModelSchemaVersion) + ")");
  }
  if (doc.value("output_dim", 0) != 1) fail(ModelFormatErrorKind::dimension, "output_dim must be 1");
  if (doc.value("hidden_activation", std::string()) != "tanh" ||
      doc.value("output_activation", std::string()) != "sigmoid") {
    fail(ModelFormatErrorKind::schema, "unsupported activation functions");
  }

  MlpModel m;
  m.input_dim = read_dim(doc, "input_dim");
  m.hidden_dim = read_dim(doc, "hidden_dim");
  if (m.input_dim == static_cast<int>(kFeatureCount) && doc.value("feature_order", std::string()) != kFeatureOrder) {
    fail(ModelFormatErrorKind::schema, "feature_order does not match this build");
  }

  const json& w1 = require(doc, "w1");
  if (!w1.is_array()) fail(ModelFormatErrorKind::schema, "'w1' must be an array of rows");
  if (w1.size() != static_cast<std::size_t>(m.hidden_dim)) {
    fail(ModelFormatErrorKind::dimension, "'w1' has " + std::to_string(w1.size()) +
                                              " rows, hidden_dim is " + std::to_string(m.hidden_dim));
  }
  for (const json& row_doc : w1) {
    const auto row = read_array(row_doc, "w1", static_cast<std::size_t>(m.input_dim));
    m.w1.insert(m.w1.end(), row.begin(), row.end());
  }
  m.b1 = read_array(require(doc, "b1"), "b1", static_cast<std::size_t>(m.hidden_dim));
  m.w2 = read_array(require(doc, "w2"), "w2", static_cast<std::size_t>(m.hidden_dim));
  m.b2 = read_number(require(doc, "b2"), "b2");
  m.feat_mean = read_array(require(doc, "feat_mean"), "feat_mean", static_cast<std::size_t>(m.input_dim));
  m.feat_std = read_array(require(doc, "feat_std"), "feat_std", static_cast<std::size_t>(m.input_dim));
  if (std::any_of(m.feat_std.begin(), m.feat_std.end(), [](double s) { return !(s > 0.0); })) {
    fail(ModelFormatErrorKind::non_finite, "feat_std entries must be positive");
  }
  return m;
}

}  // namespace

std::string save_model(const MlpModel& model) {
  model.validate();
  json w1 = json::array();
  for (int h = 0; h < model.hidden_dim; ++h) {
    const auto first = model.w1.begin() + static_cast<std::ptrdiff_t>(h) * model.input_dim;
    w1.push_back(std::vector<double>(first, first + model.input_dim));
  }
  json doc = {
      {"format", std::string(kFormatName)},
      {"schema_version", kModelSchemaVersion},
      {"input_dim", model.input_dim},
      {"hidden_dim", model.hidden_dim},
      {"output_dim", 1},
      {"hidden_activation", "tanh"},
      {"output_activation", "sigmoid"},
      {"feature_order", model.input_dim == static_cast<int>(kFeatureCount) ? std::string(kFeatureOrder) : std::string()},
      {"init_prng", std::string(Rng::kName)},
      {"w1", w1},
      {"b1", model.b1},
      {"w2", model.w2},
      {"b2", model.b2},
      {"feat_mean", model.feat_mean},
      {"feat_std", model.feat_std},
  };
  return doc.dump(2) + "\n";
}

MlpModel load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ModelFormatErrorKind::syntax, e.what());
  }
  try {
    return model_from_json(doc);
  } catch (const json::exception& e) {
    fail(ModelFormatErrorKind::schema, e.what());
  }
}

void save_model_file(const std::filesystem::path& path, const MlpModel& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << save_model(model);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

MlpModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return load_model(text.str());
}

}  // namespace jacq
