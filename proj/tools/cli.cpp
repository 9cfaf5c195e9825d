#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "jacq/config.hpp"
#include "jacq/corpus.hpp"
#include "jacq/mlp.hpp"
#include "jacq/pgm.hpp"
#include "jacq/pipeline.hpp"
#include "jacq/synthgen.hpp"

namespace jacq::cli {
namespace {

namespace fs = std::filesystem;

// Flags that mirror the pipeline config keys. Each is applied only when given,
// on top of the --config file.
struct ConfigFlags {
  std::string config_path;
  double gaussian_sigma = 0.0;
  int gaussian_radius = 0;
  std::string binarize_method;
  int fixed_threshold = 0;
  bool skip_noise_filter = false;
  int theta_bins = 0;
  double decision_threshold = 0.0;
  std::string model_path;

  CLI::Option* o_sigma = nullptr;
  CLI::Option* o_radius = nullptr;
  CLI::Option* o_method = nullptr;
  CLI::Option* o_fixed = nullptr;
  CLI::Option* o_skip = nullptr;
  CLI::Option* o_bins = nullptr;
  CLI::Option* o_threshold = nullptr;
  CLI::Option* o_model_path = nullptr;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "pipeline config JSON")->check(CLI::ExistingFile);
    o_sigma = app.add_option("--gaussian_sigma,--gaussian-sigma", gaussian_sigma);
    o_radius = app.add_option("--gaussian_radius,--gaussian-radius", gaussian_radius);
    o_method = app.add_option("--binarize_method,--binarize-method", binarize_method)
                   ->check(CLI::IsMember({"otsu", "fixed"}));
    o_fixed = app.add_option("--fixed_threshold,--fixed-threshold", fixed_threshold);
    o_skip = app.add_flag("--skip_noise_filter,--skip-noise-filter", skip_noise_filter);
    o_bins = app.add_option("--theta_bins,--theta-bins", theta_bins);
    o_threshold = app.add_option("--decision_threshold,--decision-threshold", decision_threshold);
    o_model_path = app.add_option("--model_path,--model-path", model_path);
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = pipeline_config_from_json(read_text_file(config_path));
    if (o_sigma->count()) cfg.preproc.gaussian_sigma = gaussian_sigma;
    if (o_radius->count()) cfg.preproc.gaussian_radius = gaussian_radius;
    if (o_method->count()) cfg.preproc.binarize_method = parse_binarize_method(binarize_method);
    if (o_fixed->count()) cfg.preproc.fixed_threshold = fixed_threshold;
    if (o_skip->count()) cfg.preproc.skip_noise_filter = skip_noise_filter;
    if (o_bins->count()) cfg.theta_bins = theta_bins;
    if (o_threshold->count()) cfg.decision_threshold = decision_threshold;
    if (o_model_path->count()) cfg.model_path = model_path;
    cfg.validate();
    return cfg;
  }
};

MlpModel load_selected_model(const std::string& flag_value, const PipelineConfig& cfg) {
  const std::string& path = flag_value.empty() ? cfg.model_path : flag_value;
  if (path.empty()) throw std::runtime_error("no model given: pass --model or set model_path");
  return load_model_file(path);
}

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
  return p.parent_path() / (p.stem().string() + suffix + p.extension().string());
}

void write_density_csv(const fs::path& path, const DirectionDensity& dd) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "theta_degrees,value\n";
  const auto bins = static_cast<double>(dd.values.size());
  for (std::size_t j = 0; j < dd.values.size(); ++j) {
    out << 180.0 * static_cast<double>(j) / bins << ',' << dd.values[j] << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_features_csv(const fs::path& path, const std::vector<Decision>& decisions,
                        const std::vector<CorpusItem>& items) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << kFeatureOrder << ",label\n";
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    for (double v : decisions[i].features.values) out << v << ',';
    out << items[i].label << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

int cmd_generate(const std::string& spec_path, int n, double fraction, const std::string& out_dir,
                 CLI::Option* seed_opt, std::uint64_t seed, std::ostream& out) {
  SynthSpec base;
  if (!spec_path.empty()) base = synth_spec_from_json(read_text_file(spec_path));
  const std::uint64_t corpus_seed = seed_opt->count() ? seed : base.seed;
  const auto items = make_corpus(base, n, fraction, corpus_seed);
  write_corpus(out_dir, items, CorpusManifest{base, n, fraction, corpus_seed});
  const auto defective = std::count_if(items.begin(), items.end(),
                                       [](const CorpusItem& it) { return it.label == 1; });
  out << "{\"out\":\"" << out_dir << "\",\"n\":" << n << ",\"defective\":" << defective << "}\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual-view fabric defect detection", "jacq"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic labelled corpus");
  std::string gen_spec;
  int gen_n = 0;
  double gen_fraction = 0.5;
  std::string gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("--spec", gen_spec, "SynthSpec JSON (defaults when omitted)")
      ->check(CLI::ExistingFile);
  gen->add_option("--n", gen_n, "number of frame pairs")->required();
  gen->add_option("--defect-fraction,--defect_fraction", gen_fraction, "share of defective pairs");
  gen->add_option("--out", gen_out, "output directory")->required();
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "corpus seed (default: the --spec file's seed)");

  // train
  auto* trn = app.add_subcommand("train", "train the perceptron on a corpus directory");
  std::string trn_corpus;
  std::string trn_out;
  TrainConfig tc;
  ConfigFlags trn_flags;
  trn->add_option("--corpus", trn_corpus)->required()->check(CLI::ExistingDirectory);
  trn->add_option("--out", trn_out, "model file to write")->required();
  trn->add_option("--hidden", tc.hidden_dim)->check(CLI::PositiveNumber);
  trn->add_option("--epochs", tc.epochs)->check(CLI::PositiveNumber);
  trn->add_option("--seed", tc.seed);
  trn->add_option("--learning-rate,--learning_rate", tc.learning_rate);
  trn->add_option("--momentum", tc.momentum);
  trn_flags.attach(*trn);

  // detect
  auto* det = app.add_subcommand("detect", "classify one frame pair");
  std::string det_a;
  std::string det_b;
  std::string det_model;
  std::string det_dump;
  ConfigFlags det_flags;
  det->add_option("--a", det_a, "camera A frame (PGM)")->required()->check(CLI::ExistingFile);
  det->add_option("--b", det_b, "camera B frame (PGM)")->required()->check(CLI::ExistingFile);
  det->add_option("--model", det_model)->check(CLI::ExistingFile);
  det->add_option("--dump-density,--dump_density", det_dump,
                  "write <stem>_a<ext> and <stem>_b<ext> density CSVs");
  det_flags.attach(*det);

  // stream
  auto* stm = app.add_subcommand("stream", "classify a corpus directory in order, stopping at a defect");
  std::string stm_corpus;
  std::string stm_model;
  bool stm_no_stop = false;
  ConfigFlags stm_flags;
  stm->add_option("--corpus", stm_corpus)->required()->check(CLI::ExistingDirectory);
  stm->add_option("--model", stm_model)->check(CLI::ExistingFile);
  stm->add_flag("--no-stop,--no_stop", stm_no_stop, "keep going after a defect");
  stm_flags.attach(*stm);

  // eval
  auto* evl = app.add_subcommand("eval", "confusion counts and rates on a labelled corpus");
  std::string evl_corpus;
  std::string evl_model;
  std::string evl_dump;
  ConfigFlags evl_flags;
  evl->add_option("--corpus", evl_corpus)->required()->check(CLI::ExistingDirectory);
  evl->add_option("--model", evl_model)->check(CLI::ExistingFile);
  evl->add_option("--dump-features,--dump_features", evl_dump, "per-pair feature CSV");
  evl_flags.attach(*evl);

  // bench
  auto* bch = app.add_subcommand("bench", "per-pair latency over repeated passes");
  std::string bch_corpus;
  std::string bch_model;
  int bch_reps = 1;
  ConfigFlags bch_flags;
  bch->add_option("--corpus", bch_corpus)->required()->check(CLI::ExistingDirectory);
  bch->add_option("--model", bch_model)->check(CLI::ExistingFile);
  bch->add_option("--reps", bch_reps)->required();
  bch_flags.attach(*bch);

  if (args.empty()) {
    err << app.help();
    return kExitError;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitError;
  }

  try {
    if (gen->parsed()) {
      return cmd_generate(gen_spec, gen_n, gen_fraction, gen_out, gen_seed_opt, gen_seed, out);
    }

    if (trn->parsed()) {
      const PipelineConfig cfg = trn_flags.resolve();
      const auto items = read_corpus(trn_corpus);
      std::vector<LabeledSample> samples;
      samples.reserve(items.size());
      for (const auto& it : items) samples.push_back({pair_features(it.frames, cfg), it.label});
      const TrainResult result = train(samples, tc);
      save_model_file(trn_out, result.model);
      out << "{\"samples\":" << samples.size() << ",\"epochs\":" << tc.epochs
          << std::setprecision(std::numeric_limits<double>::max_digits10)
          << ",\"initial_loss\":" << result.loss_history.front()
          << ",\"final_loss\":" << result.loss_history.back() << "}\n";
      return kExitOk;
    }

    if (det->parsed()) {
      const PipelineConfig cfg = det_flags.resolve();
      const MlpClassifier clf(load_selected_model(det_model, cfg));
      const FramePair pair{read_pgm_file(det_a), read_pgm_file(det_b)};
      const Decision d = detect(pair, clf, cfg);
      if (!det_dump.empty()) {
        write_density_csv(with_suffix(det_dump, "_a"), analyze_view(pair.a, cfg).density);
        write_density_csv(with_suffix(det_dump, "_b"), analyze_view(pair.b, cfg).density);
      }
      out << to_json(d) << '\n';
      return d.is_defect ? kExitDefect : kExitOk;
    }

    if (stm->parsed()) {
      const PipelineConfig cfg = stm_flags.resolve();
      const MlpClassifier clf(load_selected_model(stm_model, cfg));
      CorpusDirSource source(stm_corpus);
      JsonLinesSink sink(out);
      const StreamSummary summary =
          run_stream(source, clf, cfg, sink, StreamOptions{.stop_on_defect = !stm_no_stop});
      out.flush();
      return summary.defects > 0 ? kExitDefect : kExitOk;
    }

    if (evl->parsed()) {
      const PipelineConfig cfg = evl_flags.resolve();
      const MlpClassifier clf(load_selected_model(evl_model, cfg));
      const auto items = read_corpus(evl_corpus);
      std::vector<Decision> decisions;
      const EvalReport report = evaluate(items, clf, cfg, &decisions);
      if (!evl_dump.empty()) write_features_csv(evl_dump, decisions, items);
      out << to_json(report) << '\n';
      return kExitOk;
    }

    if (bch->parsed()) {
      const PipelineConfig cfg = bch_flags.resolve();
      const MlpClassifier clf(load_selected_model(bch_model, cfg));
      const auto items = read_corpus(bch_corpus);
      std::vector<FramePair> pairs;
      pairs.reserve(items.size());
      for (const auto& it : items) pairs.push_back(it.frames);
      out << to_json(benchmark(pairs, clf, cfg, bch_reps)) << '\n';
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace jacq::cli
