// Copyright 2026 The phonefront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phonefront/cli.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "phonefront/error.h"
#include "phonefront/features.h"
#include "phonefront/g2p.h"
#include "phonefront/inventory.h"
#include "phonefront/io.h"
#include "phonefront/ipa.h"
#include "phonefront/lexicon.h"
#include "phonefront/makeshift.h"
#include "phonefront/metrics.h"
#include "phonefront/phone_mapping.h"

#ifndef PHONEFRONT_DEFAULT_DATA_DIR
#define PHONEFRONT_DEFAULT_DATA_DIR "data"
#endif

namespace phonefront::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
  std::string data_dir;
  std::string symbols;
  std::string schema;
  std::string rules;
  int jobs = 1;
  std::uint64_t seed = 0;
};

// Data files come from explicit flags, then $PHONEFRONT_DATA, then the
// data directory of the source tree the binary was built from.
class Resources {
 public:
  explicit Resources(const Globals& g) : g_(g) {}

  fs::path DataDir() const {
    if (!g_.data_dir.empty()) return g_.data_dir;
    if (const char* env = std::getenv("PHONEFRONT_DATA"); env && *env) {
      return env;
    }
    return PHONEFRONT_DEFAULT_DATA_DIR;
  }

  fs::path DataFile(const std::string& flag, const char* name) const {
    fs::path p = flag.empty() ? DataDir() / name : fs::path(flag);
    if (!fs::is_regular_file(p)) {
      throw DataError("data file not found: " + p.string());
    }
    return p;
  }

  const SymbolTable& table() {
    if (!table_) table_ = SymbolTable::Load(DataFile(g_.symbols, "symbols.txt"));
    return *table_;
  }

  const FeatureSchema& schema() {
    if (!schema_) {
      schema_ = FeatureSchema::Load(
          DataFile(g_.schema, "features.csv"),
          DataFile(g_.rules, "diacritic_rules.csv"));
    }
    return *schema_;
  }

 private:
  const Globals& g_;
  std::optional<SymbolTable> table_;
  std::optional<FeatureSchema> schema_;
};

struct InlineOrFile {
  std::string text;
  std::string in;
  std::string out;
};

std::vector<std::string> InputLines(const InlineOrFile& io_args) {
  if (!io_args.in.empty()) return io::ReadLines(io_args.in);
  return {io_args.text};
}

FeatureWeights LoadWeights(const std::string& path) {
  std::string text = io::ReadFile(path);
  for (char& c : text) {
    if (c == ',') c = ' ';
  }
  std::vector<double> values;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    double v = 0.0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw DataError(path + ": bad weight '" + token + "'");
    }
    values.push_back(v);
  }
  return MakeWeights(values);
}

json RunParse(Resources& res, const InlineOrFile& args, std::ostream& err) {
  const SymbolTable& table = res.table();
  std::string output;
  json rendered = json::array();
  std::size_t n = 0;
  for (const std::string& line : InputLines(args)) {
    ++n;
    try {
      const std::string r = Render(ParsePhoneString(line, table));
      output += r + "\n";
      rendered.push_back(r);
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(n) + ": " + e.what());
    }
  }
  json summary = {{"command", "parse"}, {"lines", n}};
  if (args.out.empty()) {
    summary["canonical"] = rendered;
  } else {
    io::WriteFileAtomic(args.out, output);
    err << "parse: wrote " << n << " line(s) to " << args.out << "\n";
  }
  return summary;
}

json RunFeaturize(Resources& res, const InlineOrFile& args, std::ostream& err) {
  const SymbolTable& table = res.table();
  const FeatureSchema& schema = res.schema();
  std::string output = "segment";
  for (const std::string& name : schema.feature_names()) output += "\t" + name;
  output += "\n";
  json rows = json::array();
  std::size_t segments = 0;
  for (const std::string& line : InputLines(args)) {
    for (const Segment& s : ParsePhoneString(line, table)) {
      const FeatureVector v = Encode(s, schema);
      std::string bits;
      output += s.canonical();
      for (int f = 0; f < kNumFeatures; ++f) {
        output += v(f) ? "\t1" : "\t0";
        bits += v(f) ? '1' : '0';
      }
      output += "\n";
      rows.push_back({s.canonical(), bits});
      ++segments;
    }
  }
  json summary = {{"command", "featurize"},
                  {"segments", segments},
                  {"features", kNumFeatures}};
  if (args.out.empty()) {
    summary["vectors"] = rows;
  } else {
    io::WriteFileAtomic(args.out, output);
    err << "featurize: wrote " << segments << " vector(s) to " << args.out
        << "\n";
  }
  return summary;
}

struct MapArgs {
  std::string inventories;
  std::string target;
  std::string source;
  std::string weights;
  std::string out;
};

fs::path InventoryPath(Resources& res, const std::string& flag) {
  return res.DataFile(flag, "inventories/phoible_sample.csv");
}

void LogWarnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
}

json RunMapPhones(Resources& res, const MapArgs& args, std::ostream& err) {
  const fs::path inv_path = InventoryPath(res, args.inventories);
  const FeatureWeights weights =
      args.weights.empty() ? UnitWeights() : LoadWeights(args.weights);
  std::vector<std::string> warnings;
  const PhoneInventory target =
      LoadInventory(inv_path, args.target, res.table(), &warnings);
  const PhoneInventory source =
      LoadInventory(inv_path, args.source, res.table(), &warnings);
  LogWarnings(warnings, err);
  const PhoneMap map = BuildPhoneMap(target, source, res.schema(), weights);

  std::size_t exact = 0;
  for (const auto& [t, entry] : map.entries) exact += entry.distance == 0.0;
  json unmapped = json::array();
  for (const Segment& s : UnmappedSourcePhones(map, source)) {
    unmapped.push_back(s.canonical());
  }
  json summary = {{"command", "map-phones"},
                  {"target", args.target},
                  {"source", args.source},
                  {"mapped", map.entries.size()},
                  {"exact", exact},
                  {"unmapped_source", unmapped}};
  if (args.out.empty()) {
    json entries = json::object();
    for (const auto& [t, entry] : map.entries) {
      entries[t] = {entry.source.canonical(), entry.distance};
    }
    summary["map"] = entries;
  } else {
    io::WriteFileAtomic(args.out, PhoneMapToTsv(map));
    err << "map-phones: wrote " << map.entries.size() << " mapping(s) to "
        << args.out << "\n";
  }
  return summary;
}

struct FilterArgs {
  std::string inventories;
  std::string language;
  std::string in;
  std::string out;
  std::size_t nearest = 0;
  std::string metric = "feature";
};

json RunFilterInventory(Resources& res, const FilterArgs& args,
                        std::ostream& err) {
  const fs::path inv_path = InventoryPath(res, args.inventories);
  std::vector<std::string> warnings;
  const PhoneInventory inventory =
      LoadInventory(inv_path, args.language, res.table(), &warnings);
  json summary = {{"command", "filter-inventory"},
                  {"language", args.language},
                  {"inventory_size", inventory.size()}};

  std::string output;
  std::size_t lines = 0;
  std::size_t changed = 0;
  if (!args.in.empty()) {
    for (const std::string& line : io::ReadLines(args.in)) {
      ++lines;
      const PhoneSequence seq = ParsePhoneString(line, res.table());
      const PhoneSequence restricted =
          RestrictSequence(seq, inventory, res.schema());
      for (std::size_t i = 0; i < seq.size(); ++i) {
        changed += !(seq[i] == restricted[i]);
      }
      output += Render(restricted) + "\n";
    }
    summary["lines"] = lines;
    summary["replaced_segments"] = changed;
  }

  if (args.nearest > 0) {
    const std::vector<PhoneInventory> all =
        LoadAllInventories(inv_path, res.table(), &warnings);
    std::vector<PhoneInventory> pool;
    for (const PhoneInventory& inv : all) {
      if (inv.language != args.language) pool.push_back(inv);
    }
    const InventoryMetric metric = args.metric == "jaccard"
                                       ? InventoryMetric::kJaccard
                                       : InventoryMetric::kFeature;
    json ranked = json::array();
    for (const RankedLanguage& r :
         NearestLanguages(inventory, pool, args.nearest, res.schema(), metric)) {
      ranked.push_back({{"language", r.language}, {"distance", r.distance}});
    }
    summary["metric"] = args.metric;
    summary["nearest"] = ranked;
  }
  LogWarnings(warnings, err);

  if (!args.in.empty()) {
    io::WriteFileAtomic(args.out, output);
    err << "filter-inventory: " << changed << " segment(s) replaced in "
        << lines << " line(s)\n";
  }
  return summary;
}

struct BuildDictArgs {
  std::string corpus;
  std::string out;
  std::string model_out;
  std::optional<double> alpha;
  double lambda = 0.0;
  std::string seed_model;
  int order = 3;
  int beam = 8;
  int refine = 0;
  double refine_lambda = 2.0;
};

json RunBuildDict(Resources& res, const Globals& g, const BuildDictArgs& args,
                  std::ostream& err) {
  const SymbolTable& table = res.table();
  const std::vector<TranscribedUtterance> corpus =
      LoadCorpus(args.corpus, table);
  if (corpus.empty()) throw DataError(args.corpus + ": corpus is empty");

  std::optional<G2pModel> seed;
  if (!args.seed_model.empty()) seed = LoadG2pModel(args.seed_model, table);
  SegmentationConfig config;
  config.alpha = args.alpha ? *args.alpha : EstimateAlpha(corpus);
  config.lambda = args.lambda;
  config.seed_g2p = seed ? &*seed : nullptr;
  config.beam = args.beam;
  const Lexicon lexicon = RefineMakeshiftLexicon(
      corpus, config, RefineOptions{args.refine, 1, args.refine_lambda},
      g.jobs);

  G2pTrainOptions train;
  train.order = args.order;
  EmResult em;
  const G2pModel model = TrainG2p(lexicon.MajorityOnly(), train, &em);

  const std::string model_out =
      args.model_out.empty() ? args.out + ".g2p.json" : args.model_out;
  SaveLexicon(lexicon, args.out);
  SaveG2pModel(model, model_out);
  err << "build-dict: " << corpus.size() << " utterance(s), "
      << lexicon.size() << " word(s); lexicon " << args.out << ", model "
      << model_out << "\n";
  return {{"command", "build-dict"},
          {"utterances", corpus.size()},
          {"words", lexicon.size()},
          {"observations", lexicon.TotalCount()},
          {"alpha", config.alpha},
          {"refine_rounds", args.refine},
          {"em_iterations", em.iterations},
          {"graphones", model.vocab().size()},
          {"lexicon", args.out},
          {"model", model_out}};
}

struct TrainArgs {
  std::string lexicon;
  std::string model_out;
  int order = 3;
  int max_iters = 50;
};

json RunG2pTrain(Resources& res, const TrainArgs& args, std::ostream& err) {
  const Lexicon lexicon =
      LoadLexicon(args.lexicon, res.table(), Provenance::kGroundTruth);
  G2pTrainOptions options;
  options.order = args.order;
  options.em.max_iters = args.max_iters;
  EmResult em;
  const G2pModel model = TrainG2p(lexicon, options, &em);
  for (const std::string& w : em.unalignable) {
    err << "warning: skipped unalignable entry '" << w << "'\n";
  }
  SaveG2pModel(model, args.model_out);
  err << "g2p-train: " << em.alignments.size() << " pronunciation(s), "
      << em.iterations << " EM iteration(s); model " << args.model_out << "\n";
  return {{"command", "g2p-train"},
          {"words", lexicon.size()},
          {"aligned", em.alignments.size()},
          {"unalignable", em.unalignable.size()},
          {"em_iterations", em.iterations},
          {"log_likelihood", em.log_likelihood.back()},
          {"graphones", model.vocab().size()},
          {"model", args.model_out}};
}

struct ApplyArgs {
  std::string texts;
  std::string out;
  std::string lexicon;
  std::string model;
  std::string model_out;
  int order = 3;
  int beam = 8;
};

json RunG2pApply(Resources& res, const Globals& g, const ApplyArgs& args,
                 std::ostream& err) {
  const SymbolTable& table = res.table();
  const auto texts = LoadTexts(args.texts);
  std::optional<Lexicon> lexicon;
  if (!args.lexicon.empty()) {
    lexicon = LoadLexicon(args.lexicon, table, Provenance::kGroundTruth);
  }
  std::optional<G2pModel> model;
  if (!args.model.empty()) model = LoadG2pModel(args.model, table);

  const std::vector<std::string> oov =
      lexicon ? OovWords(texts, *lexicon) : std::vector<std::string>{};
  bool trained = false;
  if (!model && lexicon && (!oov.empty() || !args.model_out.empty())) {
    G2pTrainOptions options;
    options.order = args.order;
    model = TrainG2p(*lexicon, options);
    trained = true;
  }

  G2pCorpusOptions options;
  options.beam = args.beam;
  options.jobs = g.jobs;
  const Lexicon result = G2pCorpus(model ? &*model : nullptr,
                                   lexicon ? &*lexicon : nullptr, texts, options);
  std::size_t predicted = 0;
  for (const auto& [word, prons] : result.entries()) {
    predicted += prons.front().provenance == Provenance::kG2p;
  }
  SaveLexicon(result, args.out);
  if (trained && !args.model_out.empty()) SaveG2pModel(*model, args.model_out);
  err << "g2p-apply: " << result.size() << " word(s), " << predicted
      << " predicted; lexicon " << args.out << "\n";
  return {{"command", "g2p-apply"},
          {"words", result.size()},
          {"from_lexicon", result.size() - predicted},
          {"predicted", predicted},
          {"trained_model", trained},
          {"lexicon", args.out}};
}

json RunEnsemble(Resources& res, const std::vector<std::string>& inputs,
                 const std::string& out, std::ostream& err) {
  std::vector<Lexicon> lexicons;
  for (const std::string& path : inputs) {
    lexicons.push_back(LoadLexicon(path, res.table(), Provenance::kG2p));
  }
  std::map<std::string, std::vector<PhoneSequence>> candidates;
  for (const Lexicon& lex : lexicons) {
    for (const auto& [word, prons] : lex.entries()) {
      candidates[word].push_back(prons.front().phones);
    }
  }
  Lexicon result;
  std::size_t disagreements = 0;
  for (const auto& [word, cands] : candidates) {
    for (const PhoneSequence& c : cands) {
      if (!(c == cands.front())) {
        ++disagreements;
        break;
      }
    }
    result.Add(word, EnsemblePredictions(cands), Provenance::kG2p);
  }
  SaveLexicon(result, out);
  err << "ensemble: " << inputs.size() << " input(s), " << result.size()
      << " word(s); lexicon " << out << "\n";
  return {{"command", "ensemble"},
          {"inputs", inputs.size()},
          {"words", result.size()},
          {"disagreements", disagreements},
          {"lexicon", out}};
}

struct EvalArgs {
  std::string metric;
  std::string pairs;
  std::string a;
  std::string b;
  int resamples = 1000;
};

const SymbolTable* TableFor(Resources& res, Metric metric) {
  return metric == Metric::kPer ? &res.table() : nullptr;
}

json RunEval(Resources& res, const Globals& g, const EvalArgs& args,
             std::ostream& err) {
  const Metric metric = ParseMetric(args.metric);
  const std::vector<TextPair> pairs = LoadPairs(args.pairs);
  const CorpusRates rates =
      ComputeCorpusRates(pairs, metric, TableFor(res, metric),
                         BootstrapOptions{args.resamples, g.seed});
  err << "eval: " << MetricName(metric) << " over " << rates.n_utterances
      << " utterance(s)\n";
  return {{"command", "eval"},
          {"metric", MetricName(metric)},
          {"micro", rates.micro},
          {"macro", rates.macro},
          {"n", rates.n_utterances},
          {"ci", {rates.ci->low, rates.ci->high}},
          {"resamples", args.resamples},
          {"seed", g.seed}};
}

json RunCompare(Resources& res, const Globals& g, const EvalArgs& args,
                std::ostream& err) {
  const Metric metric = ParseMetric(args.metric);
  const std::vector<TextPair> a = LoadPairs(args.a);
  const std::vector<TextPair> b = LoadPairs(args.b);
  const PairedDelta d =
      PairedBootstrapDelta(a, b, metric, TableFor(res, metric),
                           BootstrapOptions{args.resamples, g.seed});
  err << "compare: " << MetricName(metric) << " delta over " << a.size()
      << " utterance(s)\n";
  return {{"command", "compare"},
          {"metric", MetricName(metric)},
          {"delta", d.delta},
          {"ci", {d.ci_low, d.ci_high}},
          {"n", a.size()},
          {"resamples", args.resamples},
          {"seed", g.seed}};
}

void AddInlineOrFile(CLI::App* cmd, InlineOrFile& args) {
  auto* text = cmd->add_option("--text", args.text, "Phone string");
  auto* in = cmd->add_option("--in", args.in, "File of phone strings, one per line")
                 ->check(CLI::ExistingFile);
  text->excludes(in);
  cmd->add_option("--out", args.out, "Output file (default: JSON summary)");
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Symbolic linguistic frontend tools for low-resource TTS",
               "phonefront"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--data", g.data_dir, "Data directory (overrides $PHONEFRONT_DATA)");
  app.add_option("--symbols", g.symbols, "Symbol table file")
      ->check(CLI::ExistingFile);
  app.add_option("--schema", g.schema, "Feature table CSV")
      ->check(CLI::ExistingFile);
  app.add_option("--rules", g.rules, "Diacritic rules CSV")
      ->check(CLI::ExistingFile);
  app.add_option("--jobs", g.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for stochastic steps");

  InlineOrFile parse_args;
  auto* parse = app.add_subcommand("parse", "Parse and canonicalize IPA strings");
  AddInlineOrFile(parse, parse_args);

  InlineOrFile feat_args;
  auto* featurize =
      app.add_subcommand("featurize", "Articulatory feature vectors");
  AddInlineOrFile(featurize, feat_args);

  MapArgs map_args;
  auto* map_phones =
      app.add_subcommand("map-phones", "Map target phones to source phones");
  map_phones->add_option("--inventories", map_args.inventories,
                         "Inventory CSV (language,phoneme)")
      ->check(CLI::ExistingFile);
  map_phones->add_option("--target", map_args.target, "Target language")
      ->required();
  map_phones->add_option("--source", map_args.source, "Source language")
      ->required();
  map_phones->add_option("--weights", map_args.weights, "62 feature weights")
      ->check(CLI::ExistingFile);
  map_phones->add_option("--out", map_args.out, "Output TSV");

  FilterArgs filter_args;
  auto* filter = app.add_subcommand(
      "filter-inventory", "Restrict phones to an inventory, rank languages");
  filter->add_option("--inventories", filter_args.inventories,
                     "Inventory CSV (language,phoneme)")
      ->check(CLI::ExistingFile);
  filter->add_option("--language", filter_args.language, "Inventory language")
      ->required();
  auto* filter_in =
      filter->add_option("--in", filter_args.in, "Phone strings to restrict")
          ->check(CLI::ExistingFile);
  auto* filter_out =
      filter->add_option("--out", filter_args.out, "Restricted output");
  filter_in->needs(filter_out);
  filter_out->needs(filter_in);
  filter->add_option("--nearest", filter_args.nearest,
                     "Rank the K nearest other languages")
      ->check(CLI::PositiveNumber);
  filter->add_option("--metric", filter_args.metric, "Inventory distance")
      ->check(CLI::IsMember({"jaccard", "feature"}));

  BuildDictArgs dict_args;
  auto* build_dict = app.add_subcommand(
      "build-dict", "Makeshift lexicon from recognized phones, then G2P");
  build_dict->add_option("--corpus", dict_args.corpus, "Utterance TSV")
      ->required()
      ->check(CLI::ExistingFile);
  build_dict->add_option("--out", dict_args.out, "Output lexicon")->required();
  build_dict->add_option("--model-out", dict_args.model_out,
                         "Output model (default: <out>.g2p.json)");
  build_dict->add_option("--alpha", dict_args.alpha,
                         "Phones per grapheme (default: estimated)")
      ->check(CLI::PositiveNumber);
  build_dict->add_option("--lambda", dict_args.lambda, "Seed-model weight")
      ->check(CLI::NonNegativeNumber);
  build_dict->add_option("--seed-model", dict_args.seed_model,
                         "G2P model guiding segmentation")
      ->check(CLI::ExistingFile);
  build_dict->add_option("--order", dict_args.order, "n-gram order")
      ->check(CLI::PositiveNumber);
  build_dict->add_option("--beam", dict_args.beam, "Beam width")
      ->check(CLI::PositiveNumber);
  build_dict->add_option("--refine", dict_args.refine,
                         "Rounds of re-segmenting with a unigram seed model "
                         "trained on the current lexicon")
      ->check(CLI::NonNegativeNumber);
  build_dict->add_option("--refine-lambda", dict_args.refine_lambda,
                         "Seed-model weight during refinement")
      ->check(CLI::NonNegativeNumber);

  TrainArgs train_args;
  auto* g2p_train = app.add_subcommand("g2p-train", "Train a G2P model");
  g2p_train->add_option("--lexicon", train_args.lexicon, "Training lexicon")
      ->required()
      ->check(CLI::ExistingFile);
  g2p_train->add_option("--model-out", train_args.model_out, "Output model")
      ->required();
  g2p_train->add_option("--order", train_args.order, "n-gram order")
      ->check(CLI::PositiveNumber);
  g2p_train->add_option("--max-iters", train_args.max_iters, "EM iterations")
      ->check(CLI::PositiveNumber);

  ApplyArgs apply_args;
  auto* g2p_apply = app.add_subcommand(
      "g2p-apply", "Full-coverage lexicon for a text corpus");
  g2p_apply->add_option("--texts", apply_args.texts, "One text per line")
      ->required()
      ->check(CLI::ExistingFile);
  g2p_apply->add_option("--out", apply_args.out, "Output lexicon")->required();
  auto* apply_lex =
      g2p_apply->add_option("--lexicon", apply_args.lexicon, "Known words")
          ->check(CLI::ExistingFile);
  auto* apply_model =
      g2p_apply->add_option("--model", apply_args.model, "Trained model")
          ->check(CLI::ExistingFile);
  g2p_apply->add_option("--model-out", apply_args.model_out,
                        "Save the model trained from --lexicon");
  g2p_apply->add_option("--order", apply_args.order, "n-gram order")
      ->check(CLI::PositiveNumber);
  g2p_apply->add_option("--beam", apply_args.beam, "Beam width")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> ensemble_in;
  std::string ensemble_out;
  auto* ensemble =
      app.add_subcommand("ensemble", "Medoid of several candidate lexicons");
  ensemble->add_option("--in", ensemble_in, "Candidate lexicons")
      ->required()
      ->check(CLI::ExistingFile);
  ensemble->add_option("--out", ensemble_out, "Output lexicon")->required();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Corpus error rates");
  eval->add_option("--metric", eval_args.metric, "per, cer or wer")
      ->required()
      ->check(CLI::IsMember({"per", "cer", "wer"}));
  eval->add_option("--pairs", eval_args.pairs, "utt_id, ref, hyp TSV")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--resamples", eval_args.resamples, "Bootstrap resamples")
      ->check(CLI::PositiveNumber);

  EvalArgs compare_args;
  auto* compare =
      app.add_subcommand("compare", "Paired bootstrap of system B minus A");
  compare->add_option("--metric", compare_args.metric, "per, cer or wer")
      ->required()
      ->check(CLI::IsMember({"per", "cer", "wer"}));
  compare->add_option("--a", compare_args.a, "System A pairs")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--b", compare_args.b, "System B pairs")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--resamples", compare_args.resamples,
                      "Bootstrap resamples")
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*parse && parse_args.text.empty() && parse_args.in.empty()) {
      throw CLI::RequiredError("--text or --in");
    }
    if (*featurize && feat_args.text.empty() && feat_args.in.empty()) {
      throw CLI::RequiredError("--text or --in");
    }
    if (*filter && filter_args.in.empty() && filter_args.nearest == 0) {
      throw CLI::RequiredError("--in/--out or --nearest");
    }
    if (*g2p_apply && apply_lex->count() == 0 && apply_model->count() == 0) {
      throw CLI::RequiredError("--lexicon or --model");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  Resources res(g);
  try {
    json summary;
    if (*parse) {
      summary = RunParse(res, parse_args, err);
    } else if (*featurize) {
      summary = RunFeaturize(res, feat_args, err);
    } else if (*map_phones) {
      summary = RunMapPhones(res, map_args, err);
    } else if (*filter) {
      summary = RunFilterInventory(res, filter_args, err);
    } else if (*build_dict) {
      summary = RunBuildDict(res, g, dict_args, err);
    } else if (*g2p_train) {
      summary = RunG2pTrain(res, train_args, err);
    } else if (*g2p_apply) {
      summary = RunG2pApply(res, g, apply_args, err);
    } else if (*ensemble) {
      summary = RunEnsemble(res, ensemble_in, ensemble_out, err);
    } else if (*eval) {
      summary = RunEval(res, g, eval_args, err);
    } else if (*compare) {
      summary = RunCompare(res, g, compare_args, err);
    }
    out << summary.dump() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace phonefront::cli
