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

#include "phonefront/g2p.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>
#include <utility>

#include "phonefront/error.h"
#include "phonefront/io.h"
#include "phonefront/metrics.h"
#include "phonefront/unicode.h"

namespace phonefront {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr const char* kModelFormat = "phonefront-g2p";
constexpr int kModelVersion = 1;

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

struct Edge {
  std::size_t from;
  std::size_t to;
  std::size_t graphone;
};

// Lattice of one training pair. Node (i, j) is i graphemes and j phones
// consumed, stored at i * (m + 1) + j; every edge raises i, so node order is
// a topological order.
struct Lattice {
  std::size_t num_nodes = 0;
  std::vector<Edge> edges;  // sorted by `from`
};

class GraphoneIndex {
 public:
  std::size_t Intern(Graphone g) {
    std::string key = g.Key();
    auto [it, inserted] = ids_.emplace(std::move(key), graphones_.size());
    if (inserted) graphones_.push_back(std::move(g));
    return it->second;
  }
  std::vector<Graphone>& graphones() { return graphones_; }

 private:
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<Graphone> graphones_;
};

bool Alignable(std::size_t n, std::size_t m, const EmOptions& o) {
  return n > 0 && m <= n * static_cast<std::size_t>(o.max_phones);
}

Lattice BuildLattice(const std::u32string& graphemes,
                     const PhoneSequence& phones, const EmOptions& o,
                     GraphoneIndex& index) {
  const std::size_t n = graphemes.size();
  const std::size_t m = phones.size();
  Lattice lattice;
  lattice.num_nodes = (n + 1) * (m + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      for (int a = 1; a <= o.max_graphemes && i + a <= n; ++a) {
        for (int b = 0; b <= o.max_phones && j + b <= m; ++b) {
          Graphone g{unicode::EncodeUtf8(graphemes.substr(i, a)),
                     PhoneSequence(phones.begin() + j, phones.begin() + j + b)};
          lattice.edges.push_back({i * (m + 1) + j, (i + a) * (m + 1) + j + b,
                                   index.Intern(std::move(g))});
        }
      }
    }
  }
  return lattice;
}

double ChunkLogPenalty(const Graphone& g, double penalty) {
  const double excess =
      static_cast<double>(unicode::CodepointCount(g.graphemes) - 1) +
      std::abs(1.0 - static_cast<double>(g.phones.size()));
  return excess * std::log(penalty);
}

}  // namespace

std::string Graphone::Key() const { return graphemes + ":" + Render(phones); }

std::u32string WordGraphemes(std::string_view word) {
  return unicode::DecodeUtf8(NormalizeWord(word));
}

EmResult AlignLexiconEm(const Lexicon& lexicon, const EmOptions& options) {
  if (lexicon.empty()) throw DataError("cannot align an empty lexicon");
  if (options.max_graphemes < 1 || options.max_phones < 1 ||
      options.max_iters < 1 || !(options.chunk_penalty > 0.0) ||
      options.chunk_penalty > 1.0) {
    throw DataError("invalid alignment options");
  }

  EmResult result;
  GraphoneIndex index;
  std::vector<Lattice> lattices;
  for (const auto& [word, prons] : lexicon.entries()) {
    const std::u32string graphemes = WordGraphemes(word);
    for (const Pronunciation& p : prons) {
      if (!Alignable(graphemes.size(), p.phones.size(), options)) {
        result.unalignable.push_back(word);
        continue;
      }
      lattices.push_back(BuildLattice(graphemes, p.phones, options, index));
      result.alignments.push_back(Alignment{word, p.phones, p.count, {}});
    }
  }
  if (lattices.empty()) {
    throw DataError("no lexicon entry is alignable within the chunk limits");
  }
  result.graphones = std::move(index.graphones());
  const std::size_t v = result.graphones.size();

  std::vector<double> log_penalty(v);
  for (std::size_t g = 0; g < v; ++g) {
    log_penalty[g] = ChunkLogPenalty(result.graphones[g], options.chunk_penalty);
  }
  std::vector<double> probs(v, 1.0 / static_cast<double>(v));
  std::vector<double> log_weight(v);
  const auto refresh_weights = [&] {
    for (std::size_t g = 0; g < v; ++g) {
      log_weight[g] =
          probs[g] > 0.0 ? std::log(probs[g]) + log_penalty[g] : kNegInf;
    }
  };

  std::vector<double> counts(v);
  std::vector<double> alpha;
  std::vector<double> beta;
  for (int iter = 0; iter < options.max_iters; ++iter) {
    refresh_weights();
    std::fill(counts.begin(), counts.end(), 0.0);
    double ll = 0.0;
    for (std::size_t k = 0; k < lattices.size(); ++k) {
      const Lattice& lat = lattices[k];
      const double w = static_cast<double>(result.alignments[k].weight);
      alpha.assign(lat.num_nodes, kNegInf);
      beta.assign(lat.num_nodes, kNegInf);
      alpha[0] = 0.0;
      for (const Edge& e : lat.edges) {
        alpha[e.to] = LogAdd(alpha[e.to], alpha[e.from] + log_weight[e.graphone]);
      }
      beta[lat.num_nodes - 1] = 0.0;
      for (auto it = lat.edges.rbegin(); it != lat.edges.rend(); ++it) {
        beta[it->from] =
            LogAdd(beta[it->from], beta[it->to] + log_weight[it->graphone]);
      }
      const double z = alpha[lat.num_nodes - 1];
      ll += w * z;
      for (const Edge& e : lat.edges) {
        const double lp = alpha[e.from] + log_weight[e.graphone] + beta[e.to];
        if (lp != kNegInf) counts[e.graphone] += w * std::exp(lp - z);
      }
    }
    result.log_likelihood.push_back(ll);
    if (iter > 0 && ll - result.log_likelihood[iter - 1] < options.tol) break;
    double total = 0.0;
    for (double c : counts) total += c;
    for (std::size_t g = 0; g < v; ++g) probs[g] = counts[g] / total;
    ++result.iterations;
  }

  refresh_weights();
  std::vector<double> best;
  std::vector<std::size_t> back;
  for (std::size_t k = 0; k < lattices.size(); ++k) {
    const Lattice& lat = lattices[k];
    best.assign(lat.num_nodes, kNegInf);
    back.assign(lat.num_nodes, 0);
    best[0] = 0.0;
    for (std::size_t e = 0; e < lat.edges.size(); ++e) {
      const Edge& edge = lat.edges[e];
      const double s = best[edge.from] + log_weight[edge.graphone];
      if (s > best[edge.to]) {
        best[edge.to] = s;
        back[edge.to] = e;
      }
    }
    std::vector<std::size_t>& path = result.alignments[k].graphones;
    for (std::size_t node = lat.num_nodes - 1; node != 0;) {
      const Edge& edge = lat.edges[back[node]];
      path.push_back(edge.graphone);
      node = edge.from;
    }
    std::reverse(path.begin(), path.end());
  }
  result.probs = std::move(probs);
  return result;
}

double G2pModel::Prob(std::span<const std::int32_t> context,
                      std::int32_t token) const {
  double lower;
  if (context.empty()) {
    lower = 1.0 / static_cast<double>(vocab_.size() + 1);
  } else {
    lower = Prob(context.subspan(1), token);
  }
  auto it = contexts_.find(
      std::vector<std::int32_t>(context.begin(), context.end()));
  if (it == contexts_.end() || it->second.total == 0) return lower;
  const ContextStats& stats = it->second;
  const auto types = static_cast<double>(stats.successors.size());
  auto s = stats.successors.find(token);
  const double count =
      s == stats.successors.end() ? 0.0 : static_cast<double>(s->second);
  return (count + types * lower) / (static_cast<double>(stats.total) + types);
}

double G2pModel::LogProb(std::span<const std::int32_t> history,
                         std::int32_t token) const {
  const std::size_t keep =
      std::min(history.size(), static_cast<std::size_t>(order_ - 1));
  return std::log(Prob(history.subspan(history.size() - keep), token));
}

double G2pModel::ProbabilityMass(std::span<const std::int32_t> history) const {
  double mass = 0.0;
  const auto last = static_cast<std::int32_t>(vocab_.size() + 1);
  for (std::int32_t w = kEos; w <= last; ++w) {
    mass += std::exp(LogProb(history, w));
  }
  return mass;
}

std::vector<std::vector<std::int32_t>> G2pModel::ObservedContexts() const {
  std::vector<std::vector<std::int32_t>> out;
  for (const auto& [context, stats] : contexts_) out.push_back(context);
  return out;
}

const std::vector<std::int32_t>& G2pModel::TokensFor(
    std::string_view chunk) const {
  static const std::vector<std::int32_t> kNone;
  auto it = by_chunk_.find(std::string(chunk));
  return it == by_chunk_.end() ? kNone : it->second;
}

void G2pModel::Index() {
  by_chunk_.clear();
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    by_chunk_[vocab_[i].graphemes].push_back(static_cast<std::int32_t>(i + 2));
  }
}

nlohmann::json G2pModel::ToJson() const {
  nlohmann::json vocab = nlohmann::json::array();
  for (const Graphone& g : vocab_) {
    vocab.push_back({g.graphemes, Render(g.phones)});
  }
  nlohmann::json probs = nlohmann::json::array();
  for (const auto& [key, p] : graphone_probs_) {
    const std::size_t colon = key.find(':');
    probs.push_back({key.substr(0, colon), key.substr(colon + 1), p});
  }
  nlohmann::json ngrams = nlohmann::json::array();
  for (const auto& [context, stats] : contexts_) {
    nlohmann::json successors = nlohmann::json::array();
    for (const auto& [token, count] : stats.successors) {
      successors.push_back({token, count});
    }
    ngrams.push_back({{"context", context}, {"successors", successors}});
  }
  return {{"format", kModelFormat},
          {"version", kModelVersion},
          {"order", order_},
          {"vocab", vocab},
          {"graphone_probs", probs},
          {"ngrams", ngrams}};
}

G2pModel G2pModel::FromJson(const nlohmann::json& j,
                            const SymbolTable& table) {
  G2pModel model;
  try {
    if (!j.is_object() || j.value("format", "") != kModelFormat) {
      throw DataError("not a phonefront G2P model");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelVersion) {
      throw DataError("unsupported G2P model version " +
                      std::to_string(version));
    }
    model.order_ = j.at("order").get<int>();
    if (model.order_ < 1) throw DataError("model order must be >= 1");
    for (const auto& g : j.at("vocab")) {
      model.vocab_.push_back(Graphone{
          g.at(0).get<std::string>(),
          ParsePhoneString(g.at(1).get<std::string>(), table)});
    }
    for (const auto& p : j.at("graphone_probs")) {
      const Graphone g{p.at(0).get<std::string>(),
                       ParsePhoneString(p.at(1).get<std::string>(), table)};
      model.graphone_probs_[g.Key()] = p.at(2).get<double>();
    }
    const auto max_token = static_cast<std::int32_t>(model.vocab_.size() + 1);
    for (const auto& n : j.at("ngrams")) {
      auto context = n.at("context").get<std::vector<std::int32_t>>();
      if (context.size() >= static_cast<std::size_t>(model.order_)) {
        throw DataError("n-gram context longer than the model order");
      }
      ContextStats& stats = model.contexts_[std::move(context)];
      for (const auto& s : n.at("successors")) {
        const auto token = s.at(0).get<std::int32_t>();
        const auto count = s.at(1).get<std::int64_t>();
        if (token < kEos || token > max_token || count < 1) {
          throw DataError("bad n-gram successor entry");
        }
        stats.successors[token] += count;
        stats.total += count;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed G2P model: ") + e.what());
  }
  model.Index();
  return model;
}

G2pModel TrainG2p(const Lexicon& lexicon, const G2pTrainOptions& options,
                  EmResult* em_result) {
  if (options.order < 1) throw DataError("n-gram order must be >= 1");
  EmResult em = AlignLexiconEm(lexicon, options.em);

  G2pModel model;
  model.order_ = options.order;
  std::vector<std::int32_t> token_of(em.graphones.size(), -1);
  const auto add_token = [&](std::size_t g) {
    if (token_of[g] < 0) {
      token_of[g] = static_cast<std::int32_t>(model.vocab_.size() + 2);
      model.vocab_.push_back(em.graphones[g]);
    }
    return token_of[g];
  };
  for (const Alignment& a : em.alignments) {
    for (std::size_t g : a.graphones) add_token(g);
  }

  // Every character seen in training gets at least one single-character
  // graphone so that any word over known characters can be segmented.
  std::set<std::string> single;
  for (const Graphone& g : model.vocab_) {
    if (unicode::CodepointCount(g.graphemes) == 1) single.insert(g.graphemes);
  }
  for (const Alignment& a : em.alignments) {
    for (char32_t c : WordGraphemes(a.word)) {
      const std::string ch = unicode::EncodeUtf8(c);
      if (single.contains(ch)) continue;
      std::size_t best = em.graphones.size();
      for (std::size_t g = 0; g < em.graphones.size(); ++g) {
        if (em.graphones[g].graphemes != ch || em.graphones[g].phones.empty()) {
          continue;
        }
        if (best == em.graphones.size() || em.probs[g] > em.probs[best]) {
          best = g;
        }
      }
      if (best < em.graphones.size() && em.probs[best] > 0.0) {
        add_token(best);
        single.insert(ch);
      }
    }
  }

  const auto history = static_cast<std::size_t>(options.order - 1);
  for (const Alignment& a : em.alignments) {
    std::vector<std::int32_t> seq(history, G2pModel::kBos);
    for (std::size_t g : a.graphones) seq.push_back(token_of[g]);
    seq.push_back(G2pModel::kEos);
    for (std::size_t t = history; t < seq.size(); ++t) {
      for (std::size_t len = 0; len <= history; ++len) {
        G2pModel::ContextStats& stats = model.contexts_[std::vector<
            std::int32_t>(seq.begin() + (t - len), seq.begin() + t)];
        stats.total += a.weight;
        stats.successors[seq[t]] += a.weight;
      }
    }
  }

  for (std::size_t g = 0; g < em.graphones.size(); ++g) {
    if (em.probs[g] > 0.0) model.graphone_probs_[em.graphones[g].Key()] = em.probs[g];
  }
  model.Index();
  if (em_result != nullptr) *em_result = std::move(em);
  return model;
}

void SaveG2pModel(const G2pModel& model, const std::filesystem::path& path) {
  io::WriteFileAtomic(path, model.ToJson().dump(1) + "\n");
}

G2pModel LoadG2pModel(const std::filesystem::path& path,
                      const SymbolTable& table) {
  const std::string text = io::ReadFile(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  try {
    return G2pModel::FromJson(j, table);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

namespace {

struct Hypothesis {
  double score;
  std::vector<std::int32_t> history;
  PhoneSequence phones;
  std::string rendered;
};

bool Better(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.rendered < b.rendered;
}

// Up to `keep` hypotheses per history, distinct phone strings, best first.
using Bucket = std::map<std::vector<std::int32_t>, std::vector<Hypothesis>>;

void Offer(Bucket& bucket, Hypothesis h, std::size_t keep) {
  std::vector<Hypothesis>& slot = bucket[h.history];
  auto same = std::find_if(slot.begin(), slot.end(), [&](const Hypothesis& o) {
    return o.rendered == h.rendered;
  });
  if (same != slot.end()) {
    if (!Better(h, *same)) return;
    slot.erase(same);
  }
  slot.insert(std::upper_bound(slot.begin(), slot.end(), h, Better),
              std::move(h));
  if (slot.size() > keep) slot.pop_back();
}

std::vector<Hypothesis> Prune(Bucket& bucket, int beam) {
  std::vector<Hypothesis> hyps;
  for (auto& [history, slot] : bucket) {
    for (Hypothesis& h : slot) hyps.push_back(std::move(h));
  }
  std::sort(hyps.begin(), hyps.end(), Better);
  if (hyps.size() > static_cast<std::size_t>(beam)) hyps.resize(beam);
  return hyps;
}

}  // namespace

std::vector<Prediction> Predict(const G2pModel& model, std::string_view word,
                                int beam, int nbest) {
  if (beam < 1 || nbest < 1) throw DataError("beam and nbest must be >= 1");
  const std::u32string chars = WordGraphemes(word);
  if (chars.empty()) throw DataError("cannot predict an empty word");

  std::set<char32_t> known;
  for (const Graphone& g : model.vocab()) {
    for (char32_t c : unicode::DecodeUtf8(g.graphemes)) known.insert(c);
  }
  std::vector<std::string> unknown;
  for (char32_t c : chars) {
    const std::string ch = unicode::EncodeUtf8(c);
    if (!known.contains(c) &&
        std::find(unknown.begin(), unknown.end(), ch) == unknown.end()) {
      unknown.push_back(ch);
    }
  }
  if (!unknown.empty()) {
    std::string list;
    for (const std::string& ch : unknown) {
      list += (list.empty() ? "'" : ", '") + ch + "'";
    }
    throw DataError("word '" + std::string(word) +
                    "' has characters no graphone covers: " + list);
  }

  const std::size_t n = chars.size();
  const auto history_len = static_cast<std::size_t>(model.order() - 1);
  const auto keep = static_cast<std::size_t>(nbest);
  std::vector<Bucket> agenda(n + 1);
  Offer(agenda[0],
        Hypothesis{0.0, std::vector<std::int32_t>(history_len, G2pModel::kBos),
                   {}, {}},
        keep);

  for (std::size_t pos = 0; pos < n; ++pos) {
    for (const Hypothesis& h : Prune(agenda[pos], beam)) {
      for (std::size_t a = 1; a <= 2 && pos + a <= n; ++a) {
        const std::string chunk = unicode::EncodeUtf8(chars.substr(pos, a));
        for (std::int32_t token : model.TokensFor(chunk)) {
          const Graphone& g = model.vocab()[token - 2];
          Hypothesis next{h.score + model.LogProb(h.history, token), {},
                          h.phones, h.rendered};
          if (history_len > 0) {
            next.history.assign(h.history.begin() + 1, h.history.end());
            next.history.push_back(token);
          }
          for (const Segment& s : g.phones) {
            next.phones.push_back(s);
            if (!next.rendered.empty()) next.rendered += ' ';
            next.rendered += s.canonical();
          }
          Offer(agenda[pos + a], std::move(next), keep);
        }
      }
    }
    agenda[pos].clear();
  }

  std::map<std::string, Hypothesis> finals;
  for (Hypothesis& h : Prune(agenda[n], beam)) {
    if (h.phones.empty()) continue;
    h.score += model.LogProb(h.history, G2pModel::kEos);
    auto it = finals.find(h.rendered);
    if (it == finals.end()) {
      std::string key = h.rendered;
      finals.emplace(std::move(key), std::move(h));
    } else if (h.score > it->second.score) {
      it->second = std::move(h);
    }
  }
  if (finals.empty()) {
    throw DataError("no pronunciation found for '" + std::string(word) + "'");
  }
  std::vector<Hypothesis> ranked;
  for (auto& [rendered, h] : finals) ranked.push_back(std::move(h));
  std::sort(ranked.begin(), ranked.end(), Better);
  std::vector<Prediction> out;
  for (std::size_t i = 0; i < ranked.size() && i < static_cast<std::size_t>(nbest);
       ++i) {
    out.push_back(Prediction{std::move(ranked[i].phones), ranked[i].score});
  }
  return out;
}

PhoneSequence EnsemblePredictions(std::span<const PhoneSequence> candidates) {
  if (candidates.empty()) throw DataError("no candidates to ensemble");
  std::vector<std::vector<std::string>> tokens;
  for (const PhoneSequence& c : candidates) {
    std::vector<std::string> t;
    for (const Segment& s : c) t.push_back(s.canonical());
    tokens.push_back(std::move(t));
  }
  std::size_t best = 0;
  std::size_t best_cost = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t cost = 0;
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      cost += EditDistance<std::string>(tokens[i], tokens[j]);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = i;
    }
  }
  return candidates[best];
}

Lexicon G2pCorpus(const G2pModel* model, const Lexicon* lexicon,
                  std::span<const std::vector<std::string>> texts,
                  const G2pCorpusOptions& options) {
  std::vector<std::string> words;
  std::set<std::string> seen;
  for (const auto& text : texts) {
    for (const std::string& token : text) {
      std::string w = NormalizeWord(token);
      if (seen.insert(w).second) words.push_back(std::move(w));
    }
  }

  std::vector<Pronunciation> chosen(words.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto* prons = lexicon ? lexicon->Find(words[i]) : nullptr;
    if (prons != nullptr) {
      chosen[i] = prons->front();
      chosen[i].count = 1;
    } else if (model == nullptr) {
      throw DataError("no pronunciation for '" + words[i] +
                      "' and no G2P model to predict it");
    } else {
      pending.push_back(i);
    }
  }
  io::ParallelFor(pending.size(), options.jobs, [&](std::size_t k) {
    const std::size_t i = pending[k];
    try {
      chosen[i] = Pronunciation{
          std::move(Predict(*model, words[i], options.beam, 1).front().phones),
          1, Provenance::kG2p};
    } catch (const DataError& e) {
      throw DataError("word '" + words[i] + "': " + e.what());
    }
  });

  Lexicon out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.Add(words[i], std::move(chosen[i].phones), chosen[i].provenance);
  }
  return out;
}

}  // namespace phonefront
