#include "swr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "swr/error.hpp"

namespace swr {
namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<double> load_judge_scores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<double> scores;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto tab = t.find('\t');
    std::size_t index = 0;
    double score = 0.0;
    bool ok = tab != std::string::npos;
    if (ok) {
      auto r1 = std::from_chars(t.data(), t.data() + tab, index);
      auto r2 = std::from_chars(t.data() + tab + 1, t.data() + t.size(), score);
      ok = r1.ec == std::errc() && r2.ec == std::errc() && index >= 1;
    }
    if (!ok) throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected sentence_index<TAB>score");
    if (scores.size() < index) scores.resize(index, 0.0);
    scores[index - 1] = score;
  }
  return scores;
}

}  // namespace

Ablations Ablations::parse(std::string_view text) {
  Ablations a;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item = trim(text.substr(pos, comma - pos));
    std::transform(item.begin(), item.end(), item.begin(), [](unsigned char c) { return std::toupper(c); });
    if (item == "NSE") {
      a.no_semantic_edges = true;
    } else if (item == "NAS") {
      a.no_structure = true;
    } else if (item == "NSC") {
      a.no_clusters = true;
    } else if (item == "NSP") {
      a.no_softplus = true;
    } else if (!item.empty()) {
      throw InputError("unknown ablation '" + item + "' (expected NSE, NAS, NSC, NSP)");
    }
    pos = comma + 1;
  }
  return a;
}

std::string Ablations::to_string() const {
  std::string out;
  auto add = [&out](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(no_semantic_edges, "NSE");
  add(no_structure, "NAS");
  add(no_clusters, "NSC");
  add(no_softplus, "NSP");
  return out;
}

void PipelineConfig::validate() const {
  if (window < 2) throw InputError("window must be at least 2");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  if (!(gamma > 0.0)) throw InputError("gamma must be positive");
  if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (max_iterations == 0) throw InputError("max_iterations must be positive");
}

nlohmann::ordered_json Diagnostics::to_json() const {
  nlohmann::ordered_json j;
  j["source_id"] = source_id;
  j["sentences"] = sentences;
  j["kept_tokens"] = kept_tokens;
  j["nodes"] = nodes;
  j["cooc_edges"] = cooc_edges;
  j["semantic_edges"] = semantic_edges;
  j["combined_edges"] = combined_edges;
  j["oov_stems"] = oov_stems;
  j["iterations_used"] = iterations_used;
  j["residual"] = residual;
  j["converged"] = converged;
  j["c_num"] = c_num;
  j["cluster_sizes"] = cluster_sizes;
  j["degenerate_sentences"] = degenerate_sentences;
  j["over_budget"] = over_budget;
  j["warnings"] = warnings;
  return j;
}

PipelineRun summarize(const PipelineConfig& config, const Document& doc, const Resources& resources) {
  config.validate();
  if (doc.sentences.empty()) {
    throw InputError("document '" + doc.source_id + "' has no sentences");
  }

  PipelineRun run;
  run.doc = doc;
  Diagnostics& diag = run.diagnostics;
  diag.source_id = doc.source_id;
  diag.sentences = doc.sentences.size();
  diag.kept_tokens = doc.kept_token_count();

  // Word graph.
  const NodeIndex index = NodeIndex::from_document(doc);
  diag.nodes = index.size();
  const EdgeWeights cooc = build_cooccurrence(doc, index, config.window);
  EdgeWeights sem;
  if (resources.embeddings) {
    const auto vectors = node_vectors(doc, index, *resources.embeddings);
    diag.oov_stems = static_cast<std::size_t>(
        std::count_if(vectors.begin(), vectors.end(), [](const auto& v) { return v.empty(); }));
    if (!config.ablations.no_semantic_edges) sem = build_semantic(vectors, config.delta);
  } else {
    diag.oov_stems = index.size();
  }
  try {
    run.graph = normalize_and_combine(index.stems, cooc, sem);
  } catch (const GraphError&) {
    run.graph = WordGraph(index.stems, {}, {});
    if (index.size() > 0) diag.warnings.emplace_back("no_edges");
  }
  attach_sentence_membership(run.graph, doc);
  diag.cooc_edges = run.graph.cooc_weight().size();
  diag.semantic_edges = run.graph.sem_weight().size();
  diag.combined_edges = run.graph.combined().size();

  // Word and sentence scores.
  const StructureProfile profile = config.ablations.no_structure ? StructureProfile::uniform : config.profile;
  run.bias = compute_bias(doc, run.graph, profile);
  if (run.bias.fell_back_to_uniform) diag.warnings.emplace_back("bias_fell_back_to_uniform");
  if (run.graph.node_count() > 0) {
    run.rank = biased_pagerank(run.graph, run.bias.node_prior,
                               {config.alpha, config.tolerance, config.max_iterations});
    run.salience = sentence_salience(doc, run.graph, run.rank.scores, !config.ablations.no_softplus);
  } else {
    diag.warnings.emplace_back("no_kept_tokens");
    run.rank.converged = true;
    run.salience.assign(doc.sentences.size(), 0.0);
  }
  diag.iterations_used = run.rank.iterations;
  diag.residual = run.rank.residual;
  diag.converged = run.rank.converged;
  if (!run.rank.converged) diag.warnings.emplace_back("non_converged");

  // Subtopic clusters.
  const std::size_t n = doc.sentences.size();
  diag.c_num = config.ablations.no_clusters ? 1 : cluster_count(n);
  run.clusters.c_num = diag.c_num;
  run.clusters.label.assign(n, 0);
  if (!config.ablations.no_clusters && diag.c_num > 1) {
    const EmbeddingTable empty_table;
    const auto bags = sentence_bags(doc, resources.embeddings ? *resources.embeddings : empty_table);
    const DistanceMatrix distances = sentence_distances(bags);
    diag.degenerate_sentences = distances.degenerate_count;
    if (distances.degenerate_count > 0) diag.warnings.emplace_back("degenerate_sentences");
    if (distances.degenerate_count < n) {
      run.clusters = spectral_cluster(affinity_matrix(distances.distance, config.gamma), diag.c_num,
                                      SpectralOptions{config.seed});
    } else {
      run.clusters.c_num = 1;
      diag.warnings.emplace_back("single_cluster_without_vectors");
    }
  }
  diag.c_num = run.clusters.c_num;
  diag.cluster_sizes.assign(diag.c_num, 0);
  for (std::size_t l : run.clusters.label) {
    if (l >= diag.cluster_sizes.size()) diag.cluster_sizes.resize(l + 1, 0);
    ++diag.cluster_sizes[l];
  }

  // Selection.
  run.summary = round_robin_select(unit_scores(run.salience, doc), run.clusters, config.budget, doc);
  diag.over_budget = run.summary.over_budget;
  if (run.summary.over_budget) diag.warnings.emplace_back("over_budget");
  return run;
}

PipelineRun summarize(const PipelineConfig& config, std::string_view text, const Resources& resources,
                      std::string source_id) {
  Document doc = build_document(text, resources.filter, std::move(source_id));
  return summarize(config, doc, resources);
}

std::string summary_text(const Document& doc, const SummaryResult& summary, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < summary.selected.size(); ++i) {
    if (i > 0) out += separator;
    out += doc.sentences[summary.selected[i] - 1].raw_text;
  }
  return out;
}

nlohmann::ordered_json summary_json(const PipelineRun& run, const PipelineConfig& config) {
  nlohmann::ordered_json j;
  j["source_id"] = run.doc.source_id;
  j["budget"] = config.budget.to_string();
  j["limit"] = run.summary.limit;
  j["ablations"] = config.ablations.to_string();
  j["indices"] = run.summary.selected;
  j["sizes"] = {{"words", run.summary.total_words},
                {"sentences", run.summary.total_sentences},
                {"chars", run.summary.total_chars}};
  j["flags"] = {{"over_budget", run.summary.over_budget}, {"converged", run.rank.converged}};
  j["diagnostics"] = run.diagnostics.to_json();
  return j;
}

SummaryResult random_select(const Document& doc, const SummaryBudget& budget, std::uint64_t seed) {
  const std::size_t n = doc.sentences.size();
  if (n == 0) throw InputError("cannot summarize an empty document");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

  // Rank = position in the shuffle, so the greedy fill takes shuffled order.
  std::vector<double> rank(n);
  for (std::size_t pos = 0; pos < n; ++pos) rank[order[pos]] = static_cast<double>(n - pos);
  SummaryResult result = top_score_select(rank, budget, doc);
  result.unit_score.assign(n, 0.0);
  return result;
}

// ---------------------------------------------------------------------------

std::vector<DatasetDocument> load_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("dataset directory not found: " + dir.string());
  std::vector<fs::path> doc_dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "doc.txt")) doc_dirs.push_back(entry.path());
  }
  std::sort(doc_dirs.begin(), doc_dirs.end());

  std::vector<DatasetDocument> docs;
  for (const auto& d : doc_dirs) {
    DatasetDocument doc;
    doc.id = d.filename().string();
    doc.text = read_text_file(d / "doc.txt");
    std::vector<fs::path> refs;
    std::vector<fs::path> judges;
    for (const auto& entry : fs::directory_iterator(d)) {
      const std::string name = entry.path().filename().string();
      if (name.starts_with("ref.") && name.ends_with(".txt")) refs.push_back(entry.path());
      if (name.starts_with("judge.") && name.ends_with(".scores")) judges.push_back(entry.path());
    }
    std::sort(refs.begin(), refs.end());
    std::sort(judges.begin(), judges.end());
    for (const auto& r : refs) doc.references.push_back(read_text_file(r));
    for (const auto& jf : judges) doc.judge_scores.push_back(load_judge_scores(jf));
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::unordered_set<std::string> dataset_vocabulary(const std::vector<DatasetDocument>& docs,
                                                   const FilterConfig& filter) {
  std::unordered_set<std::string> vocab;
  for (const auto& d : docs) vocab.merge(document_vocabulary(build_document(d.text, filter, d.id)));
  return vocab;
}

std::string_view system_name(System system) noexcept {
  switch (system) {
    case System::swr:
      return "swr";
    case System::swr_nse:
      return "swr_nse";
    case System::swr_nas:
      return "swr_nas";
    case System::swr_nsc:
      return "swr_nsc";
    case System::swr_nsp:
      return "swr_nsp";
    case System::textrank_baseline:
      return "textrank_baseline";
    case System::random_baseline:
      return "random_baseline";
    case System::judge_combined:
      return "judge_combined";
  }
  return "swr";
}

System parse_system(std::string_view name) {
  for (System s : {System::swr, System::swr_nse, System::swr_nas, System::swr_nsc, System::swr_nsp,
                   System::textrank_baseline, System::random_baseline, System::judge_combined}) {
    if (system_name(s) == name) return s;
  }
  throw InputError("unknown system '" + std::string(name) + "'");
}

const std::vector<System>& default_systems() {
  static const std::vector<System> systems = {System::swr,     System::swr_nse,           System::swr_nas,
                                              System::swr_nsc, System::swr_nsp,           System::textrank_baseline,
                                              System::random_baseline};
  return systems;
}

PipelineConfig config_for(System system, const PipelineConfig& base) {
  PipelineConfig c = base;
  c.ablations = {};
  switch (system) {
    case System::swr_nse:
      c.ablations.no_semantic_edges = true;
      break;
    case System::swr_nas:
      c.ablations.no_structure = true;
      break;
    case System::swr_nsc:
      c.ablations.no_clusters = true;
      break;
    case System::swr_nsp:
      c.ablations.no_softplus = true;
      break;
    case System::textrank_baseline:
      c.ablations = Ablations::all();
      break;
    default:
      break;
  }
  return c;
}

namespace {

std::vector<EvalRow> evaluate_document(const PipelineConfig& config, const DatasetDocument& ddoc,
                                       const Resources& resources, const EvalOptions& options) {
  std::vector<EvalRow> rows;
  if (ddoc.references.empty()) {
    rows.push_back({ddoc.id, "", "", std::nullopt, "skipped: no references"});
    return rows;
  }
  const Document doc = build_document(ddoc.text, resources.filter, ddoc.id);
  if (doc.sentences.empty()) {
    rows.push_back({ddoc.id, "", "", std::nullopt, "skipped: empty document"});
    return rows;
  }

  std::vector<System> systems = options.systems;
  if (!ddoc.judge_scores.empty() && std::find(systems.begin(), systems.end(), System::judge_combined) == systems.end()) {
    systems.push_back(System::judge_combined);
  }

  for (System system : systems) {
    if (system == System::judge_combined && ddoc.judge_scores.empty()) continue;
    for (const SummaryBudget& budget : options.budgets) {
      PipelineConfig c = config_for(system, config);
      c.budget = budget;
      SummaryResult summary;
      if (system == System::random_baseline) {
        summary = random_select(doc, budget, config.seed ^ fnv1a(ddoc.id));
      } else if (system == System::judge_combined) {
        std::vector<double> combined(doc.sentences.size(), 0.0);
        for (const auto& judge : ddoc.judge_scores) {
          for (std::size_t i = 0; i < std::min(judge.size(), combined.size()); ++i) combined[i] += judge[i];
        }
        summary = top_score_select(combined, budget, doc);
      } else {
        summary = summarize(c, doc, resources).summary;
      }
      const auto report = rouge::evaluate(summary_text(doc, summary, " "), ddoc.references, options.tokenizer,
                                          options.aggregation);
      rows.push_back({ddoc.id, std::string(system_name(system)), budget.to_string(), report.aggregate, ""});
    }
  }
  return rows;
}

}  // namespace

EvalResult run_dataset(const PipelineConfig& config, const std::vector<DatasetDocument>& docs,
                       const Resources& resources, const EvalOptions& options) {
  config.validate();
  if (options.budgets.empty()) throw InputError("no budgets given");

  std::vector<std::vector<EvalRow>> per_doc(docs.size());
  std::vector<std::string> errors(docs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      try {
        per_doc[i] = evaluate_document(config, docs[i], resources, options);
      } catch (const Error& e) {
        errors[i] = docs[i].id + ": " + e.what();
      }
    }
  };
  const std::size_t n_workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(docs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& e : errors) {
    if (!e.empty()) throw InputError(e);
  }
  EvalResult result;
  for (auto& rows : per_doc) {
    if (rows.size() == 1 && !rows.front().scores) ++result.skipped_documents;
    for (auto& r : rows) result.rows.push_back(std::move(r));
  }
  return result;
}

void write_eval_csv(std::ostream& out, const EvalResult& result) {
  out << kEvalCsvHeader << '\n';
  for (const auto& r : result.rows) {
    if (!r.scores) {
      out << r.doc_id << ",skipped," << r.budget << ",NA,NA,NA\n";
      continue;
    }
    out << r.doc_id << ',' << r.system << ',' << r.budget << ',' << format_score(r.scores->r1) << ','
        << format_score(r.scores->r2) << ',' << format_score(r.scores->rsu4) << '\n';
  }
}

nlohmann::ordered_json eval_summary_json(const EvalResult& result) {
  struct Acc {
    double r1 = 0, r2 = 0, rsu4 = 0;
    std::size_t n = 0;
  };
  std::vector<std::pair<std::string, Acc>> groups;
  for (const auto& r : result.rows) {
    if (!r.scores) continue;
    const std::string key = r.system + "@" + r.budget;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.emplace_back(key, Acc{});
      it = std::prev(groups.end());
    }
    it->second.r1 += r.scores->r1;
    it->second.r2 += r.scores->r2;
    it->second.rsu4 += r.scores->rsu4;
    ++it->second.n;
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& [key, acc] : groups) {
    const auto at = key.find('@');
    const double n = static_cast<double>(acc.n);
    j.push_back({{"system", key.substr(0, at)},
                 {"budget", key.substr(at + 1)},
                 {"documents", acc.n},
                 {"r1", acc.r1 / n},
                 {"r2", acc.r2 / n},
                 {"rsu4", acc.rsu4 / n}});
  }
  return j;
}

DeltaTuning tune_delta(const PipelineConfig& config, const std::vector<DatasetDocument>& dev_docs,
                       const Resources& resources, std::vector<double> grid, const rouge::TokenizerOptions& tokenizer) {
  if (grid.empty()) throw InputError("delta grid is empty");
  for (double d : grid) {
    if (!(d > 0.0 && d < 1.0)) throw InputError("delta grid values must lie in (0, 1)");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Document> docs;
  std::vector<const DatasetDocument*> sources;
  for (const auto& d : dev_docs) {
    if (d.references.empty()) continue;
    Document doc = build_document(d.text, resources.filter, d.id);
    if (doc.sentences.empty()) continue;
    docs.push_back(std::move(doc));
    sources.push_back(&d);
  }
  if (docs.empty()) throw InputError("dev set has no usable documents");

  std::vector<std::vector<std::vector<std::string>>> refs(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const auto& r : sources[i]->references) refs[i].push_back(rouge::tokenize(r, tokenizer));
  }

  DeltaTuning tuning;
  double best = -1.0;
  for (double delta : grid) {
    PipelineConfig c = config_for(System::swr, config);
    c.delta = delta;
    double total = 0.0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const PipelineRun run = summarize(c, docs[i], resources);
      const auto cand = rouge::tokenize(summary_text(docs[i], run.summary, " "), tokenizer);
      total += rouge::rouge_n(cand, refs[i], 1).value;
    }
    const double mean = total / static_cast<double>(docs.size());
    tuning.sweep.push_back({delta, mean, docs.size()});
    if (mean > best) {
      best = mean;
      tuning.best_delta = delta;
    }
  }
  return tuning;
}

void write_sweep_csv(std::ostream& out, const DeltaTuning& tuning) {
  out << "delta,mean_r1,documents,selected\n";
  for (const auto& row : tuning.sweep) {
    out << format_score(row.delta) << ',' << format_score(row.mean_r1) << ',' << row.documents << ','
        << (row.delta == tuning.best_delta ? 1 : 0) << '\n';
  }
}

}  // namespace swr
