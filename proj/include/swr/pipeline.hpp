#pragma once

// End-to-end summarization, ablations, baselines, dataset evaluation and
// threshold tuning.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "swr/corpus.hpp"
#include "swr/diversity.hpp"
#include "swr/embeddings.hpp"
#include "swr/graph.hpp"
#include "swr/ranking.hpp"
#include "swr/rouge.hpp"
#include "swr/selection.hpp"

namespace swr {

struct Ablations {
  bool no_semantic_edges = false;  // NSE
  bool no_structure = false;       // NAS
  bool no_clusters = false;        // NSC
  bool no_softplus = false;        // NSP

  /// Comma-separated subset of {NSE, NAS, NSC, NSP}; empty string for none.
  static Ablations parse(std::string_view text);
  static Ablations all() { return {true, true, true, true}; }
  std::string to_string() const;
  bool any() const { return no_semantic_edges || no_structure || no_clusters || no_softplus; }
};

struct PipelineConfig {
  std::size_t window = 2;
  double delta = 0.7;
  double alpha = 0.85;
  double gamma = 1.0;
  StructureProfile profile = StructureProfile::inverted_pyramid;
  SummaryBudget budget;
  Ablations ablations;
  std::uint64_t seed = 42;
  double tolerance = 1e-6;
  std::size_t max_iterations = 100;

  /// Throws InputError on out-of-range values.
  void validate() const;
};

/// Shared, read-only inputs: filtering rules and (optionally) word vectors.
struct Resources {
  FilterConfig filter = FilterConfig::english_default();
  std::optional<EmbeddingTable> embeddings;
};

struct Diagnostics {
  std::string source_id;
  std::size_t sentences = 0;
  std::size_t kept_tokens = 0;
  std::size_t nodes = 0;
  std::size_t cooc_edges = 0;
  std::size_t semantic_edges = 0;
  std::size_t combined_edges = 0;
  std::size_t oov_stems = 0;
  std::size_t iterations_used = 0;
  double residual = 0.0;
  bool converged = true;
  std::size_t c_num = 1;
  std::vector<std::size_t> cluster_sizes;
  std::size_t degenerate_sentences = 0;
  bool over_budget = false;
  std::vector<std::string> warnings;

  nlohmann::ordered_json to_json() const;
};

/// Every intermediate product of one pipeline run.
struct PipelineRun {
  Document doc;
  WordGraph graph;
  StructureBias bias;
  PageRankResult rank;
  std::vector<double> salience;  // by 0-based sentence
  ClusterAssignment clusters;
  SummaryResult summary;
  Diagnostics diagnostics;
};

PipelineRun summarize(const PipelineConfig& config, const Document& doc, const Resources& resources);
PipelineRun summarize(const PipelineConfig& config, std::string_view text, const Resources& resources,
                      std::string source_id = {});

std::string summary_text(const Document& doc, const SummaryResult& summary, std::string_view separator = "\n");

/// {source_id, budget, limit, indices, sizes, flags, diagnostics}
nlohmann::ordered_json summary_json(const PipelineRun& run, const PipelineConfig& config);

/// Seeded uniform sampling: sentences in a shuffled order, each taken if it
/// still fits the budget.
SummaryResult random_select(const Document& doc, const SummaryBudget& budget, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Datasets

struct DatasetDocument {
  std::string id;
  std::string text;
  std::vector<std::string> references;
  /// Per-judge sentence scores, indexed by 0-based sentence; empty if absent.
  std::vector<std::vector<double>> judge_scores;
};

/// One sub-directory per document holding doc.txt, ref.*.txt and optionally
/// judge.*.scores (`sentence_index<TAB>score`, 1-based). Sorted by id.
std::vector<DatasetDocument> load_dataset(const std::filesystem::path& dir);

std::unordered_set<std::string> dataset_vocabulary(const std::vector<DatasetDocument>& docs, const FilterConfig& filter);

enum class System { swr, swr_nse, swr_nas, swr_nsc, swr_nsp, textrank_baseline, random_baseline, judge_combined };

std::string_view system_name(System system) noexcept;
System parse_system(std::string_view name);
const std::vector<System>& default_systems();

/// Configuration for `system` derived from `base` (ablation switches).
PipelineConfig config_for(System system, const PipelineConfig& base);

struct EvalRow {
  std::string doc_id;
  std::string system;
  std::string budget;
  std::optional<rouge::Triple> scores;  // empty on a warning row
  std::string note;
};

struct EvalOptions {
  std::vector<System> systems = default_systems();
  std::vector<SummaryBudget> budgets;
  rouge::TokenizerOptions tokenizer;
  rouge::Aggregation aggregation = rouge::Aggregation::average;
  std::size_t workers = 1;
};

struct EvalResult {
  std::vector<EvalRow> rows;
  std::size_t skipped_documents = 0;
};

EvalResult run_dataset(const PipelineConfig& config, const std::vector<DatasetDocument>& docs,
                       const Resources& resources, const EvalOptions& options);

inline constexpr std::string_view kEvalCsvHeader = "doc_id,system,budget,r1,r2,rsu4";

void write_eval_csv(std::ostream& out, const EvalResult& result);

/// Mean scores per (system, budget), in first-seen order.
nlohmann::ordered_json eval_summary_json(const EvalResult& result);

struct DeltaSweepRow {
  double delta = 0.0;
  double mean_r1 = 0.0;
  std::size_t documents = 0;
};

struct DeltaTuning {
  double best_delta = 0.0;
  std::vector<DeltaSweepRow> sweep;
};

/// Mean ROUGE-1 of the full system per threshold; ties go to the smaller one.
DeltaTuning tune_delta(const PipelineConfig& config, const std::vector<DatasetDocument>& dev_docs,
                       const Resources& resources, std::vector<double> grid,
                       const rouge::TokenizerOptions& tokenizer = {});

void write_sweep_csv(std::ostream& out, const DeltaTuning& tuning);

}  // namespace swr
