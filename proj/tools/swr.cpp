// swr: command-line front end for summarization, evaluation and tuning.
//
// Exit codes: 0 success, 1 input error, 2 warnings escalated by --strict.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swr/corpus.hpp"
#include "swr/diversity.hpp"
#include "swr/embeddings.hpp"
#include "swr/error.hpp"
#include "swr/kernels.hpp"
#include "swr/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitStrict = 2;

struct CommonOptions {
  swr::PipelineConfig config;
  std::string profile = "inverted_pyramid";
  std::string budget = "100w";
  std::string ablations;
  std::string embeddings;
  std::string stop_words;
  std::string tag_lexicon;
  std::string language = "en";
  std::string oov_policy = "skip";
  std::size_t min_length = 2;
  bool strict = false;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--window", o.config.window, "Co-occurrence window N")->capture_default_str();
  cmd.add_option("--delta", o.config.delta, "Semantic edge threshold (cosine must exceed it)")->capture_default_str();
  cmd.add_option("--alpha", o.config.alpha, "PageRank damping factor")->capture_default_str();
  cmd.add_option("--gamma", o.config.gamma, "RBF kernel width for sentence affinities")->capture_default_str();
  cmd.add_option("--profile", o.profile, "Structure profile: inverted_pyramid | uniform")->capture_default_str();
  cmd.add_option("--budget", o.budget, "Summary budget: 100w, 5s, 665c, 30%w, 30%s")->capture_default_str();
  cmd.add_option("--ablate", o.ablations, "Comma-separated ablations: NSE,NAS,NSC,NSP");
  cmd.add_option("--seed", o.config.seed, "Seed for clustering and random baselines")->capture_default_str();
  cmd.add_option("--tolerance", o.config.tolerance, "PageRank L1 convergence tolerance")->capture_default_str();
  cmd.add_option("--max-iter", o.config.max_iterations, "PageRank iteration cap")->capture_default_str();
  cmd.add_option("--embeddings", o.embeddings, "Word vectors in text format");
  cmd.add_option("--stopwords", o.stop_words, "Stop-word list (one per line); default built-in English list");
  cmd.add_option("--tag-lexicon", o.tag_lexicon, "word<TAB>tag lexicon; enables the noun/adjective filter");
  cmd.add_option("--language", o.language, "Language tag; stemming is applied for 'en' only")->capture_default_str();
  cmd.add_option("--min-length", o.min_length, "Minimum kept token length")->capture_default_str();
  cmd.add_option("--oov-policy", o.oov_policy, "skip | zero")->capture_default_str();
  cmd.add_flag("--strict", o.strict, "Exit with status 2 on convergence or degeneracy warnings");
}

swr::PipelineConfig finish_config(CommonOptions& o) {
  swr::PipelineConfig c = o.config;
  c.profile = swr::parse_profile(o.profile);
  c.budget = swr::SummaryBudget::parse(o.budget);
  c.ablations = swr::Ablations::parse(o.ablations);
  c.validate();
  return c;
}

swr::Resources make_resources(const CommonOptions& o, const std::unordered_set<std::string>& vocabulary) {
  swr::Resources r;
  r.filter.stop_words = o.stop_words.empty() ? swr::default_english_stop_words() : swr::load_stop_words(o.stop_words);
  r.filter.min_length = o.min_length;
  r.filter.language = o.language;
  if (!o.tag_lexicon.empty()) {
    r.filter.tag_lexicon = swr::load_tag_lexicon(o.tag_lexicon);
    r.filter.use_tag_lexicon = true;
  }
  if (!o.embeddings.empty()) {
    swr::OovPolicy policy = swr::OovPolicy::skip;
    if (o.oov_policy == "zero") {
      policy = swr::OovPolicy::zero;
    } else if (o.oov_policy != "skip") {
      throw swr::InputError("unknown OOV policy '" + o.oov_policy + "'");
    }
    auto loaded = swr::load_embeddings(o.embeddings, &vocabulary, policy);
    std::cerr << loaded.report.to_log_line() << '\n';
    r.embeddings = std::move(loaded.table);
  }
  return r;
}

// The vocabulary filter depends on the filtering rules, so resources are
// built in two passes: filter first, then embeddings restricted to it.
swr::Resources resources_for_texts(const CommonOptions& o, const std::vector<std::string>& texts) {
  CommonOptions without_vectors = o;
  without_vectors.embeddings.clear();
  swr::Resources filter_only = make_resources(without_vectors, {});
  std::unordered_set<std::string> vocab;
  for (const auto& t : texts) vocab.merge(swr::document_vocabulary(swr::build_document(t, filter_only.filter)));
  if (o.embeddings.empty()) return filter_only;
  return make_resources(o, vocab);
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  return swr::read_text_file(path);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw swr::InputError("cannot write " + path);
  out << content;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

bool has_escalated_warning(const swr::Diagnostics& d) {
  for (const auto& w : d.warnings) {
    if (w == "non_converged" || w == "degenerate_sentences" || w == "over_budget" || w == "no_edges" ||
        w == "bias_fell_back_to_uniform" || w == "no_kept_tokens" || w == "single_cluster_without_vectors") {
      return true;
    }
  }
  return false;
}

int run_summarize(CommonOptions& o, const std::string& input, const std::string& output, const std::string& format,
                  const std::string& separator, const std::string& diagnostics_path) {
  const swr::PipelineConfig config = finish_config(o);
  const std::string text = read_input(input);
  const swr::Resources resources = resources_for_texts(o, {text});
  const std::string source_id = input == "-" ? "stdin" : std::filesystem::path(input).filename().string();
  const swr::PipelineRun run = swr::summarize(config, text, resources, source_id);

  if (format == "json") {
    nlohmann::ordered_json j = swr::summary_json(run, config);
    j["summary"] = swr::summary_text(run.doc, run.summary, " ");
    write_output(output, j.dump(2) + "\n");
  } else {
    write_output(output, swr::summary_text(run.doc, run.summary, separator == "space" ? " " : "\n") + "\n");
  }
  if (!diagnostics_path.empty()) write_output(diagnostics_path, run.diagnostics.to_json().dump(2) + "\n");
  return o.strict && has_escalated_warning(run.diagnostics) ? kExitStrict : kExitOk;
}

int run_eval(CommonOptions& o, const std::string& dataset, const std::string& budgets, const std::string& systems,
             const std::string& output, const std::string& summary_path, std::size_t workers,
             const std::string& aggregation, bool no_rouge_stem) {
  const swr::PipelineConfig config = finish_config(o);
  const auto docs = swr::load_dataset(dataset);
  std::vector<std::string> texts;
  for (const auto& d : docs) texts.push_back(d.text);
  const swr::Resources resources = resources_for_texts(o, texts);

  swr::EvalOptions options;
  options.workers = workers;
  options.aggregation = swr::rouge::parse_aggregation(aggregation);
  options.tokenizer.stem = !no_rouge_stem;
  for (const auto& b : split_list(budgets)) options.budgets.push_back(swr::SummaryBudget::parse(b));
  if (!systems.empty()) {
    options.systems.clear();
    for (const auto& s : split_list(systems)) options.systems.push_back(swr::parse_system(s));
  }

  const swr::EvalResult result = swr::run_dataset(config, docs, resources, options);
  std::ostringstream csv;
  swr::write_eval_csv(csv, result);
  write_output(output, csv.str());
  if (!summary_path.empty()) write_output(summary_path, swr::eval_summary_json(result).dump(2) + "\n");
  if (result.skipped_documents > 0) {
    std::cerr << "warning: " << result.skipped_documents << " document(s) skipped\n";
  }
  return o.strict && result.skipped_documents > 0 ? kExitStrict : kExitOk;
}

int run_tune(CommonOptions& o, const std::string& dev, const std::string& grid_text, const std::string& output) {
  const swr::PipelineConfig config = finish_config(o);
  const auto docs = swr::load_dataset(dev);
  std::vector<std::string> texts;
  for (const auto& d : docs) texts.push_back(d.text);
  const swr::Resources resources = resources_for_texts(o, texts);

  std::vector<double> grid;
  for (const auto& g : split_list(grid_text)) {
    try {
      grid.push_back(std::stod(g));
    } catch (const std::exception&) {
      throw swr::InputError("invalid grid value '" + g + "'");
    }
  }
  const swr::DeltaTuning tuning = swr::tune_delta(config, docs, resources, grid);
  std::ostringstream csv;
  swr::write_sweep_csv(csv, tuning);
  write_output(output, csv.str());
  std::cerr << "best delta: " << tuning.best_delta << '\n';
  return kExitOk;
}

int run_dump_graph(CommonOptions& o, const std::string& input, const std::string& output,
                   const std::string& scores_path, const std::string& salience_path,
                   const std::string& affinity_path) {
  const swr::PipelineConfig config = finish_config(o);
  const std::string text = read_input(input);
  const swr::Resources resources = resources_for_texts(o, {text});
  const swr::PipelineRun run = swr::summarize(config, text, resources, input);

  std::ostringstream edges;
  edges << std::setprecision(17);
  run.graph.write_edge_list(edges);
  write_output(output, edges.str());

  if (!scores_path.empty()) {
    std::ostringstream s;
    s << std::setprecision(17);
    for (std::size_t i = 0; i < run.graph.node_count(); ++i) s << run.graph.nodes()[i] << '\t' << run.rank.scores[i] << '\n';
    write_output(scores_path, s.str());
  }
  if (!salience_path.empty()) {
    std::ostringstream s;
    s << std::setprecision(17);
    for (std::size_t i = 0; i < run.salience.size(); ++i) s << (i + 1) << '\t' << run.salience[i] << '\n';
    write_output(salience_path, s.str());
  }
  if (!affinity_path.empty()) {
    const swr::EmbeddingTable empty_table;
    const auto bags = swr::sentence_bags(run.doc, resources.embeddings ? *resources.embeddings : empty_table);
    const auto aff = swr::affinity_matrix(swr::sentence_distances(bags).distance, config.gamma);
    std::ostringstream s;
    s << std::setprecision(17);
    for (std::size_t i = 0; i < aff.n; ++i) {
      for (std::size_t j = 0; j < aff.n; ++j) s << (j ? "\t" : "") << aff(i, j);
      s << '\n';
    }
    write_output(affinity_path, s.str());
  }
  return o.strict && has_escalated_warning(run.diagnostics) ? kExitStrict : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extractive single-document summarizer with built-in ROUGE evaluation"};
  app.require_subcommand(1);
  bool show_isa = false;
  app.add_flag("--print-isa", show_isa, "Print the selected SIMD kernel variant to stderr");

  CommonOptions summarize_opts;
  std::string input = "-";
  std::string output;
  std::string format = "text";
  std::string separator = "newline";
  std::string diagnostics_path;
  auto* summarize_cmd = app.add_subcommand("summarize", "Summarize one document");
  add_common(*summarize_cmd, summarize_opts);
  summarize_cmd->add_option("-i,--input", input, "Input text file, '-' for stdin")->capture_default_str();
  summarize_cmd->add_option("-o,--output", output, "Output file (default stdout)");
  summarize_cmd->add_option("--format", format, "text | json")->capture_default_str();
  summarize_cmd->add_option("--separator", separator, "newline | space (text format)")->capture_default_str();
  summarize_cmd->add_option("--diagnostics", diagnostics_path, "Write diagnostics JSON to this file");

  CommonOptions eval_opts;
  std::string dataset;
  std::string budgets = "100w";
  std::string systems;
  std::string eval_output;
  std::string summary_path;
  std::size_t workers = 1;
  std::string aggregation = "average";
  bool no_rouge_stem = false;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate systems on a dataset directory with ROUGE");
  add_common(*eval_cmd, eval_opts);
  eval_cmd->add_option("--dataset", dataset, "Dataset directory (one sub-directory per document)")->required();
  eval_cmd->add_option("--budgets", budgets, "Comma-separated budgets")->capture_default_str();
  eval_cmd->add_option("--systems", systems, "Comma-separated systems (default: all seven)");
  eval_cmd->add_option("-o,--output", eval_output, "CSV output file (default stdout)");
  eval_cmd->add_option("--summary-json", summary_path, "Write per-system mean scores as JSON");
  eval_cmd->add_option("--workers", workers, "Documents processed concurrently")->capture_default_str();
  eval_cmd->add_option("--aggregation", aggregation, "Multi-reference aggregation: average | max")->capture_default_str();
  eval_cmd->add_flag("--no-rouge-stem", no_rouge_stem, "Disable Porter stemming in ROUGE tokenization");

  CommonOptions tune_opts;
  std::string dev;
  std::string grid = "0.4,0.5,0.6,0.7,0.8,0.9";
  std::string tune_output;
  auto* tune_cmd = app.add_subcommand("tune-delta", "Pick the semantic threshold maximizing mean ROUGE-1");
  add_common(*tune_cmd, tune_opts);
  tune_cmd->add_option("--dev", dev, "Development dataset directory")->required();
  tune_cmd->add_option("--grid", grid, "Comma-separated thresholds")->capture_default_str();
  tune_cmd->add_option("-o,--output", tune_output, "Sweep CSV output (default stdout)");

  CommonOptions dump_opts;
  std::string dump_input = "-";
  std::string dump_output;
  std::string scores_path;
  std::string salience_path;
  std::string affinity_path;
  auto* dump_cmd = app.add_subcommand("dump-graph", "Write the word graph edge list and optional score dumps");
  add_common(*dump_cmd, dump_opts);
  dump_cmd->add_option("-i,--input", dump_input, "Input text file, '-' for stdin")->capture_default_str();
  dump_cmd->add_option("-o,--output", dump_output, "Edge list output (default stdout)");
  dump_cmd->add_option("--scores", scores_path, "Write stem<TAB>score");
  dump_cmd->add_option("--salience", salience_path, "Write sentence_index<TAB>salience");
  dump_cmd->add_option("--affinity", affinity_path, "Write the sentence affinity matrix as TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors are input errors; --help exits cleanly.
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }
  if (show_isa) std::cerr << "kernels: " << swr::kernels::isa_name(swr::kernels::active_isa()) << '\n';

  try {
    if (*summarize_cmd) return run_summarize(summarize_opts, input, output, format, separator, diagnostics_path);
    if (*eval_cmd) {
      return run_eval(eval_opts, dataset, budgets, systems, eval_output, summary_path, workers, aggregation,
                      no_rouge_stem);
    }
    if (*tune_cmd) return run_tune(tune_opts, dev, grid, tune_output);
    if (*dump_cmd) {
      return run_dump_graph(dump_opts, dump_input, dump_output, scores_path, salience_path, affinity_path);
    }
  } catch (const swr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
