#include "swr/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "swr/error.hpp"
#include "swr/kernels.hpp"

namespace swr {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool parse_double(std::string_view text, double& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_count(std::string_view text, std::size_t& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::string LoadReport::to_log_line() const {
  nlohmann::ordered_json j;
  j["event"] = "embeddings_loaded";
  j["lines"] = lines;
  j["loaded"] = loaded;
  j["filtered"] = filtered;
  j["duplicates"] = duplicates;
  j["zero_rejected"] = zero_rejected;
  j["header"] = had_header;
  return j.dump();
}

EmbeddingTable::EmbeddingTable(std::size_t dimension, OovPolicy policy)
    : dimension_(dimension), policy_(policy), zeros_(dimension, 0.0) {}

bool EmbeddingTable::contains(std::string_view token) const { return index_.contains(std::string(token)); }

bool EmbeddingTable::insert(std::string token, std::span<const double> vector) {
  if (dimension_ == 0) {
    if (vector.empty()) throw InputError("embedding vector must have at least one component");
    dimension_ = vector.size();
    zeros_.assign(dimension_, 0.0);
  }
  if (vector.size() != dimension_) {
    throw InputError("vector for '" + token + "' has " + std::to_string(vector.size()) + " components, expected " +
                     std::to_string(dimension_));
  }
  const double norm = std::sqrt(kernels::squared_norm(vector));
  if (norm == 0.0 && policy_ == OovPolicy::skip) throw InputError("zero vector for '" + token + "'");

  if (const auto it = index_.find(token); it != index_.end()) {
    std::copy(vector.begin(), vector.end(), data_.begin() + static_cast<std::ptrdiff_t>(it->second * dimension_));
    norms_[it->second] = norm;
    return false;
  }
  index_.emplace(std::move(token), norms_.size());
  data_.insert(data_.end(), vector.begin(), vector.end());
  norms_.push_back(norm);
  return true;
}

std::optional<std::span<const double>> EmbeddingTable::lookup(std::string_view token) const {
  if (const auto it = index_.find(std::string(token)); it != index_.end()) {
    return std::span<const double>(data_.data() + it->second * dimension_, dimension_);
  }
  if (policy_ == OovPolicy::zero && dimension_ > 0) return std::span<const double>(zeros_);
  return std::nullopt;
}

std::optional<double> EmbeddingTable::norm(std::string_view token) const {
  if (const auto it = index_.find(std::string(token)); it != index_.end()) return norms_[it->second];
  if (policy_ == OovPolicy::zero && dimension_ > 0) return 0.0;
  return std::nullopt;
}

LoadedEmbeddings load_embeddings(const std::filesystem::path& path, const std::unordered_set<std::string>* vocab_filter,
                                 OovPolicy policy) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open embeddings file " + path.string());

  LoadedEmbeddings result{EmbeddingTable(0, policy), {}};
  std::size_t dimension = 0;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  auto fail = [&](const std::string& what) {
    throw LoadError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line);
    if (fields.empty()) continue;

    std::size_t count = 0;
    std::size_t header_dim = 0;
    if (line_no == 1 && fields.size() == 2 && parse_count(fields[0], count) && parse_count(fields[1], header_dim)) {
      result.report.had_header = true;
      dimension = header_dim;
      continue;
    }
    ++result.report.lines;
    if (fields.size() < 2) fail("expected a token followed by vector components");

    const std::size_t line_dim = fields.size() - 1;
    if (dimension == 0) dimension = line_dim;
    if (line_dim != dimension) {
      fail("dimension mismatch: " + std::to_string(line_dim) + " components, expected " + std::to_string(dimension));
    }
    std::string token(fields[0]);
    if (vocab_filter != nullptr && !vocab_filter->contains(token)) {
      ++result.report.filtered;
      continue;
    }
    values.resize(line_dim);
    for (std::size_t i = 0; i < line_dim; ++i) {
      if (!parse_double(fields[i + 1], values[i])) fail("cannot parse component '" + std::string(fields[i + 1]) + "'");
    }
    if (policy == OovPolicy::skip && std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
      ++result.report.zero_rejected;
      continue;
    }
    if (result.table.insert(std::move(token), values)) {
      ++result.report.loaded;
    } else {
      ++result.report.duplicates;
    }
  }
  if (result.table.dimension() == 0 && dimension > 0) result.table = EmbeddingTable(dimension, policy);
  return result;
}

std::optional<double> cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  const double na = std::sqrt(kernels::squared_norm(a));
  const double nb = std::sqrt(kernels::squared_norm(b));
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  return std::clamp(kernels::dot(a, b) / (na * nb), -1.0, 1.0);
}

std::optional<double> cosine(std::string_view a, std::string_view b, const EmbeddingTable& table) {
  const auto va = table.lookup(a);
  const auto vb = table.lookup(b);
  if (!va || !vb) return std::nullopt;
  const double na = *table.norm(a);
  const double nb = *table.norm(b);
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  return std::clamp(kernels::dot(*va, *vb) / (na * nb), -1.0, 1.0);
}

std::unordered_map<std::string, std::string> representative_surfaces(const Document& doc) {
  struct Candidate {
    std::size_t count = 0;
    std::size_t first_seen = 0;
  };
  std::unordered_map<std::string, std::unordered_map<std::string, Candidate>> counts;
  std::size_t order = 0;
  for (const Sentence& s : doc.sentences) {
    for (const Token& t : s.tokens) {
      if (!t.kept) continue;
      auto& slot = counts[t.stem];
      auto [it, inserted] = slot.try_emplace(t.surface, Candidate{0, order});
      ++it->second.count;
      ++order;
    }
  }
  std::unordered_map<std::string, std::string> out;
  for (const auto& [stem, surfaces] : counts) {
    const std::string* best = nullptr;
    Candidate best_c;
    for (const auto& [surface, c] : surfaces) {
      if (best == nullptr || c.count > best_c.count || (c.count == best_c.count && c.first_seen < best_c.first_seen)) {
        best = &surface;
        best_c = c;
      }
    }
    out.emplace(stem, *best);
  }
  return out;
}

std::unordered_set<std::string> document_vocabulary(const Document& doc) {
  std::unordered_set<std::string> vocab;
  for (const Sentence& s : doc.sentences) {
    for (const Token& t : s.tokens) {
      if (t.kept) vocab.insert(t.surface);
    }
  }
  return vocab;
}

}  // namespace swr
