#pragma once

// Text ingestion: sentence segmentation, tokenization, filtering, stemming.

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace swr {

inline constexpr std::size_t kNoPosition = std::numeric_limits<std::size_t>::max();

struct Token {
  std::string surface;  // lowercased
  std::string stem;     // empty unless kept
  std::size_t sentence_index = 0;           // 0-based
  std::size_t position_in_doc = kNoPosition;  // offset in the kept-token stream
  bool kept = false;
};

struct Sentence {
  std::size_t index = 0;  // 1-based, document order
  std::string raw_text;
  std::vector<Token> tokens;
  std::size_t char_length = 0;  // Unicode code points in raw_text
  std::size_t word_count = 0;

  /// Stems of kept tokens, one per occurrence, in order.
  std::vector<std::string> kept_stems() const;
};

struct Document {
  std::vector<Sentence> sentences;
  std::string source_id;
  std::string language = "en";

  std::size_t total_words() const;
  std::size_t total_chars() const;
  std::size_t kept_token_count() const;
};

/// Coarse part-of-speech lexicon: word -> tag ("NN", "JJ", "VB", ...).
/// Only the first letter of the tag matters to the filter.
using TagLexicon = std::unordered_map<std::string, std::string>;

struct FilterConfig {
  std::unordered_set<std::string> stop_words;
  std::size_t min_length = 2;
  bool use_tag_lexicon = false;
  TagLexicon tag_lexicon;
  std::string language = "en";

  /// Built-in English stop-word list with min_length 2, lexicon off.
  static FilterConfig english_default();
};

std::vector<std::string> segment_sentences(std::string_view raw);

/// Tokenizes one sentence. Returns every token (kept or not); position
/// fields are relative to the sentence and rebased by build_document.
std::vector<Token> tokenize_filter(std::string_view sentence_text, const FilterConfig& config);

/// Porter (1980) suffix-stripping stemmer for lowercase English words.
std::string porter_stem(std::string_view word);

/// Stem for `word` under the configured language (identity outside English).
std::string stem_for(std::string_view word, std::string_view language);

Document build_document(std::string_view raw, const FilterConfig& config, std::string source_id = {});

std::size_t utf8_length(std::string_view text) noexcept;

const std::unordered_set<std::string>& default_english_stop_words();

/// One token per line; blank lines and '#' comments ignored.
std::unordered_set<std::string> load_stop_words(const std::filesystem::path& path);

/// `word<TAB>tag` per line; '#' comments ignored.
TagLexicon load_tag_lexicon(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace swr
