#include "swr/corpus.hpp"

#include <algorithm>
#include <iterator>
#include <fstream>
#include <sstream>

#include "swr/error.hpp"

namespace swr {
namespace {

// Lowercase forms without the trailing period.
constexpr std::string_view kAbbreviations[] = {
    "mr",   "mrs",  "ms",   "dr",   "prof", "sr",   "jr",  "st",   "mt",   "gen",
    "gov",  "sen",  "rep",  "rev",  "col",  "lt",   "sgt", "capt", "cmdr", "adm",
    "maj",  "pres", "vs",   "no",   "jan",  "feb",  "mar", "apr",  "jun",  "jul",
    "aug",  "sep",  "sept", "oct",  "nov",  "dec",  "e.g", "i.e",  "u.s",  "u.n"};

constexpr std::string_view kEnglishStopWords[] = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and", "any",
    "are", "aren", "as", "at", "be", "because", "been", "before", "being", "below", "between",
    "both", "but", "by", "can", "cannot", "could", "couldn", "did", "didn", "do", "does", "doesn",
    "doing", "don", "down", "during", "each", "few", "for", "from", "further", "had", "hadn",
    "has", "hasn", "have", "haven", "having", "he", "her", "here", "hers", "herself", "him",
    "himself", "his", "how", "however", "i", "if", "in", "into", "is", "isn", "it", "its", "itself",
    "just", "ll", "me", "might", "more", "most", "must", "mustn", "my", "myself", "no", "nor", "not",
    "now", "of", "off", "on", "once", "one", "only", "or", "other", "our", "ours", "ourselves",
    "out", "over", "own", "said", "same", "say", "says", "shall", "she", "should", "shouldn", "so",
    "some", "such", "than", "that", "the", "their", "theirs", "them", "themselves", "then",
    "there", "these", "they", "this", "those", "through", "to", "too", "under", "until", "up",
    "upon", "us", "very", "was", "wasn", "we", "were", "weren", "what", "when", "where", "which",
    "while", "who", "whom", "why", "will", "with", "within", "without", "won", "would", "wouldn",
    "yet", "you", "your", "yours", "yourself", "yourselves", "ve", "re", "mr", "mrs", "ms",
    "another", "many", "much", "may", "since", "though", "whether", "although", "among",
    "around", "like", "even", "still"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Bytes of multi-byte UTF-8 sequences count as letters; non-Latin scripts
// then tokenize on whitespace and ASCII punctuation.
bool is_letter(char c) { return is_ascii_alpha(c) || static_cast<unsigned char>(c) >= 0x80; }

bool is_word_char(char c) { return is_letter(c) || is_digit(c) || c == '\''; }

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}'; }

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

bool is_abbreviation(std::string_view text, std::size_t period_pos) {
  std::size_t start = period_pos;
  while (start > 0 && !is_space(text[start - 1]) && text[start - 1] != '(' && text[start - 1] != '"') --start;
  const std::string word = to_lower_ascii(text.substr(start, period_pos - start));
  return std::ranges::find(kAbbreviations, word) != std::end(kAbbreviations);
}

bool is_paragraph_break(std::string_view text, std::size_t pos, std::size_t& end) {
  if (text[pos] != '\n') return false;
  std::size_t i = pos + 1;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
  if (i < text.size() && text[i] == '\n') {
    end = i + 1;
    return true;
  }
  return false;
}

std::size_t count_words(std::string_view text) {
  std::size_t words = 0;
  bool in_chunk = false;
  bool has_alnum = false;
  for (char c : text) {
    if (is_space(c)) {
      if (in_chunk && has_alnum) ++words;
      in_chunk = false;
      has_alnum = false;
      continue;
    }
    in_chunk = true;
    if (is_letter(c) || is_digit(c)) has_alnum = true;
  }
  if (in_chunk && has_alnum) ++words;
  return words;
}

bool passes_tag_filter(const FilterConfig& config, const std::string& word) {
  if (!config.use_tag_lexicon) return true;
  const auto it = config.tag_lexicon.find(word);
  // Words missing from the lexicon are treated as open-class nouns.
  if (it == config.tag_lexicon.end() || it->second.empty()) return true;
  const std::string tag = to_lower_ascii(it->second);
  return tag[0] == 'n' || tag[0] == 'j' || tag == "adj" || tag == "propn";
}

}  // namespace

std::vector<std::string> Sentence::kept_stems() const {
  std::vector<std::string> stems;
  for (const Token& t : tokens) {
    if (t.kept) stems.push_back(t.stem);
  }
  return stems;
}

std::size_t Document::total_words() const {
  std::size_t n = 0;
  for (const Sentence& s : sentences) n += s.word_count;
  return n;
}

std::size_t Document::total_chars() const {
  std::size_t n = 0;
  for (const Sentence& s : sentences) n += s.char_length;
  return n;
}

std::size_t Document::kept_token_count() const {
  std::size_t n = 0;
  for (const Sentence& s : sentences) {
    n += static_cast<std::size_t>(std::count_if(s.tokens.begin(), s.tokens.end(), [](const Token& t) { return t.kept; }));
  }
  return n;
}

FilterConfig FilterConfig::english_default() {
  FilterConfig config;
  config.stop_words = default_english_stop_words();
  return config;
}

const std::unordered_set<std::string>& default_english_stop_words() {
  static const std::unordered_set<std::string> words = [] {
    std::unordered_set<std::string> w;
    for (std::string_view s : kEnglishStopWords) w.emplace(s);
    return w;
  }();
  return words;
}

std::size_t utf8_length(std::string_view text) noexcept {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<std::string> segment_sentences(std::string_view raw) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string sentence = collapse_whitespace(raw.substr(start, end - start));
    if (!sentence.empty()) out.push_back(std::move(sentence));
    start = end;
  };

  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t para_end = 0;
    if (is_paragraph_break(raw, i, para_end)) {
      flush(i);
      start = i = para_end;
      continue;
    }
    const char c = raw[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    bool only_period = c == '.';
    while (end < raw.size() && (raw[end] == '.' || raw[end] == '!' || raw[end] == '?')) {
      if (raw[end] != '.') only_period = false;
      ++end;
    }
    while (end < raw.size() && is_closer(raw[end])) ++end;
    const bool at_boundary = end == raw.size() || is_space(raw[end]);
    if (at_boundary && !(only_period && end == i + 1 && is_abbreviation(raw, i))) {
      flush(end);
    }
    i = end;
  }
  flush(raw.size());
  return out;
}

std::string stem_for(std::string_view word, std::string_view language) {
  if (language == "en") return porter_stem(word);
  return std::string(word);
}

std::vector<Token> tokenize_filter(std::string_view sentence_text, const FilterConfig& config) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  std::size_t kept_position = 0;
  while (i < sentence_text.size()) {
    if (!is_word_char(sentence_text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < sentence_text.size() && is_word_char(sentence_text[j])) ++j;
    std::string word = to_lower_ascii(sentence_text.substr(i, j - i));
    i = j;

    if (word.size() >= 2 && word.ends_with("'s")) word.resize(word.size() - 2);
    while (!word.empty() && word.front() == '\'') word.erase(word.begin());
    while (!word.empty() && word.back() == '\'') word.pop_back();
    if (word.empty()) continue;

    Token token;
    token.surface = word;
    const bool alphabetic = std::all_of(word.begin(), word.end(), is_letter);
    token.kept = alphabetic && utf8_length(word) >= config.min_length && !config.stop_words.contains(word) &&
                 passes_tag_filter(config, word);
    if (token.kept) {
      token.stem = stem_for(word, config.language);
      if (token.stem.empty()) token.stem = word;
      token.position_in_doc = kept_position++;
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

Document build_document(std::string_view raw, const FilterConfig& config, std::string source_id) {
  Document doc;
  doc.source_id = std::move(source_id);
  doc.language = config.language;
  std::size_t position = 0;
  for (std::string& text : segment_sentences(raw)) {
    Sentence sentence;
    sentence.index = doc.sentences.size() + 1;
    sentence.tokens = tokenize_filter(text, config);
    for (Token& t : sentence.tokens) {
      t.sentence_index = sentence.index - 1;
      if (t.kept) t.position_in_doc = position++;
    }
    sentence.char_length = utf8_length(text);
    sentence.word_count = count_words(text);
    sentence.raw_text = std::move(text);
    doc.sentences.push_back(std::move(sentence));
  }
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::unordered_set<std::string> load_stop_words(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open stop-word list " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string word = collapse_whitespace(line);
    if (!word.empty()) words.insert(to_lower_ascii(word));
  }
  return words;
}

TagLexicon load_tag_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open tag lexicon " + path.string());
  TagLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected word<TAB>tag");
    }
    lexicon[to_lower_ascii(line.substr(0, tab))] = line.substr(tab + 1);
  }
  return lexicon;
}

}  // namespace swr
