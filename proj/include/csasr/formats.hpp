// Copyright 2026 The csasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSASR_FORMATS_HPP_
#define CSASR_FORMATS_HPP_

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "csasr/error.hpp"
#include "csasr/matrix.hpp"
#include "csasr/rescore.hpp"
#include "csasr/unicode.hpp"
#include "csasr/util.hpp"

namespace csasr {

// File formats. UTF-8 only; output always uses LF, input tolerates CRLF and
// a leading BOM. Parsers reject malformed content with path:line context
// instead of guessing.

struct Corpus {
  OrderedMap<std::string> utts;  // utt-id -> raw text, file order
  std::string path;
};

namespace detail {

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::string all((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (all.size() >= 3 && all.compare(0, 3, "\xEF\xBB\xBF") == 0)
    all.erase(0, 3);
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= all.size()) {
    size_t nl = all.find('\n', start);
    if (nl == std::string::npos) {
      if (start < all.size()) lines.push_back(all.substr(start));
      break;
    }
    size_t end = nl;
    if (end > start && all[end - 1] == '\r') --end;
    lines.push_back(all.substr(start, end - start));
    start = nl + 1;
  }
  return lines;
}

inline double parse_double_field(const std::string& s, const std::string& path,
                                 int line, const char* what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v))
    throw ParseError(path, line, std::string("malformed ") + what +
                                     " field '" + s + "'");
  return v;
}

inline long parse_int_field(const std::string& s, const std::string& path,
                            int line, const char* what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw ParseError(path, line, std::string("malformed ") + what +
                                     " field '" + s + "'");
  return v;
}

}  // namespace detail

// Transcripts: one utterance per line, "<utt-id> <raw text>". Blank lines
// are skipped; a line with only an utt-id is an utterance with empty text.
inline Corpus read_transcripts(const std::string& path) {
  Corpus corpus;
  corpus.path = path;
  std::unordered_map<std::string, int> first_line;
  std::vector<std::string> lines = detail::read_lines(path);
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    const int lineno = static_cast<int>(li) + 1;
    if (!uni::valid_utf8(line))
      throw ParseError(path, lineno, "invalid UTF-8");
    size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t id_start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i == id_start) continue;  // blank line
    std::string utt = line.substr(id_start, i - id_start);
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::string text = line.substr(i);
    auto prev = first_line.find(utt);
    if (prev != first_line.end())
      throw ParseError(path, lineno,
                       "duplicate utt-id '" + utt + "' (first at line " +
                           std::to_string(prev->second) + ")");
    first_line.emplace(utt, lineno);
    corpus.utts.insert(std::move(utt), std::move(text));
  }
  return corpus;
}

inline std::string format_transcripts(const OrderedMap<std::string>& utts) {
  std::ostringstream out;
  for (const auto& [utt, text] : utts) {
    out << utt;
    if (!text.empty()) out << ' ' << text;
    out << '\n';
  }
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write file: " + path);
  f << content;
  if (!f) throw IoError("short write: " + path);
}

inline void write_transcripts(const std::string& path,
                              const OrderedMap<std::string>& utts) {
  write_file(path, format_transcripts(utts));
}

// N-best TSV: utt_id, rank, am_logp, lm_logp, ilm_logp, text. Empty lm/ilm
// fields mean the score is absent.
inline NBestMap read_nbest(const std::string& path) {
  NBestMap out;
  std::vector<std::string> lines = detail::read_lines(path);
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    const int lineno = static_cast<int>(li) + 1;
    if (line.empty()) continue;
    if (!uni::valid_utf8(line)) throw ParseError(path, lineno, "invalid UTF-8");
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 6)
      throw ParseError(path, lineno,
                       "expected 6 tab-separated fields, got " +
                           std::to_string(fields.size()));
    NBestEntry e;
    e.utt_id = fields[0];
    if (e.utt_id.empty()) throw ParseError(path, lineno, "empty utt-id");
    long rank = detail::parse_int_field(fields[1], path, lineno, "rank");
    if (rank < 1) throw ParseError(path, lineno, "rank must be >= 1");
    e.rank = static_cast<int>(rank);
    e.am_logp = detail::parse_double_field(fields[2], path, lineno, "am_logp");
    if (!fields[3].empty())
      e.lm_logp = detail::parse_double_field(fields[3], path, lineno, "lm_logp");
    if (!fields[4].empty())
      e.ilm_logp =
          detail::parse_double_field(fields[4], path, lineno, "ilm_logp");
    e.text = fields[5];
    if (std::vector<NBestEntry>* list = out.find(e.utt_id)) {
      list->push_back(std::move(e));
    } else {
      std::string key = e.utt_id;
      out.insert(std::move(key), {std::move(e)});
    }
  }
  return out;
}

inline std::string format_nbest(const NBestMap& nbest) {
  std::ostringstream out;
  for (const auto& [utt, entries] : nbest) {
    (void)utt;
    for (const NBestEntry& e : entries) {
      out << e.utt_id << '\t' << e.rank << '\t' << format_double(e.am_logp)
          << '\t' << (e.lm_logp ? format_double(*e.lm_logp) : "") << '\t'
          << (e.ilm_logp ? format_double(*e.ilm_logp) : "") << '\t' << e.text
          << '\n';
    }
  }
  return out.str();
}

inline void write_nbest(const std::string& path, const NBestMap& nbest) {
  write_file(path, format_nbest(nbest));
}

// Feature archive: per matrix a header line "utt_id rows cols" followed by
// `rows` lines of `cols` space-separated values, 9 significant digits
// (lossless for float).
inline OrderedMap<FeatureMatrix> read_feats(const std::string& path) {
  OrderedMap<FeatureMatrix> out;
  std::vector<std::string> lines = detail::read_lines(path);
  size_t li = 0;
  while (li < lines.size()) {
    if (trim(lines[li]).empty()) {
      ++li;
      continue;
    }
    const int header_no = static_cast<int>(li) + 1;
    std::vector<std::string> head = split_whitespace(lines[li]);
    if (head.size() != 3)
      throw ParseError(path, header_no, "expected header 'utt_id rows cols'");
    long rows = detail::parse_int_field(head[1], path, header_no, "rows");
    long cols = detail::parse_int_field(head[2], path, header_no, "cols");
    if (rows < 0 || cols < 0)
      throw ParseError(path, header_no, "negative matrix dimension");
    if (rows > 0 && cols == 0)
      throw ParseError(path, header_no, "matrix with rows but zero cols");
    FeatureMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    ++li;
    for (long r = 0; r < rows; ++r, ++li) {
      if (li >= lines.size())
        throw ParseError(path, static_cast<int>(li) + 1,
                         "unexpected end of file inside matrix '" + head[0] + "'");
      std::vector<std::string> vals = split_whitespace(lines[li]);
      if (static_cast<long>(vals.size()) != cols)
        throw ParseError(path, static_cast<int>(li) + 1,
                         "expected " + std::to_string(cols) + " values, got " +
                             std::to_string(vals.size()));
      for (long c = 0; c < cols; ++c) {
        double v = detail::parse_double_field(vals[c], path,
                                              static_cast<int>(li) + 1, "value");
        m.at(static_cast<int>(r), static_cast<int>(c)) = static_cast<float>(v);
      }
    }
    if (!out.insert(head[0], std::move(m)))
      throw ParseError(path, header_no, "duplicate utt-id '" + head[0] + "'");
  }
  return out;
}

inline std::string format_feats(const OrderedMap<FeatureMatrix>& feats) {
  std::ostringstream out;
  for (const auto& [utt, m] : feats) {
    out << utt << ' ' << m.rows << ' ' << m.cols << '\n';
    for (int r = 0; r < m.rows; ++r) {
      for (int c = 0; c < m.cols; ++c) {
        if (c) out << ' ';
        out << strformat("%.9g", m.at(r, c));
      }
      out << '\n';
    }
  }
  return out.str();
}

inline void write_feats(const std::string& path,
                        const OrderedMap<FeatureMatrix>& feats) {
  write_file(path, format_feats(feats));
}

inline void write_dialogue_map(const std::string& path,
                               const OrderedMap<std::string>& map) {
  std::ostringstream out;
  for (const auto& [utt, dialogue] : map) out << utt << '\t' << dialogue << '\n';
  write_file(path, out.str());
}

// Dialogue map: "utt_id<TAB>dialogue_id" per line.
inline OrderedMap<std::string> read_dialogue_map(const std::string& path) {
  OrderedMap<std::string> out;
  std::unordered_map<std::string, int> first_line;
  std::vector<std::string> lines = detail::read_lines(path);
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    const int lineno = static_cast<int>(li) + 1;
    if (line.empty()) continue;
    if (!uni::valid_utf8(line)) throw ParseError(path, lineno, "invalid UTF-8");
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw ParseError(path, lineno, "expected 'utt_id<TAB>dialogue_id'");
    auto prev = first_line.find(fields[0]);
    if (prev != first_line.end())
      throw ParseError(path, lineno,
                       "duplicate utt-id '" + fields[0] + "' (first at line " +
                           std::to_string(prev->second) + ")");
    first_line.emplace(fields[0], lineno);
    out.insert(fields[0], fields[1]);
  }
  return out;
}

}  // namespace csasr

#endif  // CSASR_FORMATS_HPP_
