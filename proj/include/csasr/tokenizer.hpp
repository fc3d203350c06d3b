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

#ifndef CSASR_TOKENIZER_HPP_
#define CSASR_TOKENIZER_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csasr/unicode.hpp"

namespace csasr {

// Unit language class. Mandarin is scored per character, English per word;
// everything else (digits, kana, non-ASCII Latin, ...) is Other.
enum class Lang { kMandarin = 0, kEnglish = 1, kOther = 2 };

constexpr int kNumLangs = 3;

inline const char* lang_name(Lang l) {
  switch (l) {
    case Lang::kMandarin: return "mandarin";
    case Lang::kEnglish: return "english";
    default: return "other";
  }
}

inline const char* lang_abbrev(Lang l) {
  switch (l) {
    case Lang::kMandarin: return "MAN";
    case Lang::kEnglish: return "ENG";
    default: return "OTH";
  }
}

struct Token {
  std::string surface;
  Lang lang = Lang::kOther;

  friend bool operator==(const Token& a, const Token& b) {
    return a.surface == b.surface && a.lang == b.lang;
  }
};

// Transcript normalization: fullwidth ASCII folded to halfwidth, ASCII
// letters uppercased, punctuation and symbols dropped, whitespace collapsed
// to single spaces and trimmed. The ASCII apostrophe survives so that
// contractions stay single words ("IT'S"). Total on any byte string;
// invalid UTF-8 decodes to U+FFFD, which is dropped as a symbol.
inline std::string normalize(std::string_view text) {
  std::u32string cps = uni::decode_utf8(text);
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    cp = uni::fold_width(cp);
    if (uni::is_space(cp)) {
      pending_space = true;
      continue;
    }
    if (uni::is_format(cp) || uni::is_punct_or_symbol(cp)) continue;
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    uni::append_utf8(out, uni::to_upper_ascii(cp));
  }
  return out;
}

// Splits normalized text into the mixed unit stream: one token per CJK
// ideograph, one token per maximal ASCII letter/apostrophe run (English),
// and runs of anything else split at coarse script boundaries (Other).
// Adjacent scripts split with or without whitespace between them.
inline std::vector<Token> tokenize(std::string_view text) {
  std::u32string cps = uni::decode_utf8(text);
  std::vector<Token> out;
  size_t i = 0;
  auto is_word_char = [](char32_t c) {
    return uni::is_ascii_letter(c) || c == '\'';
  };
  while (i < cps.size()) {
    char32_t cp = cps[i];
    if (uni::is_space(cp) || uni::is_format(cp)) {
      ++i;
      continue;
    }
    if (uni::is_cjk_ideograph(cp)) {
      std::string s;
      uni::append_utf8(s, cp);
      out.push_back({std::move(s), Lang::kMandarin});
      ++i;
      continue;
    }
    if (is_word_char(cp)) {
      std::string s;
      bool has_letter = false;
      while (i < cps.size() && is_word_char(cps[i])) {
        has_letter = has_letter || uni::is_ascii_letter(cps[i]);
        uni::append_utf8(s, uni::to_upper_ascii(cps[i]));
        ++i;
      }
      // A run with no letter at all (bare apostrophes) is not a word.
      out.push_back({std::move(s), has_letter ? Lang::kEnglish : Lang::kOther});
      continue;
    }
    uni::ScriptClass cls = uni::script_class(cp);
    std::string s;
    while (i < cps.size()) {
      char32_t c = cps[i];
      if (uni::is_space(c) || uni::is_format(c) || uni::is_cjk_ideograph(c) ||
          is_word_char(c) || uni::script_class(c) != cls)
        break;
      uni::append_utf8(s, c);
      ++i;
    }
    out.push_back({std::move(s), Lang::kOther});
  }
  return out;
}

// Canonical text form of a token sequence: a single space between
// consecutive non-Mandarin tokens, nothing elsewhere. normalize() of the
// result is a fixed point, and tokenize() recovers the sequence.
inline std::string join_tokens(std::span<const Token> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && tokens[i - 1].lang != Lang::kMandarin &&
        tokens[i].lang != Lang::kMandarin)
      out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

inline std::vector<Token> tokenize_raw(std::string_view raw_text) {
  return tokenize(normalize(raw_text));
}

}  // namespace csasr

#endif  // CSASR_TOKENIZER_HPP_
