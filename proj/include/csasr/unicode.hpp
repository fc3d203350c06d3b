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

#ifndef CSASR_UNICODE_HPP_
#define CSASR_UNICODE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace csasr {
namespace uni {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes UTF-8; each invalid byte becomes U+FFFD so callers stay total.
inline std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  auto cont = [&](size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  while (i < s.size()) {
    unsigned char c = s[i];
    if (c < 0x80) {
      out.push_back(c);
      i += 1;
    } else if ((c & 0xE0) == 0xC0 && cont(1)) {
      char32_t cp = (c & 0x1Fu) << 6 | (s[i + 1] & 0x3Fu);
      out.push_back(cp >= 0x80 ? cp : kReplacement);
      i += 2;
    } else if ((c & 0xF0) == 0xE0 && cont(1) && cont(2)) {
      char32_t cp =
          (c & 0x0Fu) << 12 | (s[i + 1] & 0x3Fu) << 6 | (s[i + 2] & 0x3Fu);
      bool ok = cp >= 0x800 && !(cp >= 0xD800 && cp <= 0xDFFF);
      out.push_back(ok ? cp : kReplacement);
      i += 3;
    } else if ((c & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
      char32_t cp = (c & 0x07u) << 18 | (s[i + 1] & 0x3Fu) << 12 |
                    (s[i + 2] & 0x3Fu) << 6 | (s[i + 3] & 0x3Fu);
      bool ok = cp >= 0x10000 && cp <= 0x10FFFF;
      out.push_back(ok ? cp : kReplacement);
      i += 4;
    } else {
      out.push_back(kReplacement);
      i += 1;
    }
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size() * 3);
  for (char32_t cp : s) append_utf8(out, cp);
  return out;
}

// Valid iff decoding and re-encoding reproduces the bytes. Overlong forms,
// surrogates and stray continuation bytes all decode to U+FFFD and fail the
// comparison.
inline bool valid_utf8(std::string_view s) {
  return encode_utf8(decode_utf8(s)) == s;
}

// Fullwidth ASCII variants fold to their halfwidth forms, the ideographic
// space to a plain space.
inline char32_t fold_width(char32_t cp) {
  if (cp >= 0xFF01 && cp <= 0xFF5E) return cp - 0xFEE0;
  if (cp == 0x3000) return ' ';
  return cp;
}

inline bool is_ascii_letter(char32_t cp) {
  return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
}

inline bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

inline char32_t to_upper_ascii(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') ? cp - 0x20 : cp;
}

// CJK Unified Ideographs plus Extension A. Everything else CJK-adjacent
// (kana, hangul, radicals, compatibility blocks) is deliberately not
// Mandarin here.
inline bool is_cjk_ideograph(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF);
}

inline bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' ||
         cp == '\f' || cp == 0x85 || cp == 0xA0 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

// Zero-width/format characters that are dropped without acting as a
// separator.
inline bool is_format(char32_t cp) {
  return (cp >= 0x200B && cp <= 0x200F) || (cp >= 0x202A && cp <= 0x202E) ||
         cp == 0xFEFF || (cp < 0x20 && !is_space(cp)) || cp == 0x7F;
}

// Punctuation and symbol classes (Unicode P* and S*), realized as the
// block ranges that actually occur in Mandarin-English transcripts. Letter
// and number code points inside those blocks (U+3005..U+3007, ordinal
// indicators) are excluded.
inline bool is_punct_or_symbol(char32_t cp) {
  if (cp < 0x80)
    return !is_ascii_letter(cp) && !is_ascii_digit(cp) && !is_space(cp) &&
           !is_format(cp) && cp != '\'';
  if (cp >= 0xA1 && cp <= 0xBF) return cp != 0xAA && cp != 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return true;
  if (cp >= 0x2010 && cp <= 0x2027) return true;
  if (cp >= 0x2030 && cp <= 0x205E) return true;
  if (cp >= 0x2060 && cp <= 0x206F) return true;
  if (cp >= 0x20A0 && cp <= 0x20CF) return true;   // currency
  if (cp >= 0x2100 && cp <= 0x2BFF) return true;   // letterlike..misc symbols
  if (cp >= 0x3001 && cp <= 0x303F)
    return cp != 0x3005 && cp != 0x3006 && cp != 0x3007;
  if (cp == 0x30FB) return true;                   // katakana middle dot
  if (cp >= 0x3200 && cp <= 0x33FF) return true;   // enclosed/compat CJK
  if (cp >= 0xFE10 && cp <= 0xFE19) return true;
  if (cp >= 0xFE30 && cp <= 0xFE6F) return true;
  if (cp >= 0xFF5F && cp <= 0xFF65) return true;   // after width folding
  if (cp >= 0xFFE0 && cp <= 0xFFEE) return true;
  if (cp == kReplacement) return true;
  if (cp >= 0x1F000 && cp <= 0x1FFFF) return true; // emoji etc.
  return false;
}

// Coarse script bucket used to split runs of Other-class characters.
enum class ScriptClass {
  kAsciiDigit,
  kLatinOther,
  kGreek,
  kCyrillic,
  kArabic,
  kThai,
  kHiragana,
  kKatakana,
  kHangul,
  kHalfwidthKana,
  kMisc,
};

inline ScriptClass script_class(char32_t cp) {
  if (is_ascii_digit(cp)) return ScriptClass::kAsciiDigit;
  if (cp < 0x370) return ScriptClass::kLatinOther;
  if (cp < 0x400) return ScriptClass::kGreek;
  if (cp < 0x530) return ScriptClass::kCyrillic;
  if (cp >= 0x600 && cp <= 0x6FF) return ScriptClass::kArabic;
  if (cp >= 0xE00 && cp <= 0xE7F) return ScriptClass::kThai;
  if (cp >= 0x3040 && cp <= 0x309F) return ScriptClass::kHiragana;
  if (cp >= 0x30A0 && cp <= 0x30FF) return ScriptClass::kKatakana;
  if ((cp >= 0x1100 && cp <= 0x11FF) || (cp >= 0x3130 && cp <= 0x318F) ||
      (cp >= 0xAC00 && cp <= 0xD7AF))
    return ScriptClass::kHangul;
  if (cp >= 0xFF66 && cp <= 0xFFDC) return ScriptClass::kHalfwidthKana;
  return ScriptClass::kMisc;
}

}  // namespace uni
}  // namespace csasr

#endif  // CSASR_UNICODE_HPP_
