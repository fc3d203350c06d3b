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

#include "csasr/scoring.hpp"

#include <vector>

#include "csasr/rng.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace csasr {
namespace {

constexpr int kMan = static_cast<int>(Lang::kMandarin);
constexpr int kEng = static_cast<int>(Lang::kEnglish);

TEST(ScoreUtteranceTest, IdenticalSequencesScoreZero) {
  std::vector<Token> toks = tokenize_raw("我爱CODING");
  ScoreReport r = score_utterance(toks, toks);
  EXPECT_EQ(r.errors(), 0);
  EXPECT_DOUBLE_EQ(r.mer(), 0.0);
  EXPECT_EQ(r.corr, 3);
}

TEST(ScoreUtteranceTest, WorkedExample) {
  ScoreReport r = score_utterance(tokenize_raw("我爱CODING"),
                                  tokenize_raw("我爱CODE"));
  EXPECT_EQ(r.n_ref, 3);
  EXPECT_EQ(r.sub, 1);
  EXPECT_EQ(r.del, 0);
  EXPECT_EQ(r.ins, 0);
  EXPECT_NEAR(r.mer(), 100.0 / 3.0, 1e-9);
  EXPECT_EQ(format_mer(r), "33.33");
  EXPECT_EQ(r.cross_sub[kEng][kEng], 1);
  EXPECT_EQ(r.per_lang[kEng].sub, 1);
  EXPECT_EQ(r.per_lang[kMan].n_ref, 2);
}

TEST(ScoreUtteranceTest, CrossLanguageSubstitution) {
  ScoreReport r = score_utterance(tokenize_raw("打OK"), tokenize_raw("打好"));
  EXPECT_EQ(r.sub, 1);
  EXPECT_EQ(r.cross_sub[kEng][kMan], 1);
  EXPECT_EQ(r.cross_sub[kMan][kEng], 0);
}

TEST(ScoreUtteranceTest, InsertionCountedByHypLanguage) {
  ScoreReport r = score_utterance(tokenize_raw("打"), tokenize_raw("打OK"));
  EXPECT_EQ(r.ins, 1);
  EXPECT_EQ(r.per_lang[kEng].ins, 1);
}

TEST(ScoreUtteranceTest, EmptyReferenceMerUndefined) {
  ScoreReport r = score_utterance({}, tokenize_raw("OK OK"));
  EXPECT_EQ(r.n_ref, 0);
  EXPECT_EQ(r.ins, 2);
  EXPECT_FALSE(r.mer_defined());
  EXPECT_EQ(format_mer(r), "NA");
  // Convention: denominator max(1, n_ref), so the value stays finite.
  EXPECT_DOUBLE_EQ(r.mer(), 200.0);
}

TokenMap corpus_of(std::vector<std::pair<std::string, std::string>> lines) {
  TokenMap out;
  for (auto& [utt, text] : lines) out.insert(utt, tokenize_raw(text));
  return out;
}

TEST(ScoreCorpusTest, IdenticalCorporaScoreZero) {
  TokenMap refs = corpus_of({{"u1", "你好"}, {"u2", "OK"}});
  ScoreReport r = score_corpus(refs, refs);
  EXPECT_DOUBLE_EQ(r.mer(), 0.0);
  EXPECT_EQ(r.n_utts, 2);
}

TEST(ScoreCorpusTest, MissingUtteranceCountsAsDeletions) {
  TokenMap refs = corpus_of({{"u1", "你好吗"}, {"u2", "OK"}});
  TokenMap hyps = corpus_of({{"u2", "OK"}});
  ScoreReport r = score_corpus(refs, hyps);
  EXPECT_EQ(r.del, 3);
  EXPECT_EQ(r.n_ref, 4);
}

TEST(ScoreCorpusTest, UnknownHypUtteranceRejected) {
  TokenMap refs = corpus_of({{"u1", "你好"}});
  TokenMap hyps = corpus_of({{"u9", "你好"}});
  try {
    score_corpus(refs, hyps);
    FAIL() << "expected error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("u9"), std::string::npos);
  }
}

TEST(ScoreCorpusTest, CountsAreAdditiveOverUtterances) {
  TokenMap refs = corpus_of({{"u1", "我爱CODING"}, {"u2", "打OK"}});
  TokenMap hyps = corpus_of({{"u1", "我爱CODE"}, {"u2", "打好"}});
  ScoreReport whole = score_corpus(refs, hyps);
  ScoreReport sum;
  sum.add(score_utterance(*refs.find("u1"), *hyps.find("u1")));
  sum.add(score_utterance(*refs.find("u2"), *hyps.find("u2")));
  EXPECT_EQ(whole.n_ref, sum.n_ref);
  EXPECT_EQ(whole.sub, sum.sub);
  EXPECT_EQ(whole.del, sum.del);
  EXPECT_EQ(whole.ins, sum.ins);
  EXPECT_DOUBLE_EQ(whole.mer(), sum.mer());
}

TEST(ScoreCorpusTest, ReorderingUtterancesKeepsMer) {
  TokenMap refs1 = corpus_of({{"u1", "我爱CODING"}, {"u2", "打OK"}});
  TokenMap refs2 = corpus_of({{"u2", "打OK"}, {"u1", "我爱CODING"}});
  TokenMap hyps = corpus_of({{"u1", "我爱CODE"}, {"u2", "打好"}});
  EXPECT_DOUBLE_EQ(score_corpus(refs1, hyps).mer(),
                   score_corpus(refs2, hyps).mer());
}

TEST(ScoreCorpusTest, ThreadCountDoesNotChangeResult) {
  Rng rng(42);
  const std::vector<Token> alphabet = {{"我", Lang::kMandarin},
                                       {"好", Lang::kMandarin},
                                       {"OK", Lang::kEnglish},
                                       {"GO", Lang::kEnglish}};
  TokenMap refs, hyps;
  for (int u = 0; u < 50; ++u) {
    std::string id = "u" + std::to_string(u);
    refs.insert(id, test::random_tokens(rng, 8, alphabet));
    hyps.insert(id, test::random_tokens(rng, 8, alphabet));
  }
  ScoreReport serial = score_corpus(refs, hyps, 1);
  ScoreReport parallel = score_corpus(refs, hyps, 4);
  EXPECT_EQ(format_report_kv(serial), format_report_kv(parallel));
}

TEST(ReportFormatTest, TableAndKvCarryTheNumbers) {
  ScoreReport r = score_utterance(tokenize_raw("我爱CODING"),
                                  tokenize_raw("我爱CODE"));
  std::string table = format_report(r);
  EXPECT_NE(table.find("MER 33.33"), std::string::npos);
  std::string kv = format_report_kv(r);
  EXPECT_NE(kv.find("mer=33.333333"), std::string::npos);
  EXPECT_NE(kv.find("cross_sub.english.english=1"), std::string::npos);
  EXPECT_NE(kv.find("n_ref=3"), std::string::npos);
}

}  // namespace
}  // namespace csasr
