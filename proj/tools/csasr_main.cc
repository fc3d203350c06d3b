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

// csasr: a workbench for Mandarin-English code-switching ASR evaluation and
// system combination. One binary, subcommand per pipeline stage, every
// command a pure function of (inputs, flags, seed).

#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "csasr/dsp.hpp"
#include "csasr/formats.hpp"
#include "csasr/losses.hpp"
#include "csasr/rescore.hpp"
#include "csasr/rover.hpp"
#include "csasr/scoring.hpp"
#include "csasr/specaug.hpp"
#include "csasr/textaug.hpp"
#include "csasr/tokenizer.hpp"
#include "csasr/wav.hpp"

namespace {

using namespace csasr;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
  } else {
    write_file(out_path, content);
  }
}

TokenMap tokenize_corpus(const Corpus& corpus) {
  TokenMap out;
  for (const auto& [utt, text] : corpus.utts)
    out.insert(utt, tokenize_raw(text));
  return out;
}

OrderedMap<std::string> tokens_to_text(const TokenMap& tokens) {
  OrderedMap<std::string> out;
  for (const auto& [utt, toks] : tokens) out.insert(utt, join_tokens(toks));
  return out;
}

std::vector<int> parse_label_list(const std::string& s, const char* what) {
  std::vector<int> out;
  for (const std::string& field : split_whitespace(s)) {
    char* end = nullptr;
    long v = std::strtol(field.c_str(), &end, 10);
    if (end == field.c_str() || *end != '\0')
      throw UsageError(std::string("malformed ") + what + " entry '" + field +
                       "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

const FeatureMatrix& single_matrix(const OrderedMap<FeatureMatrix>& feats,
                                   const std::string& path) {
  if (feats.size() != 1)
    throw Error(path + ": expected exactly one matrix, found " +
                std::to_string(feats.size()));
  return feats[0].second;
}

struct GlobalOpts {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  bool verbose = false;
};

struct ScoreOpts {
  std::string ref, hyp;
  bool kv = false;
};

void add_score_cmd(CLI::App& app, GlobalOpts& g) {
  auto opt = std::make_shared<ScoreOpts>();
  CLI::App* cmd = app.add_subcommand(
      "score", "Score hypothesis transcripts against a reference (MER)");
  cmd->add_option("--ref", opt->ref, "reference transcript file")->required();
  cmd->add_option("--hyp", opt->hyp, "hypothesis transcript file")->required();
  cmd->add_flag("--kv", opt->kv, "emit machine-readable key=value lines");
  cmd->callback([opt, &g] {
    TokenMap refs = tokenize_corpus(read_transcripts(opt->ref));
    TokenMap hyps = tokenize_corpus(read_transcripts(opt->hyp));
    ScoreReport rep = score_corpus(refs, hyps, g.threads);
    std::fputs((opt->kv ? format_report_kv(rep) : format_report(rep)).c_str(),
               stdout);
  });
}

struct RoverOpts {
  std::vector<std::string> hyps;
  std::string out = "-";
  std::string ref;
  std::string sweep;
  std::string sweep_out = "-";
  double en_weight = 1.0, man_weight = 1.0, other_weight = 1.0,
         null_weight = 1.0;
};

void add_rover_cmd(CLI::App& app, GlobalOpts& g) {
  auto opt = std::make_shared<RoverOpts>();
  CLI::App* cmd = app.add_subcommand(
      "rover", "Fuse system outputs by WTN alignment and weighted voting");
  cmd->add_option("--hyps", opt->hyps,
                  "system transcript files, order significant (>= 2)")
      ->required()
      ->expected(-1);
  cmd->add_option("--out", opt->out, "fused transcript output ('-' = stdout)");
  cmd->add_option("--en-weight", opt->en_weight, "English word vote weight");
  cmd->add_option("--man-weight", opt->man_weight,
                  "Mandarin character vote weight");
  cmd->add_option("--other-weight", opt->other_weight, "Other token vote weight");
  cmd->add_option("--null-weight", opt->null_weight, "NULL vote weight");
  cmd->add_option("--ref", opt->ref, "reference transcripts (for --sweep)");
  cmd->add_option("--sweep", opt->sweep,
                  "sweep English weight over integer range lo:hi");
  cmd->add_option("--sweep-out", opt->sweep_out,
                  "sweep TSV output ('-' = stdout)");
  cmd->callback([opt, &g] {
    if (opt->hyps.size() < 2)
      throw UsageError("rover requires at least 2 systems, got " +
                       std::to_string(opt->hyps.size()));
    std::vector<TokenMap> systems;
    systems.reserve(opt->hyps.size());
    for (const std::string& path : opt->hyps)
      systems.push_back(tokenize_corpus(read_transcripts(path)));
    VoteWeights w{opt->man_weight, opt->en_weight, opt->other_weight,
                  opt->null_weight};
    w.validate();
    if (!opt->sweep.empty()) {
      if (opt->ref.empty()) throw UsageError("--sweep requires --ref");
      std::vector<std::string> parts = split(opt->sweep, ':');
      if (parts.size() != 2)
        throw UsageError("--sweep expects 'lo:hi', got '" + opt->sweep + "'");
      char* end = nullptr;
      long lo = std::strtol(parts[0].c_str(), &end, 10);
      bool ok = end != parts[0].c_str() && *end == '\0';
      long hi = std::strtol(parts[1].c_str(), &end, 10);
      ok = ok && end != parts[1].c_str() && *end == '\0';
      if (!ok || lo < 1 || hi < lo)
        throw UsageError("--sweep expects integers 1 <= lo <= hi");
      std::vector<double> weights;
      for (long v = lo; v <= hi; ++v) weights.push_back(static_cast<double>(v));
      TokenMap refs = tokenize_corpus(read_transcripts(opt->ref));
      SweepResult res = sweep(systems, refs, weights, w, g.threads);
      std::string tsv;
      for (const SweepRow& row : res.rows)
        tsv += strformat("%g\t%.4f\n", row.en_weight, row.mer);
      emit(opt->sweep_out, tsv);
      std::fprintf(stderr, "best en-weight %g (mer %.4f)\n", res.best_weight,
                   res.best_mer);
      return;
    }
    TokenMap fused = fuse(systems, w, g.threads);
    emit(opt->out, format_transcripts(tokens_to_text(fused)));
  });
}

struct RescoreOpts {
  std::string nbest;
  std::string out = "-";
  double lambda_lm = 0.0, lambda_ilm = 0.0;
  bool len_norm = false;
};

void add_rescore_cmd(CLI::App& app) {
  auto opt = std::make_shared<RescoreOpts>();
  CLI::App* cmd = app.add_subcommand(
      "rescore", "Re-rank n-best lists by combined AM/LM/ILM score");
  cmd->add_option("--nbest", opt->nbest, "n-best TSV file")->required();
  cmd->add_option("--lambda-lm", opt->lambda_lm, "external LM weight");
  cmd->add_option("--lambda-ilm", opt->lambda_ilm,
                  "internal LM subtraction weight");
  cmd->add_flag("--len-norm", opt->len_norm,
                "divide combined scores by token count");
  cmd->add_option("--out", opt->out, "winner transcript output ('-' = stdout)");
  cmd->callback([opt] {
    NBestMap nbest = read_nbest(opt->nbest);
    FusionWeights w{opt->lambda_lm, opt->lambda_ilm};
    w.validate();
    OrderedMap<NBestEntry> winners = rerank(nbest, w, opt->len_norm);
    OrderedMap<std::string> out;
    for (const auto& [utt, e] : winners) out.insert(utt, e.text);
    emit(opt->out, format_transcripts(out));
  });
}

struct TextaugOpts {
  std::string in, map;
  std::string out = "-";
  uint64_t seed = 0;
};

void add_textaug_cmd(CLI::App& app) {
  auto opt = std::make_shared<TextaugOpts>();
  CLI::App* cmd = app.add_subcommand(
      "textaug",
      "Triple LM text by pairing same-dialogue sentences chronologically");
  cmd->add_option("--in", opt->in, "transcript file (order = chronology)")
      ->required();
  cmd->add_option("--map", opt->map, "utt_id<TAB>dialogue_id map file")
      ->required();
  cmd->add_option("--seed", opt->seed, "sampling seed");
  cmd->add_option("--out", opt->out, "output text ('-' = stdout)");
  cmd->callback([opt] {
    Corpus corpus = read_transcripts(opt->in);
    OrderedMap<std::string> dmap = read_dialogue_map(opt->map);
    std::string out;
    for (const Dialogue& d : build_dialogues(corpus, dmap))
      for (const std::string& line : make_pairs(d, opt->seed)) {
        out += line;
        out += '\n';
      }
    emit(opt->out, out);
  });
}

struct SpeedOpts {
  std::string in, out;
  double factor = 1.0;
};

void add_speed_cmd(CLI::App& app) {
  auto opt = std::make_shared<SpeedOpts>();
  CLI::App* cmd =
      app.add_subcommand("speed", "Speed-perturb a waveform (sox semantics)");
  cmd->add_option("--in", opt->in, "input WAV (16-bit PCM mono)")->required();
  cmd->add_option("--factor", opt->factor, "speed factor (> 0)")->required();
  cmd->add_option("--out", opt->out, "output WAV")->required();
  cmd->callback([opt] {
    write_wav(opt->out, speed_perturb(read_wav(opt->in), opt->factor));
  });
}

struct FbankOpts {
  std::string in;
  std::string out = "-";
  std::string utt_id;
  FbankConfig cfg;
};

void add_fbank_cmd(CLI::App& app) {
  auto opt = std::make_shared<FbankOpts>();
  CLI::App* cmd =
      app.add_subcommand("fbank", "Extract log-Mel filterbank features");
  cmd->add_option("--in", opt->in, "input WAV (16-bit PCM mono)")->required();
  cmd->add_option("--out", opt->out, "feature archive output ('-' = stdout)");
  cmd->add_option("--frame-len", opt->cfg.frame_len_ms, "frame length in ms");
  cmd->add_option("--frame-shift", opt->cfg.frame_shift_ms, "frame shift in ms");
  cmd->add_option("--mels", opt->cfg.n_mels, "number of mel bins");
  cmd->add_option("--utt-id", opt->utt_id,
                  "utterance id (default: input file stem)");
  cmd->callback([opt] {
    std::string utt = opt->utt_id.empty()
                          ? std::filesystem::path(opt->in).stem().string()
                          : opt->utt_id;
    OrderedMap<FeatureMatrix> feats;
    feats.insert(utt, fbank(read_wav(opt->in), opt->cfg));
    emit(opt->out, format_feats(feats));
  });
}

struct SpecaugOpts {
  std::string in;
  std::string out = "-";
  std::string fill = "zero";
  SpecAugConfig cfg;
};

void add_specaug_cmd(CLI::App& app) {
  auto opt = std::make_shared<SpecaugOpts>();
  CLI::App* cmd = app.add_subcommand(
      "specaug", "Apply SpecAugment (warp + frequency/time masks)");
  cmd->add_option("--in", opt->in, "feature archive input")->required();
  cmd->add_option("--out", opt->out, "feature archive output ('-' = stdout)");
  cmd->add_option("--seed", opt->cfg.seed,
                  "base seed; per-utterance streams derive from it");
  cmd->add_option("--freq-masks", opt->cfg.n_freq_masks, "frequency mask count");
  cmd->add_option("--freq-width", opt->cfg.max_freq_width,
                  "max frequency mask width");
  cmd->add_option("--time-masks", opt->cfg.n_time_masks, "time mask count");
  cmd->add_option("--time-width", opt->cfg.max_time_width,
                  "max time mask width");
  cmd->add_option("--warp", opt->cfg.warp_window, "time warp window W");
  cmd->add_option("--fill", opt->fill, "mask fill value: zero|mean");
  cmd->callback([opt] {
    if (opt->fill == "mean")
      opt->cfg.fill = SpecAugConfig::Fill::kMean;
    else if (opt->fill != "zero")
      throw UsageError("--fill must be 'zero' or 'mean'");
    OrderedMap<FeatureMatrix> out;
    for (const auto& [utt, m] : read_feats(opt->in)) {
      SpecAugConfig cfg = opt->cfg;
      cfg.seed = derive_seed(opt->cfg.seed, utt);
      out.insert(utt, spec_augment(m, cfg));
    }
    emit(opt->out, format_feats(out));
  });
}

struct LossOpts {
  std::string att_real, att_synth, ctc_real, ctc_synth;
  std::string att_labels, ctc_labels;
  int blank = 0;
  LossWeights w{0.3, 0.0};
  bool kl_reverse = false;
};

void add_loss_cmd(CLI::App& app) {
  auto opt = std::make_shared<LossOpts>();
  CLI::App* cmd = app.add_subcommand(
      "loss", "Evaluate attention/CTC/consistency losses and the joint value");
  cmd->add_option("--att-real", opt->att_real,
                  "attention posteriors for real speech")
      ->required();
  cmd->add_option("--att-synth", opt->att_synth,
                  "attention posteriors for synthetic speech")
      ->required();
  cmd->add_option("--ctc-real", opt->ctc_real, "CTC posteriors for real speech")
      ->required();
  cmd->add_option("--ctc-synth", opt->ctc_synth,
                  "CTC posteriors for synthetic speech")
      ->required();
  cmd->add_option("--att-labels", opt->att_labels,
                  "space-separated per-frame label indices")
      ->required();
  cmd->add_option("--ctc-labels", opt->ctc_labels,
                  "space-separated label indices (no blanks)")
      ->required();
  cmd->add_option("--blank", opt->blank, "CTC blank index");
  cmd->add_option("--lambda1", opt->w.lambda1, "CTC weight");
  cmd->add_option("--lambda2", opt->w.lambda2, "consistency weight");
  cmd->add_flag("--kl-reverse", opt->kl_reverse,
                "compute KL(synth || real) instead");
  cmd->callback([opt] {
    opt->w.validate();
    FeatureMatrix att_r = single_matrix(read_feats(opt->att_real), opt->att_real);
    FeatureMatrix att_s =
        single_matrix(read_feats(opt->att_synth), opt->att_synth);
    FeatureMatrix ctc_r = single_matrix(read_feats(opt->ctc_real), opt->ctc_real);
    FeatureMatrix ctc_s =
        single_matrix(read_feats(opt->ctc_synth), opt->ctc_synth);
    std::vector<int> att_labels =
        parse_label_list(opt->att_labels, "--att-labels");
    std::vector<int> ctc_labels =
        parse_label_list(opt->ctc_labels, "--ctc-labels");
    double l_att = cross_entropy(att_r, att_labels);
    double l_att_s = cross_entropy(att_s, att_labels);
    double l_ctc = ctc_nll(ctc_r, ctc_labels, opt->blank);
    double l_ctc_s = ctc_nll(ctc_s, ctc_labels, opt->blank);
    double l_cons = opt->kl_reverse ? kl_consistency(att_s, att_r)
                                    : kl_consistency(att_r, att_s);
    double joint = joint_loss(l_att, l_att_s, l_ctc, l_ctc_s, l_cons, opt->w);
    std::printf("att_real=%.9f\n", l_att);
    std::printf("att_synth=%.9f\n", l_att_s);
    std::printf("ctc_real=%.9f\n", l_ctc);
    std::printf("ctc_synth=%.9f\n", l_ctc_s);
    std::printf("cons=%.9f\n", l_cons);
    std::printf("joint=%.9f\n", joint);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"code-switching ASR evaluation & system combination workbench",
               "csasr"};
  app.require_subcommand(1);
  GlobalOpts global;
  app.add_option("--threads", global.threads, "worker threads for corpus ops");
  app.add_flag("-v,--verbose", global.verbose, "verbose progress on stderr");

  add_score_cmd(app, global);
  add_rover_cmd(app, global);
  add_rescore_cmd(app);
  add_textaug_cmd(app);
  add_speed_cmd(app);
  add_fbank_cmd(app);
  add_specaug_cmd(app);
  add_loss_cmd(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const csasr::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
