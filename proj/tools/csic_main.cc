// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

// Command-line front end: encode, decode, eval, and bench.
//
// Exit codes: 0 success; 2 unreadable input; 3 bad magic; 4 bad version;
// 5 truncated stream; 6 corrupt field; 7 count mismatch; 8 bad arguments or
// dimensions; 10 numerical failure; 1 anything else.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "csic/bitstream.h"
#include "csic/codec.h"
#include "csic/histogram.h"
#include "csic/image.h"
#include "csic/metrics.h"
#include "csic/recon.h"
#include "csic/sensing.h"
#include "csic/status.h"

namespace csic {
namespace {

namespace fs = std::filesystem;

int ExitCode(Status s) {
  switch (s) {
    case Status::kOk:
      return 0;
    case Status::kIoError:
      return 2;
    case Status::kBadMagic:
      return 3;
    case Status::kBadVersion:
      return 4;
    case Status::kTruncated:
      return 5;
    case Status::kCorrupt:
      return 6;
    case Status::kMismatch:
      return 7;
    case Status::kBadArgument:
    case Status::kBadDimensions:
      return 8;
    case Status::kNumericalFailure:
      return 10;
    default:
      return 1;
  }
}

int Fail(Status s, const std::string& what) {
  std::fprintf(stderr, "error: %s: %s\n", what.c_str(), StatusMessage(s));
  return ExitCode(s);
}

Status ReadFileBytes(const std::string& path, std::vector<uint8_t>* out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return Status::kIoError;
  f.seekg(0, std::ios::end);
  const std::streamoff size = f.tellg();
  f.seekg(0, std::ios::beg);
  out->resize(static_cast<size_t>(size));
  if (size > 0) f.read(reinterpret_cast<char*>(out->data()), size);
  return f ? Status::kOk : Status::kIoError;
}

Status WriteFileBytes(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return Status::kIoError;
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  return f ? Status::kOk : Status::kIoError;
}

int64_t ElapsedMs(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               t0)
      .count();
}

struct DecodeFlags {
  std::string algo = "gaptv";
  std::string denoiser = "tv";
  size_t iters = 0;  // 0 = algorithm default
  double tol = 1e-4;
  uint64_t probe_seed = 0x5eed0d1fULL;
};

Status MakeReconConfig(const DecodeFlags& flags, ReconConfig* cfg) {
  CSIC_RETURN_IF_ERROR(ParseReconAlgo(flags.algo, &cfg->algorithm));
  if (flags.denoiser == "tv") {
    cfg->denoiser = DampDenoiser::kTv;
  } else if (flags.denoiser == "gaussian") {
    cfg->denoiser = DampDenoiser::kGaussian;
  } else {
    return Status::kBadArgument;
  }
  cfg->max_iters = flags.iters > 0
                       ? flags.iters
                       : (cfg->algorithm == ReconAlgo::kGapTv ? kGapTvIters : kDampIters);
  cfg->tol = flags.tol;
  cfg->rng_seed = flags.probe_seed;
  return Status::kOk;
}

int RunEncode(const std::string& in_path, const std::string& out_path,
              const EncodeOptions& opts) {
  ImagePlane img;
  Status st = ReadPgm(in_path, &img);
  if (st != Status::kOk) return Fail(st, "cannot read " + in_path);
  EncodeResult result;
  st = EncodeImage(img, opts, &result);
  if (st != Status::kOk) return Fail(st, "encode failed for " + in_path);
  st = WriteFileBytes(out_path, result.stream);
  if (st != Status::kOk) return Fail(st, "cannot write " + out_path);
  if (result.step_warning) {
    std::fprintf(stderr, "warning: step %.6g exceeds 50x the row norm\n", result.params.step);
  }
  std::printf("bytes=%zu m=%zu step=%.6g l_max=%d mu=%.6g matrix=%s csr=%.6g\n",
              result.stream.size(), result.m, result.params.step, result.params.l_max,
              result.params.mu, MatrixKindName(opts.kind), opts.csr);
  return 0;
}

int RunDecode(const std::string& in_path, const std::string& out_path,
              const DecodeFlags& flags) {
  std::vector<uint8_t> bytes;
  Status st = ReadFileBytes(in_path, &bytes);
  if (st != Status::kOk) return Fail(st, "cannot read " + in_path);
  ReconConfig cfg;
  st = MakeReconConfig(flags, &cfg);
  if (st != Status::kOk) return Fail(st, "bad reconstruction flags");
  DecodeResult result;
  st = DecodeImage(bytes, cfg, &result);
  if (st != Status::kOk) return Fail(st, "decode failed for " + in_path);
  st = WritePgm(result.image, out_path);
  if (st != Status::kOk) return Fail(st, "cannot write " + out_path);
  std::printf("pixels=%zux%zu matrix=%s algo=%s\n", result.image.height, result.image.width,
              MatrixKindName(result.header.kind), ReconAlgoName(cfg.algorithm));
  return 0;
}

int RunEval(const std::string& ref_path, const std::string& test_path) {
  ImagePlane ref, test;
  Status st = ReadPgm(ref_path, &ref);
  if (st != Status::kOk) return Fail(st, "cannot read " + ref_path);
  st = ReadPgm(test_path, &test);
  if (st != Status::kOk) return Fail(st, "cannot read " + test_path);
  double ssim = 0.0, psnr = 0.0;
  st = Ssim(ref, test, &ssim);
  if (st != Status::kOk) return Fail(st, "ssim failed");
  st = Psnr(ref, test, &psnr);
  if (st != Status::kOk) return Fail(st, "psnr failed");
  std::printf("ssim=%.6f psnr=%.3f\n", ssim, psnr);
  return 0;
}

struct BenchJob {
  std::string image_name;
  const ImagePlane* image = nullptr;
  MatrixKind kind = MatrixKind::kDct2d;
  double csr = 0.1;
  std::string algo;
};

struct BenchRow {
  std::string csv;
  std::string error;
  size_t bytes = 0;
};

Status DumpHistogram(const std::vector<uint8_t>& stream, const std::string& path) {
  CodedImage coded;
  CSIC_RETURN_IF_ERROR(ReadStream(stream, &coded));
  std::map<int32_t, uint64_t> counts;
  for (int32_t label : coded.merged_labels) ++counts[label];
  std::ofstream f(path, std::ios::trunc);
  if (!f) return Status::kIoError;
  f << "codeword,count\n";
  for (const auto& [label, count] : counts) f << label << "," << count << "\n";
  return f ? Status::kOk : Status::kIoError;
}

int RunBench(const std::string& corpus_dir, const std::string& out_csv,
             const std::string& hist_dir, const std::vector<double>& csrs,
             const std::vector<std::string>& matrices, const std::vector<std::string>& algos,
             const DecodeFlags& decode_flags, double c_const, uint64_t seed, size_t threads) {
  std::vector<std::string> pgm_paths;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(corpus_dir, ec)) {
    if (entry.path().extension() == ".pgm") pgm_paths.push_back(entry.path().string());
  }
  if (ec) {
    std::fprintf(stderr, "error: cannot read corpus directory %s\n", corpus_dir.c_str());
    return 2;
  }
  std::sort(pgm_paths.begin(), pgm_paths.end());

  std::vector<MatrixKind> kinds;
  for (const std::string& name : matrices) {
    MatrixKind kind;
    if (ParseMatrixKind(name, &kind) != Status::kOk) {
      std::fprintf(stderr, "error: unknown matrix kind %s\n", name.c_str());
      return 8;
    }
    kinds.push_back(kind);
  }
  for (const std::string& algo : algos) {
    ReconAlgo parsed;
    if (ParseReconAlgo(algo, &parsed) != Status::kOk) {
      std::fprintf(stderr, "error: unknown algorithm %s\n", algo.c_str());
      return 8;
    }
  }

  std::vector<ImagePlane> images(pgm_paths.size());
  std::vector<std::string> names(pgm_paths.size());
  for (size_t i = 0; i < pgm_paths.size(); ++i) {
    const Status st = ReadPgm(pgm_paths[i], &images[i]);
    if (st != Status::kOk) return Fail(st, "cannot read " + pgm_paths[i]);
    names[i] = fs::path(pgm_paths[i]).stem().string();
  }

  if (!hist_dir.empty()) fs::create_directories(hist_dir, ec);

  // One encode per (image, kind, csr); one row per (image, kind, csr, algo).
  std::vector<BenchJob> jobs;
  for (size_t i = 0; i < images.size(); ++i) {
    for (MatrixKind kind : kinds) {
      for (double csr : csrs) {
        for (const std::string& algo : algos) {
          jobs.push_back({names[i], &images[i], kind, csr, algo});
        }
      }
    }
  }

  std::vector<BenchRow> rows(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
      const BenchJob& job = jobs[j];
      BenchRow& row = rows[j];
      EncodeOptions opts;
      opts.kind = job.kind;
      opts.csr = job.csr;
      opts.c_const = c_const;
      opts.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      EncodeResult enc;
      Status st = EncodeImage(*job.image, opts, &enc);
      if (st != Status::kOk) {
        row.error = "encode: " + std::string(StatusMessage(st));
        continue;
      }
      const int64_t enc_ms = ElapsedMs(t0);
      row.bytes = enc.stream.size();

      DecodeFlags flags = decode_flags;
      flags.algo = job.algo;
      ReconConfig cfg;
      st = MakeReconConfig(flags, &cfg);
      if (st != Status::kOk) {
        row.error = "flags: " + std::string(StatusMessage(st));
        continue;
      }
      const auto t1 = std::chrono::steady_clock::now();
      DecodeResult dec;
      st = DecodeImage(enc.stream, cfg, &dec);
      if (st != Status::kOk) {
        row.error = "decode: " + std::string(StatusMessage(st));
        continue;
      }
      const int64_t dec_ms = ElapsedMs(t1);
      double ssim = 0.0, psnr = 0.0;
      st = Ssim(*job.image, dec.image, &ssim);
      if (st == Status::kOk) st = Psnr(*job.image, dec.image, &psnr);
      if (st != Status::kOk) {
        row.error = "metrics: " + std::string(StatusMessage(st));
        continue;
      }
      char buf[256];
      std::snprintf(buf, sizeof(buf), "%s,%s,%s,%g,%.6g,%zu,%.6f,%.3f,%" PRId64 ",%" PRId64,
                    job.image_name.c_str(), MatrixKindName(job.kind), job.algo.c_str(), job.csr,
                    enc.params.step, enc.stream.size(), ssim, psnr, enc_ms, dec_ms);
      row.csv = buf;
      if (!hist_dir.empty() && job.algo == algos.front()) {
        char name[160];
        std::snprintf(name, sizeof(name), "%s_%s_%g.csv", job.image_name.c_str(),
                      MatrixKindName(job.kind), job.csr);
        const Status hist_st = DumpHistogram(enc.stream, hist_dir + "/" + name);
        if (hist_st != Status::kOk) row.error = "histogram: " + std::string(StatusMessage(hist_st));
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::ofstream csv(out_csv, std::ios::trunc);
  if (!csv) {
    std::fprintf(stderr, "error: cannot write %s\n", out_csv.c_str());
    return 2;
  }
  csv << "image,matrix,algo,csr,step,bytes,ssim,psnr,enc_ms,dec_ms\n";
  for (size_t j = 0; j < jobs.size(); ++j) {
    if (!rows[j].error.empty()) {
      std::fprintf(stderr, "row %s/%s/%g/%s failed: %s\n", jobs[j].image_name.c_str(),
                   MatrixKindName(jobs[j].kind), jobs[j].csr, jobs[j].algo.c_str(),
                   rows[j].error.c_str());
      continue;
    }
    csv << rows[j].csv << "\n";
  }
  csv.close();

  // Coded size must grow with the measurement rate within each curve.
  for (size_t j = 0; j < jobs.size(); ++j) {
    if (!rows[j].error.empty()) continue;
    for (size_t k = j + 1; k < jobs.size(); ++k) {
      if (jobs[k].image_name != jobs[j].image_name || jobs[k].kind != jobs[j].kind ||
          jobs[k].algo != jobs[j].algo || !rows[k].error.empty()) {
        continue;
      }
      if (jobs[k].csr > jobs[j].csr && rows[k].bytes <= rows[j].bytes) {
        std::fprintf(stderr, "warning: size not increasing for %s/%s: csr %g -> %g\n",
                     jobs[j].image_name.c_str(), MatrixKindName(jobs[j].kind), jobs[j].csr,
                     jobs[k].csr);
      }
    }
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Compressive-sensing image codec"};
  app.require_subcommand(1);

  auto* enc = app.add_subcommand("encode", "Encode a PGM image");
  std::string enc_in, enc_out;
  std::string enc_matrix = "dct2d";
  EncodeOptions enc_opts;
  double step_override = 0.0;
  enc->add_option("input", enc_in, "Input PGM (P5) path")->required();
  enc->add_option("output", enc_out, "Output stream path")->required();
  enc->add_option("--matrix", enc_matrix,
                  "Sensing matrix: dct2d, wht2d, srm_dct, srm_wht, rot_dct2d, rot_wht2d");
  enc->add_option("--csr", enc_opts.csr, "Compression ratio M/N in (0, 1]");
  enc->add_option("--c-const", enc_opts.c_const, "Rate-control constant C");
  enc->add_option("--step-override", step_override, "Fixed quantizer step (0 = rate rule)");
  enc->add_option("--seed", enc_opts.seed, "Seed for randomized matrices");

  auto* dec = app.add_subcommand("decode", "Decode a coded stream to PGM");
  std::string dec_in, dec_out;
  DecodeFlags dec_flags;
  dec->add_option("input", dec_in, "Input stream path")->required();
  dec->add_option("output", dec_out, "Output PGM path")->required();
  dec->add_option("--algo", dec_flags.algo, "Reconstruction: gaptv or damp");
  dec->add_option("--denoiser", dec_flags.denoiser, "D-AMP denoiser: tv or gaussian");
  dec->add_option("--iters", dec_flags.iters, "Max iterations (0 = algorithm default)");
  dec->add_option("--tol", dec_flags.tol, "Relative-change stopping threshold");
  dec->add_option("--probe-seed", dec_flags.probe_seed, "Divergence probe seed");

  auto* ev = app.add_subcommand("eval", "SSIM/PSNR between two PGM images");
  std::string ev_ref, ev_test;
  ev->add_option("reference", ev_ref, "Reference PGM")->required();
  ev->add_option("test", ev_test, "Test PGM")->required();

  auto* bench = app.add_subcommand("bench", "Sweep a corpus and write a CSV");
  std::string bench_dir, bench_out = "bench.csv", bench_hist;
  std::vector<double> bench_csrs = {0.02, 0.03, 0.04, 0.05, 0.07, 0.10, 0.15, 0.20};
  std::vector<std::string> bench_matrices = {"dct2d",   "wht2d",     "srm_dct",
                                             "srm_wht", "rot_dct2d", "rot_wht2d"};
  std::vector<std::string> bench_algos = {"gaptv"};
  DecodeFlags bench_flags;
  double bench_c = 2.0;
  uint64_t bench_seed = 1;
  size_t bench_threads = 1;
  bench->add_option("corpus", bench_dir, "Directory of PGM images")->required();
  bench->add_option("--out", bench_out, "Output CSV path");
  bench->add_option("--hist-dir", bench_hist, "Directory for codeword histogram dumps");
  bench->add_option("--csrs", bench_csrs, "Compression ratios to sweep");
  bench->add_option("--matrices", bench_matrices, "Matrix kinds to sweep");
  bench->add_option("--algos", bench_algos, "Reconstruction algorithms to sweep");
  bench->add_option("--iters", bench_flags.iters, "Max iterations (0 = algorithm default)");
  bench->add_option("--tol", bench_flags.tol, "Relative-change stopping threshold");
  bench->add_option("--c-const", bench_c, "Rate-control constant C");
  bench->add_option("--seed", bench_seed, "Seed for randomized matrices");
  bench->add_option("--threads", bench_threads, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  if (enc->parsed()) {
    if (ParseMatrixKind(enc_matrix, &enc_opts.kind) != Status::kOk) {
      std::fprintf(stderr, "error: unknown matrix kind %s\n", enc_matrix.c_str());
      return 8;
    }
    enc_opts.step_override = step_override;
    return RunEncode(enc_in, enc_out, enc_opts);
  }
  if (dec->parsed()) return RunDecode(dec_in, dec_out, dec_flags);
  if (ev->parsed()) return RunEval(ev_ref, ev_test);
  if (bench->parsed()) {
    return RunBench(bench_dir, bench_out, bench_hist, bench_csrs, bench_matrices, bench_algos,
                    bench_flags, bench_c, bench_seed, bench_threads);
  }
  return 1;
}

}  // namespace
}  // namespace csic

int main(int argc, char** argv) { return csic::Main(argc, argv); }
