// Copyright 2026 The cadseq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cadseq/cli.h"
#include "cadseq/cmdseq.h"
#include "cadseq/kernel.h"
#include "cadseq/pipeline.h"
#include "json.hpp"

namespace cadseq {

namespace {

namespace fs = std::filesystem;

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CadError(ErrorCode::Io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to `path`, or to `out` when the path is empty or "-".
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw CadError(ErrorCode::Io, "cannot write " + path);
}

std::string Resolve(const std::string& base_file, const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute() || base_file.empty()) return path;
  return (fs::path(base_file).parent_path() / p).string();
}

nlohmann::json ToJson(Vec3 v) { return nlohmann::json::array({v.x, v.y, v.z}); }

TriMesh LoadMeshOrSequence(const std::string& path, int n_arc) {
  return LoadEvalMesh(path, n_arc);
}

struct Options {
  // Shared.
  std::string input, output;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  int n_arc = kDefaultArcSegments;
  // eval
  std::string gen, manifest, id;
  int points = kDefaultSamplePoints;
  double tau = kDefaultFScoreTau;
  std::string chamfer = "l2", nc = "abs", weld = "on";
  int jobs = 1;
  bool oracle = false;
  // split
  double ratio = 0.9;
  std::string augment_dir;
  // perturb / decimate
  double sigma = 0, fraction = 0;
  // caption-prep
  std::vector<std::string> views;
  std::string client = "none", config;
};

int CmdValidate(const Options& o, std::ostream& out, std::ostream& err) {
  const CadSequence seq = ParseSequenceUnchecked(ReadText(o.input));
  for (const std::string& w : SequenceWarnings(seq)) err << "warning: " << w << "\n";
  const auto violations = ValidateSequence(seq);
  for (const Violation& v : violations) {
    err << ViolationName(v.kind);
    if (v.step >= 0) err << " step " << v.step + 1;
    if (v.loop >= 0) err << " loop " << v.loop + 1;
    if (v.curve >= 0) err << " curve " << v.curve + 1;
    err << ": " << v.message << "\n";
  }
  if (!violations.empty()) return kExitValidation;
  out << "ok\n";
  return kExitOk;
}

int CmdBuild(const Options& o, std::ostream& out, std::ostream& err) {
  std::ostringstream ok;
  if (int rc = CmdValidate(o, ok, err); rc != kExitOk) return rc;
  const TriMesh mesh = ExecuteSequence(ParseSequence(ReadText(o.input)), o.n_arc);
  Emit(o.output, ObjString(mesh), out);
  return kExitOk;
}

EvalOptions MakeEvalOptions(const Options& o) {
  EvalOptions e;
  e.points = o.points;
  e.tau = o.tau;
  e.n_arc = o.n_arc;
  e.seed = o.seed;
  e.chamfer = o.chamfer == "sq-l2" ? ChamferVariant::SquaredL2 : ChamferVariant::L2;
  e.nc = o.nc == "signed" ? NormalMode::Signed : NormalMode::Absolute;
  e.weld = o.weld == "on";
  e.oracle = o.oracle;
  return e;
}

int CmdEval(const Options& o, std::ostream& out, std::ostream& err) {
  const EvalOptions options = MakeEvalOptions(o);
  struct Job {
    std::string id, gt, gen;
  };
  std::vector<Job> jobs;
  if (!o.manifest.empty()) {
    std::istringstream lines(ReadText(o.manifest));
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("gt") || !j.contains("gen") ||
          !j["gt"].is_string() || !j["gen"].is_string()) {
        throw CadError(ErrorCode::ParseError, o.manifest + ":" + std::to_string(line_no) +
                                                  ": expected {\"id\", \"gt\", \"gen\"}");
      }
      const std::string id = j.value("id", "row" + std::to_string(jobs.size() + 1));
      jobs.push_back({id, Resolve(o.manifest, j["gt"]), Resolve(o.manifest, j["gen"])});
    }
  } else {
    if (o.input.empty() || o.gen.empty()) {
      err << "error: eval needs GT and GEN paths or --manifest\n";
      return kExitValidation;
    }
    jobs.push_back({o.id.empty() ? fs::path(o.input).stem().string() : o.id, o.input, o.gen});
  }

  std::vector<EvalRow> rows(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      rows[i] = EvaluateFiles(jobs[i].id, jobs[i].gt, jobs[i].gen, options);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min<int>(o.jobs, static_cast<int>(jobs.size())); ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (std::thread& t : pool) t.join();

  std::string csv = CsvHeader();
  size_t failures = 0;
  for (const EvalRow& r : rows) {
    csv += CsvRow(r);
    if (!r.error.empty()) {
      ++failures;
      err << "warning: " << r.id << ": " << r.error << "\n";
    }
  }
  if (!o.manifest.empty()) csv += CsvRow(MeanRow(rows));
  Emit(o.output, csv, out);
  return failures == rows.size() && !rows.empty() ? kExitKernel : kExitOk;
}

int CmdTokenize(const Options& o, std::ostream& out, std::ostream&) {
  std::string text;
  for (const std::string& path : o.inputs) {
    text += FormatTokenLine(Tokenize(QuantizeSequence(ParseSequence(ReadText(path))))) + "\n";
  }
  Emit(o.output, text, out);
  return kExitOk;
}

int CmdDetokenize(const Options& o, std::ostream& out, std::ostream&) {
  std::istringstream lines(ReadText(o.input));
  std::string line, text;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    text += SerializeSequence(DequantizeSequence(Detokenize(ParseTokenLine(line))));
  }
  Emit(o.output, text, out);
  return kExitOk;
}

int CmdAugment(const Options& o, std::ostream& out, std::ostream&) {
  const CadSequence seq = ParseSequence(ReadText(o.input));
  const fs::path dir = o.output.empty() ? fs::path(".") : fs::path(o.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::string stem = fs::path(o.input).stem().string();
  const auto prefixes = AugmentPrefixes(seq);
  for (size_t i = 0; i < prefixes.size(); ++i) {
    const fs::path path = dir / (stem + "_p" + std::to_string(i + 1) + ".json");
    Emit(path.string(), SerializeSequence(prefixes[i]), out);
    out << path.string() << "\n";
  }
  return kExitOk;
}

int CmdSplit(const Options& o, std::ostream& out, std::ostream&) {
  std::vector<DatasetRecord> records = ReadManifest(o.input);
  records = SplitDataset(std::move(records), o.ratio, o.seed);
  if (!o.augment_dir.empty()) {
    for (DatasetRecord& r : records) {
      if (r.split == Split::Train) {
        r.sequence = ParseSequence(ReadText(Resolve(o.input, r.path)));
      }
    }
    std::error_code ec;
    fs::create_directories(o.augment_dir, ec);
    records = AugmentTrainSplit(records);
    for (DatasetRecord& r : records) {
      if (r.id == r.root_id) continue;
      const std::string name = r.root_id + "_p" + r.id.substr(r.id.rfind("#p") + 2) + ".json";
      const fs::path path = fs::path(o.augment_dir) / name;
      Emit(path.string(), SerializeSequence(r.sequence), out);
      r.path = path.string();
    }
  }
  std::string text;
  for (const DatasetRecord& r : records) text += ManifestLine(r) + "\n";
  Emit(o.output, text, out);
  return kExitOk;
}

int CmdSample(const Options& o, std::ostream& out, std::ostream&) {
  const PointCloud pc = SampleSurface(LoadMeshOrSequence(o.input, o.n_arc), o.points, o.seed);
  if (o.output.empty() || o.output == "-") {
    WriteXyz(out, pc);
  } else {
    SavePointCloud(o.output, pc);
  }
  return kExitOk;
}

void EmitCloud(const std::string& path, const PointCloud& pc, std::ostream& out) {
  if (path.empty() || path == "-") {
    WriteXyz(out, pc);
  } else {
    SavePointCloud(path, pc);
  }
}

int CmdPerturb(const Options& o, std::ostream& out, std::ostream&) {
  EmitCloud(o.output, PerturbPoints(LoadPointCloud(o.input), o.sigma, o.seed), out);
  return kExitOk;
}

int CmdDecimate(const Options& o, std::ostream& out, std::ostream&) {
  EmitCloud(o.output, DecimatePoints(LoadPointCloud(o.input), o.fraction, o.seed), out);
  return kExitOk;
}

int CmdPoses(const Options& o, std::ostream& out, std::ostream&) {
  nlohmann::json poses = nlohmann::json::array();
  for (const CameraPose& p : CameraPoses()) {
    poses.push_back({{"id", p.id},
                     {"position", ToJson(p.position)},
                     {"look_at", ToJson(p.look_at)},
                     {"up", ToJson(p.up)}});
  }
  Emit(o.output, poses.dump(2) + "\n", out);
  return kExitOk;
}

int CmdCaptionPrep(const Options& o, std::ostream& out, std::ostream&) {
  std::vector<std::string> views = o.views;
  if (views.empty()) {
    for (const CameraPose& p : CameraPoses()) views.push_back(p.id);
  }
  const CaptionRequest req = BuildCaptionRequest(o.id, views, o.seed);
  nlohmann::json j;
  j["model_id"] = req.model_id;
  j["prompt"] = req.prompt;
  j["images"] = req.image_refs;
  j["required_prefix"] = req.required_prefix;
  if (o.client != "none") {
    CaptionConfig config = o.config.empty() ? CaptionConfig{} : LoadCaptionConfig(o.config);
    std::unique_ptr<CaptioningClient> client;
    if (o.client == "stub") {
      client = std::make_unique<StubCaptioningClient>();
    } else {
      client = std::make_unique<HttpCaptioningClient>(config);
    }
    j["caption"] = CaptionWithClient(req, *client, config.retries);
  }
  Emit(o.output, j.dump(2) + "\n", out);
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sketch-and-extrude CAD sequences: build, tokenize, evaluate and prepare data."};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&, std::ostream&, std::ostream&)> run;

  auto add = [&](const std::string& name, const std::string& help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&run, fn] { run = fn; });
    return sub;
  };
  auto add_output = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("-o,--output", o.output, what + " (default: standard output)");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };
  auto add_n_arc = [&](CLI::App* sub) {
    sub->add_option("--n-arc", o.n_arc, "Segments per full turn for arcs and circles")
        ->capture_default_str()
        ->check(CLI::Range(3, 100000));
  };

  CLI::App* validate = add("validate", "Check a sequence JSON and list violations", CmdValidate);
  validate->add_option("sequence", o.input, "Sequence JSON")->required();

  CLI::App* build = add("build", "Execute a sequence JSON into an OBJ mesh", CmdBuild);
  build->add_option("sequence", o.input, "Sequence JSON")->required();
  add_output(build, "OBJ path");
  add_n_arc(build);

  CLI::App* eval = add("eval", "Report reconstruction and topology metrics as CSV", CmdEval);
  eval->add_option("gt", o.input, "Ground truth (sequence .json or .obj)");
  eval->add_option("gen", o.gen, "Generated model (sequence .json or .obj)");
  eval->add_option("--manifest", o.manifest,
                   "JSON lines of {\"id\", \"gt\", \"gen\"}; appends a mean row");
  eval->add_option("--id", o.id, "Row id for a single pair (default: gt file stem)");
  eval->add_option("--points", o.points, "Surface samples per mesh")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  eval->add_option("--tau", o.tau, "F-score distance threshold")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  eval->add_option("--chamfer", o.chamfer, "Chamfer variant")
      ->capture_default_str()
      ->check(CLI::IsMember({"l2", "sq-l2"}));
  eval->add_option("--nc", o.nc, "Normal consistency cosine")
      ->capture_default_str()
      ->check(CLI::IsMember({"abs", "signed"}));
  eval->add_option("--weld", o.weld, "Merge vertices within 1e-9 before metrics")
      ->capture_default_str()
      ->check(CLI::IsMember({"on", "off"}));
  eval->add_option("--jobs", o.jobs, "Rows evaluated in parallel")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));
  eval->add_flag("--oracle", o.oracle, "Use brute-force nearest neighbour and SIR search");
  add_seed(eval);
  add_n_arc(eval);
  add_output(eval, "CSV path");

  CLI::App* tokenize = add("tokenize", "Quantize sequences into token lines", CmdTokenize);
  tokenize->add_option("sequences", o.inputs, "Sequence JSON files")->required();
  add_output(tokenize, "Token file");

  CLI::App* detokenize =
      add("detokenize", "Decode token lines into sequence JSON lines", CmdDetokenize);
  detokenize->add_option("tokens", o.input, "Token file")->required();
  add_output(detokenize, "JSON lines path");

  CLI::App* augment = add("augment", "Write the step prefixes of a sequence", CmdAugment);
  augment->add_option("sequence", o.input, "Sequence JSON")->required();
  augment->add_option("-o,--output", o.output, "Output directory")->capture_default_str();

  CLI::App* split = add("split", "Assign train/test splits to a root manifest", CmdSplit);
  split->add_option("manifest", o.input, "JSON lines of {\"id\", \"path\"}")->required();
  split->add_option("--ratio", o.ratio, "Train fraction")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  split->add_option("--augment-dir", o.augment_dir,
                    "Write train prefixes here and list them in the manifest");
  add_seed(split);
  add_output(split, "Manifest path");

  CLI::App* sample = add("sample", "Sample surface points with normals", CmdSample);
  sample->add_option("model", o.input, "Sequence .json or .obj")->required();
  sample->add_option("--points", o.points, "Number of samples")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_seed(sample);
  add_n_arc(sample);
  add_output(sample, "Point cloud (.ply binary, otherwise text)");

  CLI::App* perturb = add("perturb", "Add Gaussian noise to a point cloud", CmdPerturb);
  perturb->add_option("cloud", o.input, "Point cloud (.ply or text)")->required();
  perturb->add_option("--sigma", o.sigma, "Noise standard deviation, e.g. 0.01 0.02 0.03 0.05")
      ->required();
  add_seed(perturb);
  add_output(perturb, "Point cloud");

  CLI::App* decimate = add("decimate", "Randomly remove a fraction of points", CmdDecimate);
  decimate->add_option("cloud", o.input, "Point cloud (.ply or text)")->required();
  decimate->add_option("--fraction", o.fraction, "Fraction removed, in [0, 1)")->required();
  add_seed(decimate);
  add_output(decimate, "Point cloud");

  CLI::App* poses = add("poses", "Print the eight fixed camera poses", CmdPoses);
  add_output(poses, "JSON path");

  CLI::App* caption =
      add("caption-prep", "Build a caption request, optionally sending it", CmdCaptionPrep);
  caption->add_option("model_id", o.id, "Model id")->required();
  caption->add_option("--views", o.views, "Candidate view ids (default: the eight poses)");
  caption->add_option("--client", o.client, "Captioning backend")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "stub", "http"}));
  caption->add_option("--config", o.config, "key = value file with endpoint, retries, ...");
  add_seed(caption);
  add_output(caption, "JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitValidation;
  }
  try {
    return run(o, out, err);
  } catch (const CadError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitKernel;
  }
}

}  // namespace cadseq
