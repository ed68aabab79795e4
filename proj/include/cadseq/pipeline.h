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

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cadseq/cmdseq.h"
#include "cadseq/recon.h"

namespace cadseq {

// ---------------------------------------------------------------------------
// Records, augmentation and splits
// ---------------------------------------------------------------------------

enum class Split { Unassigned, Train, Test };
std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

struct DatasetRecord {
  std::string id;
  std::string root_id;  // pre-augmentation ancestor; equals id for roots
  Split split = Split::Unassigned;
  std::string path;     // sequence JSON location, manifests only
  CadSequence sequence;
};

/// The k prefixes of a k-step sequence; prefix i holds steps 1..i.
std::vector<CadSequence> AugmentPrefixes(const CadSequence& seq);

/// Deterministic shuffle by seed, then the first floor(ratio * N) records are
/// Train and the rest Test. Throws AugmentedInputToSplit for any record whose
/// id differs from its root_id.
std::vector<DatasetRecord> SplitDataset(std::vector<DatasetRecord> records,
                                        double ratio, std::uint64_t seed);

/// Appends the strict prefixes of every Train record as new Train records
/// (id "<root>#p<i>"); Test records are passed through untouched.
std::vector<DatasetRecord> AugmentTrainSplit(const std::vector<DatasetRecord>& records);

/// Manifest line: {"id", "root_id", "split", "path"}.
std::string ManifestLine(const DatasetRecord& record);
DatasetRecord ParseManifestLine(std::string_view line);
std::vector<DatasetRecord> ReadManifest(const std::string& path);

/// Per-record seed for batch work: stable hash of (master seed, record id).
std::uint64_t DeriveSeed(std::uint64_t master_seed, std::string_view id);

// ---------------------------------------------------------------------------
// Point clouds for conditioning and robustness tests
// ---------------------------------------------------------------------------

/// ExecuteSequence followed by SampleSurface.
PointCloud ExportPointCloud(const CadSequence& seq, int n, std::uint64_t seed,
                            int n_arc = 64);

/// Independent N(0, sigma^2) offset per point and axis; normals unchanged.
/// Throws NegativeSigma.
PointCloud PerturbPoints(const PointCloud& pc, double sigma, std::uint64_t seed);

/// Number of points kept when removing `fraction_removed` of `n`:
/// ceil((1 - f) * n), evaluated robustly against representation error.
size_t KeptPointCount(size_t n, double fraction_removed);

/// Uniformly random subset of KeptPointCount points in original order.
/// Throws FractionOutOfRange unless 0 <= f < 1.
PointCloud DecimatePoints(const PointCloud& pc, double fraction_removed,
                          std::uint64_t seed);

// ---------------------------------------------------------------------------
// Views and captions
// ---------------------------------------------------------------------------

struct CameraPose {
  std::string id;
  Vec3 position;
  Vec3 look_at;
  Vec3 up;
};

inline constexpr double kCameraRadius = 2.5;

/// Eight cameras on the corners of a cube with circumradius 2.5 around the
/// origin, looking at the origin with +Z up.
std::vector<CameraPose> CameraPoses();

inline constexpr std::string_view kCaptionPrompt =
    "These are the rendering images from 4 views of a CAD model. Please "
    "describe these images with one caption, and mainly focus on the shape "
    "and appearance of the foreground while ignoring the details of the "
    "background.";
inline constexpr std::string_view kCaptionPrefix = "Generate a CAD design with ";
inline constexpr int kCaptionViews = 4;

struct CaptionRequest {
  std::string model_id;
  std::string prompt;
  std::vector<std::string> image_refs;
  std::string required_prefix;
};

/// Picks 4 distinct views deterministically from `seed`. Throws TooFewViews.
CaptionRequest BuildCaptionRequest(std::string model_id,
                                   const std::vector<std::string>& view_ids,
                                   std::uint64_t seed);

/// External captioning backend. Implementations throw ClientUnavailable on
/// transport failure.
class CaptioningClient {
 public:
  virtual ~CaptioningClient() = default;
  virtual std::string Caption(const CaptionRequest& request) = 0;
};

/// Offline client: a templated caption chosen by a hash of the model id.
class StubCaptioningClient : public CaptioningClient {
 public:
  std::string Caption(const CaptionRequest& request) override;
};

struct CaptionConfig {
  std::string endpoint;  // e.g. http://host:port/caption
  std::string api_key;
  int retries = 3;
  int concurrency = 4;
  int timeout_seconds = 30;
};

/// key = value lines; '#' and ';' start comments; [sections] are ignored.
/// The CADSEQ_CAPTION_API_KEY environment variable overrides api_key.
CaptionConfig LoadCaptionConfig(const std::string& path);
CaptionConfig ParseCaptionConfig(std::string_view text);

/// POSTs {"model_id", "prompt", "images"} as JSON to the configured endpoint
/// and expects {"caption": "..."} back.
class HttpCaptioningClient : public CaptioningClient {
 public:
  explicit HttpCaptioningClient(CaptionConfig config);
  std::string Caption(const CaptionRequest& request) override;

 private:
  CaptionConfig config_;
};

/// Calls the client up to 1 + retries times while it is unavailable, then
/// checks the required prefix (PrefixViolation).
std::string CaptionWithClient(const CaptionRequest& request,
                              CaptioningClient& client, int retries = 3);

/// Captions every request with at most `concurrency` in flight; results keep
/// the request order. Failures are reported per item.
struct CaptionOutcome {
  std::optional<std::string> caption;
  std::string error;
};
std::vector<CaptionOutcome> CaptionBatch(const std::vector<CaptionRequest>& requests,
                                         CaptioningClient& client, int retries,
                                         int concurrency);

}  // namespace cadseq
