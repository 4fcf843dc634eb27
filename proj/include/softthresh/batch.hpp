#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softthresh/image.hpp"
#include "softthresh/thresholding.hpp"

namespace softthresh {

enum class Mode { Hard, Soft, SoftShading };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

/// Settings of a batch run.
struct RunConfig {
  std::vector<std::filesystem::path> inputs;  // PGM files or flat directories
  std::filesystem::path output;
  Mode mode = Mode::Soft;
  Distribution dist = Distribution::Logistic;
  std::optional<int> threshold;  // Otsu when unset
  double alpha = AutoParams::kDefaultAlpha;
  std::optional<double> band;  // native unit of `dist`
  std::optional<int> k;        // required for soft-shading
  std::optional<std::filesystem::path> dump_histogram;
  std::optional<std::filesystem::path> dump_curve;
  bool ascii = false;
  int workers = 1;
};

/// Throws ParameterError on incompatible settings. Touches no files.
void validate(const RunConfig& cfg);

/// Result of processing one image with the pipeline selected by a RunConfig.
struct ProcessResult {
  GreyImage image;
  /// The image the transfer function was applied to (the shading-subtracted
  /// image in soft-shading mode).
  GreyImage thresholded_input;
  int threshold = 0;
  std::optional<double> white_mean;
  std::optional<TransferSpec> spec;
  std::vector<std::string> warnings;
};

ProcessResult process_image(const GreyImage& img, const RunConfig& cfg);

/// 256 lines "v,count".
std::string dump_histogram(const Histogram& hist);

/// 256 lines "v,g(v)" with the unrounded g(v) to six decimals.
std::string dump_curve(const TransferSpec& spec);

/// PGM files named by the inputs; directories are scanned one level deep
/// for *.pgm files, sorted by name.
std::vector<std::filesystem::path> collect_inputs(const std::vector<std::filesystem::path>& inputs);

/// Processes every input and writes one report line per file to `report`.
/// Failures are reported per file and the remaining files are still
/// processed. Returns 0 when every file succeeded, 1 otherwise.
int run(const RunConfig& cfg, std::ostream& report);

}  // namespace softthresh
