// softthresh: batch soft thresholding of PGM document scans.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "softthresh/batch.hpp"

int main(int argc, char** argv) {
  using namespace softthresh;

  CLI::App app{"Soft thresholding of greyscale (PGM) document images"};
  RunConfig cfg;

  std::vector<std::string> inputs;
  std::string output;
  std::string mode = "soft";
  std::string dist = "logistic";
  std::optional<std::string> dump_histogram_path;
  std::optional<std::string> dump_curve_path;

  app.add_option("inputs", inputs, "Input PGM files or directories (flat scan for *.pgm)")
      ->required();
  app.add_option("-o,--output", output, "Output file, or directory for several inputs")->required();
  app.add_option("--mode", mode, "hard, soft, or soft-shading")
      ->check(CLI::IsMember({"hard", "soft", "soft-shading"}))
      ->capture_default_str();
  app.add_option("--dist", dist, "Transfer function distribution: uniform, logistic, normal")
      ->check(CLI::IsMember({"uniform", "logistic", "normal"}))
      ->capture_default_str();
  app.add_option("--threshold", cfg.threshold, "Global threshold (default: Otsu)")
      ->check(CLI::Range(0, 255));
  app.add_option("--alpha", cfg.alpha, "g(v_w) = alpha * 255 calibration target")
      ->default_val(AutoParams::kDefaultAlpha);
  app.add_option("--band", cfg.band,
                 "Band width in the distribution's unit (h, theta, or sigma); overrides the automatic value");
  app.add_option("--k", cfg.k, "Odd window size for shading subtraction");
  app.add_option("--dump-histogram", dump_histogram_path, "Write the grey-level histogram as CSV");
  app.add_option("--dump-curve", dump_curve_path, "Write the transfer curve g(v) as CSV");
  app.add_option("--workers", cfg.workers, "Number of files processed concurrently")
      ->default_val(1);
  app.add_flag("--ascii", cfg.ascii, "Write plain (P2) PGM output");

  CLI11_PARSE(app, argc, argv);

  cfg.inputs.assign(inputs.begin(), inputs.end());
  cfg.output = output;
  cfg.mode = *parse_mode(mode);
  cfg.dist = *parse_distribution(dist);
  if (dump_histogram_path) cfg.dump_histogram = *dump_histogram_path;
  if (dump_curve_path) cfg.dump_curve = *dump_curve_path;

  return run(cfg, std::cout);
}
