#include "softthresh/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "softthresh/local.hpp"

namespace softthresh {

namespace fs = std::filesystem;

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Hard:
      return "hard";
    case Mode::Soft:
      return "soft";
    case Mode::SoftShading:
      return "soft-shading";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "hard") return Mode::Hard;
  if (name == "soft") return Mode::Soft;
  if (name == "soft-shading") return Mode::SoftShading;
  return std::nullopt;
}

void validate(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw ParameterError("no input given");
  if (cfg.output.empty()) throw ParameterError("no output given");
  if (cfg.workers < 1) throw ParameterError("workers must be positive");
  if (cfg.threshold && (*cfg.threshold < 0 || *cfg.threshold > kMaxGrey)) {
    throw ParameterError("threshold must be in [0, 255]");
  }
  AutoParams{cfg.alpha};
  if (cfg.band && !(*cfg.band > 0.0)) throw ParameterError("band must be positive");
  if (cfg.mode == Mode::Hard) {
    if (cfg.band) throw ParameterError("--band has no meaning in hard mode");
    if (cfg.dump_curve) throw ParameterError("--dump-curve needs a soft mode");
  }
  if (cfg.mode == Mode::SoftShading) {
    if (!cfg.k) throw ParameterError("soft-shading mode requires --k");
    WindowSpec{*cfg.k};
  } else if (cfg.k) {
    throw ParameterError("--k is only used in soft-shading mode");
  }
}

ProcessResult process_image(const GreyImage& img, const RunConfig& cfg) {
  if (cfg.mode == Mode::Hard) {
    const Histogram hist = histogram(img);
    const int t = cfg.threshold ? *cfg.threshold : otsu_threshold(hist);
    std::optional<double> white;
    try {
      white = mean_white(hist, t);
    } catch (const NoWhiteClass&) {
    }
    return ProcessResult{hard_threshold(img, t), img, t, white, std::nullopt, {}};
  }

  SoftOptions options;
  options.dist = cfg.dist;
  options.threshold = cfg.threshold;
  options.band = cfg.band;
  options.params = AutoParams(cfg.alpha);

  GreyImage input = cfg.mode == Mode::SoftShading ? shading_subtraction(img, WindowSpec(*cfg.k)) : img;
  SoftResult soft = soft_threshold_detailed(input, options);
  ProcessResult result{std::move(soft.image), std::move(input), soft.threshold, soft.white_mean,
                       soft.spec, {}};
  if (soft.hard_fallback) {
    result.warnings.push_back("no pixel above threshold " + std::to_string(soft.threshold) +
                              ", fell back to hard thresholding");
  }
  return result;
}

std::string dump_histogram(const Histogram& hist) {
  std::string out;
  for (int v = 0; v <= kMaxGrey; ++v) {
    out += std::to_string(v) + "," + std::to_string(hist[v]) + "\n";
  }
  return out;
}

std::string dump_curve(const TransferSpec& spec) {
  std::string out;
  char buf[64];
  for (int v = 0; v <= kMaxGrey; ++v) {
    std::snprintf(buf, sizeof buf, "%d,%.6f\n", v, transfer_value(spec, v));
    out += buf;
  }
  return out;
}

std::vector<fs::path> collect_inputs(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    if (fs::is_directory(input)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(input);
    }
  }
  return files;
}

namespace {

std::string_view band_name(Distribution dist) {
  switch (dist) {
    case Distribution::Uniform:
      return "h";
    case Distribution::Logistic:
      return "theta";
    case Distribution::Normal:
      return "sigma";
  }
  return "band";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

struct FileOutcome {
  std::string line;
  bool ok = false;
};

FileOutcome process_file(const fs::path& in, const fs::path& out, const RunConfig& cfg) {
  std::ostringstream line;
  line.precision(6);
  line << in.string() << " -> " << out.string() << ": ";
  try {
    const ProcessResult result = process_image(load_pgm(in), cfg);
    save_pgm(out, result.image, cfg.ascii);

    line << "mode=" << to_string(cfg.mode) << " t=" << result.threshold;
    if (result.white_mean) line << " v_w=" << *result.white_mean;
    if (result.spec) {
      line << " dist=" << to_string(result.spec->distribution()) << " "
           << band_name(result.spec->distribution()) << "=" << result.spec->band();
    }
    std::vector<std::string> warnings = result.warnings;
    if (cfg.dump_histogram) {
      write_text(*cfg.dump_histogram, dump_histogram(histogram(result.thresholded_input)));
    }
    if (cfg.dump_curve) {
      if (result.spec) {
        write_text(*cfg.dump_curve, dump_curve(*result.spec));
      } else {
        warnings.push_back("no transfer function, curve not written");
      }
    }
    for (const auto& w : warnings) line << " warning: " << w << ";";
    return {line.str(), true};
  } catch (const std::exception& e) {
    line << "error: " << e.what();
    return {line.str(), false};
  }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& report) {
  try {
    validate(cfg);
  } catch (const std::exception& e) {
    report << "error: " << e.what() << "\n";
    return 2;
  }

  std::vector<fs::path> files;
  try {
    files = collect_inputs(cfg.inputs);
  } catch (const std::exception& e) {
    report << "error: " << e.what() << "\n";
    return 2;
  }
  if (files.empty()) return 0;
  if ((cfg.dump_histogram || cfg.dump_curve) && files.size() > 1) {
    report << "error: --dump-histogram and --dump-curve need a single input file\n";
    return 2;
  }

  // A single input file writes to `output` unless that is a directory.
  const bool single_file = cfg.inputs.size() == 1 && !fs::is_directory(cfg.inputs.front());
  const bool to_directory = !single_file || fs::is_directory(cfg.output);
  if (to_directory) {
    std::error_code ec;
    fs::create_directories(cfg.output, ec);
    if (ec) {
      report << "error: cannot create " << cfg.output.string() << ": " << ec.message() << "\n";
      return 2;
    }
  }

  std::vector<FileOutcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const fs::path out = to_directory ? cfg.output / files[i].filename() : cfg.output;
      outcomes[i] = process_file(files[i], out, cfg);
    }
  };
  const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), files.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }

  int status = 0;
  for (const auto& outcome : outcomes) {
    report << outcome.line << "\n";
    if (!outcome.ok) status = 1;
  }
  return status;
}

}  // namespace softthresh
