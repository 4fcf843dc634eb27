#include <cstdlib>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "softthresh/batch.hpp"
#include "softthresh/local.hpp"

using namespace softthresh;
namespace fs = std::filesystem;

namespace {

const fs::path kData = SOFTTHRESH_TEST_DATA;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string as_string(const std::vector<std::uint8_t>& bytes) { return {bytes.begin(), bytes.end()}; }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

class BatchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("softthresh_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunConfig config(Mode mode) const {
    RunConfig cfg;
    cfg.mode = mode;
    cfg.output = dir_ / "out.pgm";
    cfg.inputs = {kData / "page.pgm"};
    return cfg;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(BatchTest, HardModeMatchesGolden) {
  RunConfig cfg = config(Mode::Hard);
  cfg.threshold = 135;
  std::ostringstream report;
  ASSERT_EQ(run(cfg, report), 0) << report.str();
  EXPECT_EQ(read_file(cfg.output), read_file(kData / "page_hard135.pgm"));
  EXPECT_NE(report.str().find("mode=hard t=135"), std::string::npos);
}

TEST_F(BatchTest, SoftModeReportsOtsuThreshold) {
  const RunConfig cfg = config(Mode::Soft);
  std::ostringstream report;
  ASSERT_EQ(run(cfg, report), 0) << report.str();
  const auto expected = oracle::otsu_exhaustive(histogram(load_pgm(kData / "page.pgm")));
  ASSERT_TRUE(expected);
  EXPECT_NE(report.str().find(" t=" + std::to_string(*expected) + " "), std::string::npos) << report.str();
  EXPECT_NE(report.str().find("dist=logistic theta="), std::string::npos);
}

TEST_F(BatchTest, EmptyDirectory) {
  fs::create_directories(dir_ / "empty");
  RunConfig cfg = config(Mode::Soft);
  cfg.inputs = {dir_ / "empty"};
  cfg.output = dir_ / "results";
  std::ostringstream report;
  EXPECT_EQ(run(cfg, report), 0);
  EXPECT_EQ(report.str(), "");
}

TEST_F(BatchTest, OutputEqualsLibraryComposition) {
  const GreyImage img = load_pgm(kData / "page.pgm");
  for (auto dist : {Distribution::Uniform, Distribution::Logistic, Distribution::Normal}) {
    RunConfig soft = config(Mode::Soft);
    soft.dist = dist;
    std::ostringstream report;
    ASSERT_EQ(run(soft, report), 0);
    EXPECT_EQ(read_file(soft.output), as_string(write_pgm(soft_threshold(img, std::nullopt, dist))));

    RunConfig shading = config(Mode::SoftShading);
    shading.dist = dist;
    shading.k = 9;
    ASSERT_EQ(run(shading, report), 0);
    EXPECT_EQ(read_file(shading.output),
              as_string(write_pgm(soft_shading_subtraction(img, WindowSpec(9), dist))));
  }

  RunConfig hard = config(Mode::Hard);
  std::ostringstream report;
  ASSERT_EQ(run(hard, report), 0);
  EXPECT_EQ(read_file(hard.output),
            as_string(write_pgm(hard_threshold(img, otsu_threshold(histogram(img))))));

  RunConfig ascii = config(Mode::Soft);
  ascii.ascii = true;
  ascii.alpha = 0.95;
  ASSERT_EQ(run(ascii, report), 0);
  EXPECT_EQ(read_file(ascii.output),
            as_string(write_pgm(soft_threshold(img, std::nullopt, Distribution::Logistic, AutoParams(0.95)), true)));
}

TEST_F(BatchTest, WorkersDoNotChangeOutput) {
  std::mt19937 rng(314);
  fs::create_directories(dir_ / "in");
  for (int i = 0; i < 12; ++i) {
    save_pgm(dir_ / "in" / ("img" + std::to_string(i) + ".pgm"), oracle::random_image(rng, 40 + i, 30));
  }
  auto run_with = [&](int workers, const std::string& out) {
    RunConfig cfg = config(Mode::SoftShading);
    cfg.k = 5;
    cfg.inputs = {dir_ / "in"};
    cfg.output = dir_ / out;
    cfg.workers = workers;
    std::ostringstream report;
    EXPECT_EQ(run(cfg, report), 0) << report.str();
    return report.str();
  };
  const std::string serial = run_with(1, "serial");
  const std::string parallel = run_with(4, "parallel");
  EXPECT_EQ(lines_of(serial).size(), 12u);
  for (int i = 0; i < 12; ++i) {
    const std::string name = "img" + std::to_string(i) + ".pgm";
    EXPECT_EQ(read_file(dir_ / "serial" / name), read_file(dir_ / "parallel" / name)) << name;
  }
}

TEST_F(BatchTest, FailuresAreReportedPerFile) {
  fs::create_directories(dir_ / "in");
  std::ofstream(dir_ / "in" / "a_broken.pgm") << "P5\n10 10\n255\nxx";
  save_pgm(dir_ / "in" / "b_flat.pgm", GreyImage(5, 5, 17));
  fs::copy_file(kData / "page.pgm", dir_ / "in" / "c_good.pgm");
  RunConfig cfg = config(Mode::Soft);
  cfg.inputs = {dir_ / "in"};
  cfg.output = dir_ / "out";
  std::ostringstream report;
  EXPECT_EQ(run(cfg, report), 1);
  const auto lines = lines_of(report.str());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_NE(lines[0].find("error: PGM raster truncated"), std::string::npos) << lines[0];
  EXPECT_NE(lines[1].find("error: Otsu"), std::string::npos) << lines[1];
  EXPECT_EQ(lines[2].find("error"), std::string::npos) << lines[2];
  EXPECT_TRUE(fs::exists(dir_ / "out" / "c_good.pgm"));
}

TEST_F(BatchTest, FallbackWarning) {
  RunConfig cfg = config(Mode::Soft);
  cfg.threshold = 255;
  std::ostringstream report;
  EXPECT_EQ(run(cfg, report), 0);
  EXPECT_NE(report.str().find("warning: no pixel above threshold 255"), std::string::npos) << report.str();
  EXPECT_EQ(read_file(cfg.output), as_string(write_pgm(GreyImage(48, 32, 0))));
}

TEST_F(BatchTest, DumpsHistogramAndCurve) {
  RunConfig cfg = config(Mode::Soft);
  cfg.dump_histogram = dir_ / "hist.csv";
  cfg.dump_curve = dir_ / "curve.csv";
  std::ostringstream report;
  ASSERT_EQ(run(cfg, report), 0) << report.str();
  const GreyImage img = load_pgm(kData / "page.pgm");
  EXPECT_EQ(read_file(*cfg.dump_histogram), dump_histogram(histogram(img)));
  const SoftResult r = soft_threshold_detailed(img, SoftOptions{});
  EXPECT_EQ(read_file(*cfg.dump_curve), dump_curve(*r.spec));
}

TEST(Validate, RejectsIncompatibleSettings) {
  RunConfig base;
  base.inputs = {"x.pgm"};
  base.output = "y.pgm";
  EXPECT_NO_THROW(validate(base));

  auto expect_bad = [&](auto mutate) {
    RunConfig cfg = base;
    mutate(cfg);
    EXPECT_THROW(validate(cfg), ParameterError);
  };
  expect_bad([](RunConfig& c) { c.mode = Mode::SoftShading; });
  expect_bad([](RunConfig& c) { c.mode = Mode::SoftShading; c.k = 4; });
  expect_bad([](RunConfig& c) { c.k = 5; });
  expect_bad([](RunConfig& c) { c.mode = Mode::Hard; c.band = 3.0; });
  expect_bad([](RunConfig& c) { c.mode = Mode::Hard; c.dump_curve = "c.csv"; });
  expect_bad([](RunConfig& c) { c.alpha = 1.0; });
  expect_bad([](RunConfig& c) { c.threshold = 300; });
  expect_bad([](RunConfig& c) { c.band = 0.0; });
  expect_bad([](RunConfig& c) { c.workers = 0; });
  expect_bad([](RunConfig& c) { c.inputs.clear(); });
}

TEST(DumpHistogram, ConstantImage) {
  const std::string csv = dump_histogram(histogram(GreyImage(6, 4, 42)));
  const auto lines = lines_of(csv);
  ASSERT_EQ(lines.size(), 256u);
  for (int v = 0; v <= 255; ++v) {
    EXPECT_EQ(lines[static_cast<std::size_t>(v)], std::to_string(v) + "," + (v == 42 ? "24" : "0"));
  }
}

TEST(DumpHistogram, MatchesRecount) {
  std::mt19937 rng(1);
  const GreyImage img = oracle::random_image(rng, 33, 17);
  const auto lines = lines_of(dump_histogram(histogram(img)));
  std::uint64_t total = 0;
  for (int v = 0; v <= 255; ++v) {
    const auto count = std::stoull(lines[static_cast<std::size_t>(v)].substr(lines[static_cast<std::size_t>(v)].find(',') + 1));
    const auto expected = static_cast<std::uint64_t>(std::count(img.pixels().begin(), img.pixels().end(), v));
    EXPECT_EQ(count, expected);
    total += count;
  }
  EXPECT_EQ(total, img.size());
}

TEST(DumpCurve, Format) {
  for (auto dist : {Distribution::Uniform, Distribution::Logistic, Distribution::Normal}) {
    const auto lines = lines_of(dump_curve(TransferSpec(dist, 99, 12.5)));
    ASSERT_EQ(lines.size(), 256u);
    EXPECT_EQ(lines[99], "99,127.500000");
    double prev = -1;
    for (int v = 0; v <= 255; ++v) {
      const auto& line = lines[static_cast<std::size_t>(v)];
      EXPECT_EQ(line.substr(0, line.find(',')), std::to_string(v));
      const double g = std::stod(line.substr(line.find(',') + 1));
      EXPECT_GE(g, prev);
      prev = g;
    }
  }
}

TEST(DumpCurve, UniformInteriorCount) {
  for (int h : {2, 10, 40, 130}) {
    const auto lines = lines_of(dump_curve(TransferSpec(Distribution::Uniform, 128, h)));
    int interior = 0;
    for (const auto& line : lines) {
      const double g = std::stod(line.substr(line.find(',') + 1));
      interior += g > 0.0 && g < 255.0;
    }
    EXPECT_EQ(interior, h - 1) << "h=" << h;
  }
}

TEST(ModeNames, RoundTrip) {
  for (auto m : {Mode::Hard, Mode::Soft, Mode::SoftShading}) EXPECT_EQ(parse_mode(to_string(m)), m);
  EXPECT_FALSE(parse_mode("fuzzy"));
}

#ifdef SOFTTHRESH_CLI
TEST_F(BatchTest, CommandLineTool) {
  const fs::path out = dir_ / "cli.pgm";
  const std::string cmd = std::string("\"") + SOFTTHRESH_CLI + "\" --mode hard --threshold 135 -o \"" +
                          out.string() + "\" \"" + (kData / "page.pgm").string() + "\" > \"" +
                          (dir_ / "report.txt").string() + "\"";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(read_file(out), read_file(kData / "page_hard135.pgm"));

  const fs::path soft = dir_ / "cli_soft.pgm";
  const std::string soft_cmd = std::string("\"") + SOFTTHRESH_CLI + "\" --mode soft-shading --k 9 --dist normal --workers 3 -o \"" +
                               soft.string() + "\" \"" + (kData / "page.pgm").string() + "\" > /dev/null";
  ASSERT_EQ(std::system(soft_cmd.c_str()), 0);
  EXPECT_EQ(read_file(soft), as_string(write_pgm(soft_shading_subtraction(
                                 load_pgm(kData / "page.pgm"), WindowSpec(9), Distribution::Normal))));

  const std::string bad_cmd = std::string("\"") + SOFTTHRESH_CLI + "\" --mode soft-shading -o \"" +
                              soft.string() + "\" \"" + (kData / "page.pgm").string() + "\" > /dev/null";
  EXPECT_NE(std::system(bad_cmd.c_str()), 0);
}
#endif
