#include <random>
#include <string>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "softthresh/image.hpp"

using namespace softthresh;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

PgmErrorKind parse_error_kind(const std::string& s) {
  try {
    read_pgm(bytes_of(s));
  } catch (const PgmError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no PgmError for input";
  return PgmErrorKind::BadMagic;
}

}  // namespace

TEST(ReadPgm, BinaryTwoByTwo) {
  auto bytes = bytes_of("P5\n2 2\n255\n");
  bytes.insert(bytes.end(), {0, 128, 255, 7});
  const GreyImage img = read_pgm(bytes);
  EXPECT_EQ(img.width(), 2);
  EXPECT_EQ(img.height(), 2);
  EXPECT_EQ(img, GreyImage(2, 2, {0, 128, 255, 7}));
}

TEST(ReadPgm, AsciiSingleSample) {
  const GreyImage img = read_pgm(bytes_of("P2\n1 1\n255\n42\n"));
  EXPECT_EQ(img, GreyImage(1, 1, {42}));
}

TEST(ReadPgm, CommentsInHeader) {
  const GreyImage img = read_pgm(bytes_of("P2 # magic\n# a comment line\n3 # width\n1\n# before maxval\n255\n1 2\n3"));
  EXPECT_EQ(img, GreyImage(3, 1, {1, 2, 3}));
}

TEST(ReadPgm, SmallMaxvalKeepsStoredSamples) {
  const GreyImage img = read_pgm(bytes_of("P2\n2 1\n15\n0 15\n"));
  EXPECT_EQ(img, GreyImage(2, 1, {0, 15}));
}

TEST(ReadPgm, BinaryRasterStartsAfterSingleWhitespace) {
  // The raster byte 10 is '\n' and must not be eaten as header whitespace.
  auto bytes = bytes_of("P5\n2 1\n255\n");
  bytes.insert(bytes.end(), {10, 32});
  EXPECT_EQ(read_pgm(bytes), GreyImage(2, 1, {10, 32}));
}

TEST(ReadPgm, DistinctErrors) {
  EXPECT_EQ(parse_error_kind("P6\n1 1\n255\n\x01"), PgmErrorKind::BadMagic);
  EXPECT_EQ(parse_error_kind("XX"), PgmErrorKind::BadMagic);
  EXPECT_EQ(parse_error_kind(""), PgmErrorKind::BadMagic);
  EXPECT_EQ(parse_error_kind("P2\n1 1\n65535\n0\n"), PgmErrorKind::UnsupportedMaxval);
  EXPECT_EQ(parse_error_kind("P2\n1 1\n0\n0\n"), PgmErrorKind::UnsupportedMaxval);
  EXPECT_EQ(parse_error_kind("P5\n4 4\n255\nabc"), PgmErrorKind::Truncated);
  EXPECT_EQ(parse_error_kind("P2\n2 2\n255\n1 2 3"), PgmErrorKind::Truncated);
  EXPECT_EQ(parse_error_kind("P5\n0 3\n255\n"), PgmErrorKind::ZeroDimension);
  EXPECT_EQ(parse_error_kind("P2\nabc 3\n255\n"), PgmErrorKind::BadHeader);
  EXPECT_EQ(parse_error_kind("P2\n1 1\n100\n101\n"), PgmErrorKind::BadSample);
  EXPECT_EQ(parse_error_kind("P2\n1 1\n255\nx\n"), PgmErrorKind::BadSample);
}

TEST(WritePgm, MinimalImage) {
  auto expected = bytes_of("P5\n1 1\n255\n");
  expected.push_back(0);
  EXPECT_EQ(write_pgm(GreyImage(1, 1, {0})), expected);
}

TEST(WritePgm, RowMajorLayout) {
  auto expected = bytes_of("P5\n2 2\n255\n");
  expected.insert(expected.end(), {0, 128, 255, 7});
  EXPECT_EQ(write_pgm(GreyImage(2, 2, {0, 128, 255, 7})), expected);
}

TEST(WritePgm, AsciiLinesShort) {
  std::mt19937 rng(7);
  const GreyImage img = oracle::random_image(rng, 40, 3);
  const auto bytes = write_pgm(img, true);
  const std::string text(bytes.begin(), bytes.end());
  EXPECT_EQ(text.rfind("P2\n40 3\n255\n", 0), 0u);
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    ASSERT_NE(end, std::string::npos);
    EXPECT_LE(end - start, 70u);
    start = end + 1;
  }
}

TEST(PgmProperty, RoundTripBothEncodings) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> size(1, 48);
  for (int i = 0; i < 200; ++i) {
    const GreyImage img = oracle::random_image(rng, size(rng), size(rng));
    EXPECT_EQ(read_pgm(write_pgm(img, false)), img);
    EXPECT_EQ(read_pgm(write_pgm(img, true)), img);
  }
}

TEST(GreyImage, RejectsBadShapes) {
  EXPECT_THROW(GreyImage(0, 1), ParameterError);
  EXPECT_THROW(GreyImage(2, 2, std::vector<std::uint8_t>{1, 2, 3}), DimensionMismatch);
}

TEST(Histogram, DirectCounts) {
  const Histogram h = histogram(GreyImage(2, 2, {0, 0, 255, 7}));
  EXPECT_EQ(h[0], 2u);
  EXPECT_EQ(h[7], 1u);
  EXPECT_EQ(h[255], 1u);
  EXPECT_EQ(h.total(), 4u);
}

TEST(Histogram, ConstantImage) {
  const Histogram h = histogram(GreyImage(7, 5, 42));
  EXPECT_EQ(h[42], 35u);
  EXPECT_EQ(h.total(), 35u);
}

TEST(Histogram, MatchesRecount) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> size(1, 64);
  for (int i = 0; i < 100; ++i) {
    const GreyImage img = oracle::random_image(rng, size(rng), size(rng));
    const Histogram h = histogram(img);
    EXPECT_EQ(h.total(), img.size());
    for (int v = 0; v <= 255; ++v) {
      std::uint64_t n = 0;
      for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) n += img(x, y) == v;
      ASSERT_EQ(h[v], n) << "value " << v;
    }
  }
}

TEST(SubtractClamped, Examples) {
  const GreyImage a(3, 2, 77);
  EXPECT_EQ(subtract_clamped(a, a, 255), GreyImage(3, 2, 255));
  EXPECT_EQ(subtract_clamped(GreyImage(1, 1, 10), GreyImage(1, 1, 200), 255), GreyImage(1, 1, 65));
  EXPECT_EQ(subtract_clamped(GreyImage(1, 1, 200), GreyImage(1, 1, 10), 0), GreyImage(1, 1, 190));
}

TEST(SubtractClamped, DimensionMismatch) {
  EXPECT_THROW(subtract_clamped(GreyImage(2, 2), GreyImage(2, 3), 0), DimensionMismatch);
}

TEST(SubtractClamped, ClampsOnlyOutOfRange) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> offset_dist(-300, 600);
  for (int i = 0; i < 50; ++i) {
    const GreyImage a = oracle::random_image(rng, 16, 9);
    const GreyImage b = oracle::random_image(rng, 16, 9);
    const int offset = offset_dist(rng);
    const GreyImage d = subtract_clamped(a, b, offset);
    const SignedImage raw = subtract(a, b);
    for (std::size_t j = 0; j < d.size(); ++j) {
      const int exact = offset + a.pixels()[j] - b.pixels()[j];
      EXPECT_EQ(raw.pixels()[j], a.pixels()[j] - b.pixels()[j]);
      if (exact >= 0 && exact <= 255) {
        EXPECT_EQ(d.pixels()[j], exact);
      } else {
        EXPECT_EQ(d.pixels()[j], exact < 0 ? 0 : 255);
      }
    }
  }
}
