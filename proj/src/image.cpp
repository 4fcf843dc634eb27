#include "softthresh/image.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>

namespace softthresh {

namespace {

void check_dimensions(int width, int height) {
  if (width < 1 || height < 1) {
    throw ParameterError("image dimensions must be at least 1x1, got " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
}

bool is_pgm_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_digit(std::uint8_t c) { return c >= '0' && c <= '9'; }

// Cursor over the header; comments run from '#' to the end of the line.
class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_pgm_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t read_number(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) {
      throw PgmError(PgmErrorKind::Truncated, std::string("PGM header ends before ") + what);
    }
    if (!is_digit(bytes_[pos_])) {
      throw PgmError(PgmErrorKind::BadHeader, std::string("PGM header: expected ") + what);
    }
    std::uint64_t value = 0;
    while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<std::int32_t>::max()) {
        throw PgmError(PgmErrorKind::BadHeader, std::string("PGM header: ") + what + " too large");
      }
      ++pos_;
    }
    if (pos_ < bytes_.size() && !is_pgm_space(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw PgmError(PgmErrorKind::BadHeader, std::string("PGM header: malformed ") + what);
    }
    return value;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }
  std::uint8_t peek() const { return bytes_[pos_]; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void append(std::vector<std::uint8_t>& out, const std::string& s) {
  out.insert(out.end(), s.begin(), s.end());
}

}  // namespace

GreyImage::GreyImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
  check_dimensions(width, height);
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GreyImage::GreyImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionMismatch("image data length does not match " + std::to_string(width) + "x" +
                            std::to_string(height));
  }
}

SignedImage::SignedImage(int width, int height, std::vector<int> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionMismatch("signed image data length does not match its dimensions");
  }
}

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

GreyImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw PgmError(PgmErrorKind::BadMagic, "not a PGM stream (expected magic P5 or P2)");
  }
  const bool binary = bytes[1] == '5';
  HeaderReader reader(bytes);
  reader.advance(2);
  if (!reader.at_end() && !is_pgm_space(reader.peek()) && reader.peek() != '#') {
    throw PgmError(PgmErrorKind::BadMagic, "PGM magic number not followed by whitespace");
  }

  const auto width = reader.read_number("width");
  const auto height = reader.read_number("height");
  const auto maxval = reader.read_number("maxval");
  if (width == 0 || height == 0) {
    throw PgmError(PgmErrorKind::ZeroDimension, "PGM image has zero width or height");
  }
  if (maxval == 0 || maxval > kMaxGrey) {
    throw PgmError(PgmErrorKind::UnsupportedMaxval,
                   "PGM maxval " + std::to_string(maxval) + " unsupported (must be 1..255)");
  }
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> data(count);

  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (reader.at_end()) {
      throw PgmError(PgmErrorKind::Truncated, "PGM raster missing");
    }
    reader.advance(1);
    const std::size_t start = reader.pos();
    if (bytes.size() < start || bytes.size() - start < count) {
      throw PgmError(PgmErrorKind::Truncated, "PGM raster truncated: expected " +
                                                  std::to_string(count) + " bytes, got " +
                                                  std::to_string(bytes.size() - start));
    }
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(start), count, data.begin());
    for (const auto v : data) {
      if (v > maxval) {
        throw PgmError(PgmErrorKind::BadSample, "PGM sample exceeds maxval");
      }
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      reader.skip_space_and_comments();
      if (reader.at_end()) {
        throw PgmError(PgmErrorKind::Truncated, "PGM raster truncated after " + std::to_string(i) +
                                                    " of " + std::to_string(count) + " samples");
      }
      if (!is_digit(reader.peek())) {
        throw PgmError(PgmErrorKind::BadSample, "PGM sample is not a number");
      }
      std::uint64_t v = 0;
      while (!reader.at_end() && is_digit(reader.peek())) {
        v = v * 10 + (reader.peek() - '0');
        if (v > maxval) {
          throw PgmError(PgmErrorKind::BadSample, "PGM sample exceeds maxval");
        }
        reader.advance(1);
      }
      data[i] = static_cast<std::uint8_t>(v);
    }
  }
  return GreyImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

std::vector<std::uint8_t> write_pgm(const GreyImage& img, bool ascii) {
  std::vector<std::uint8_t> out;
  append(out, std::string(ascii ? "P2" : "P5") + "\n" + std::to_string(img.width()) + " " +
                  std::to_string(img.height()) + "\n255\n");
  if (!ascii) {
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
  }
  // Plain PGM lines stay within 70 characters; each image row starts a new line.
  for (int y = 0; y < img.height(); ++y) {
    std::size_t line = 0;
    for (const auto v : img.row(y)) {
      const std::string s = std::to_string(v);
      if (line > 0 && line + 1 + s.size() > 70) {
        out.push_back('\n');
        line = 0;
      }
      if (line > 0) {
        out.push_back(' ');
        ++line;
      }
      append(out, s);
      line += s.size();
    }
    out.push_back('\n');
  }
  return out;
}

GreyImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

void save_pgm(const std::filesystem::path& path, const GreyImage& img, bool ascii) {
  const auto bytes = write_pgm(img, ascii);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error("failed writing " + path.string());
  }
}

Histogram histogram(const GreyImage& img) {
  Histogram h;
  for (const auto v : img.pixels()) ++h.counts[v];
  return h;
}

SignedImage subtract(const GreyImage& a, const GreyImage& b) {
  if (!a.same_shape(b)) {
    throw DimensionMismatch("cannot subtract images of different dimensions");
  }
  std::vector<int> diff(a.size());
  std::transform(a.pixels().begin(), a.pixels().end(), b.pixels().begin(), diff.begin(),
                 [](int p, int q) { return p - q; });
  return SignedImage(a.width(), a.height(), std::move(diff));
}

GreyImage clamp_to_grey(const SignedImage& diff, int offset) {
  std::vector<std::uint8_t> out(diff.pixels().size());
  std::transform(diff.pixels().begin(), diff.pixels().end(), out.begin(), [offset](int d) {
    const long long v = static_cast<long long>(offset) + d;
    return static_cast<std::uint8_t>(std::clamp<long long>(v, 0, kMaxGrey));
  });
  return GreyImage(diff.width(), diff.height(), std::move(out));
}

GreyImage subtract_clamped(const GreyImage& a, const GreyImage& b, int offset) {
  return clamp_to_grey(subtract(a, b), offset);
}

}  // namespace softthresh
