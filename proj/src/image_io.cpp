#include "cvxsr/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace cvxsr {

namespace {

struct FileCloser {
  void operator()(FILE *f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

unsigned char quantize(double v) {
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));
}

} // namespace

MultiImage load_image(const std::string &path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp)
    throw ImageIoError(IoStatus::missing_file, "cannot open " + path);

  unsigned char sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw ImageIoError(IoStatus::decode_failed, "not a PNG file: " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(IoStatus::decode_failed, "libpng init failed");
  }

  // libpng reports errors through longjmp; no C++ objects are constructed
  // between setjmp and a potential failure.
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(IoStatus::decode_failed, "failed to decode " + path);
  }

  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  // Expands palettes to RGB and sub-byte grayscale to 8-bit; leaves alpha
  // (including tRNS-derived alpha) visible so it can be rejected below.
  png_read_png(png, info, PNG_TRANSFORM_PACKING | PNG_TRANSFORM_EXPAND,
               nullptr);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  const int channels = png_get_channels(png, info);

  if (color_type & PNG_COLOR_MASK_ALPHA) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(IoStatus::unsupported_format,
                       "alpha channels are not supported: " + path);
  }
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(IoStatus::unsupported_format,
                       "unsupported channel count in " + path);
  }
  if (bit_depth != 8 && bit_depth != 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(IoStatus::unsupported_format,
                       "unsupported bit depth in " + path);
  }

  png_bytepp rows = png_get_rows(png, info);
  MultiImage img;
  img.channels.assign(channels, Plane(static_cast<int>(w), static_cast<int>(h)));

  const double scale = bit_depth == 8 ? 1.0 / 255.0 : 1.0 / 65535.0;
  for (png_uint_32 y = 0; y < h; ++y) {
    const png_bytep row = rows[y];
    for (png_uint_32 x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        unsigned v;
        if (bit_depth == 8) {
          v = row[x * channels + c];
        } else {
          const size_t off = 2 * (x * channels + c);
          v = (static_cast<unsigned>(row[off]) << 8) | row[off + 1];
        }
        img.channels[c].at(static_cast<int>(x), static_cast<int>(y)) =
            v * scale;
      }
    }
  }

  png_destroy_read_struct(&png, &info, nullptr);
  validate_image(img);
  return img;
}

void save_image(const MultiImage &img, const std::string &path) {
  validate_image(img);
  const int channels = img.channel_count();
  if (channels != 1 && channels != 3)
    throw ImageIoError(IoStatus::unsupported_format,
                       "only 1- or 3-channel images can be saved");

  const int w = img.width();
  const int h = img.height();

  std::vector<unsigned char> bytes(static_cast<size_t>(w) * h * channels);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c)
        bytes[(static_cast<size_t>(y) * w + x) * channels + c] =
            quantize(img.channels[c].at(x, y));

  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y)
    rows[y] = bytes.data() + static_cast<size_t>(y) * w * channels;

  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp)
    throw ImageIoError(IoStatus::write_failed, "cannot write " + path);

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw ImageIoError(IoStatus::write_failed, "libpng init failed");
  }

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw ImageIoError(IoStatus::write_failed, "failed to write " + path);
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, w, h, 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
}

} // namespace cvxsr
