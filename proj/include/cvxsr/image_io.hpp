#ifndef CVXSR_IMAGE_IO_HPP
#define CVXSR_IMAGE_IO_HPP

#include <stdexcept>
#include <string>

#include "cvxsr/plane.hpp"

namespace cvxsr {

enum class IoStatus {
  missing_file,
  decode_failed,
  unsupported_format,
  write_failed,
};

class ImageIoError : public std::runtime_error {
public:
  ImageIoError(IoStatus status, const std::string &what)
      : std::runtime_error(what), status_(status) {}
  IoStatus status() const { return status_; }

private:
  IoStatus status_;
};

/// Reads an 8- or 16-bit grayscale or RGB PNG. Integer samples map linearly
/// to [0,1] (8-bit: v/255, 16-bit: v/65535). Images with an alpha channel
/// are rejected as unsupported.
MultiImage load_image(const std::string &path);

/// Writes an 8-bit grayscale or RGB PNG. Values are clamped to [0,1] and
/// quantized round-half-up to bytes, so save followed by load moves each
/// sample by at most 1/255.
void save_image(const MultiImage &img, const std::string &path);

} // namespace cvxsr

#endif
