#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "octoroot/basin.hpp"

namespace octoroot {

enum class ImageFormat { ppm, png };

std::string_view image_format_name(ImageFormat f);
std::optional<ImageFormat> parse_image_format(std::string_view text);

/// Write or read failure; what() names the path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Binary P6: "P6\n<w> <h>\n255\n" then the raw RGB rows, top row first.
std::string encode_ppm(const Image& img);

/// Writes bytes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

void write_image(const Image& img, const std::filesystem::path& path, ImageFormat format);

/// Decodes a PNG written by write_image (8-bit RGB only).
Image read_png(const std::filesystem::path& path);

}  // namespace octoroot
