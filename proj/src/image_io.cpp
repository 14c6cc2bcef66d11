#include "octoroot/image_io.hpp"

#include <png.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <system_error>

#include <fmt/format.h>

namespace octoroot {

namespace fs = std::filesystem;

std::string_view image_format_name(ImageFormat f) {
  return f == ImageFormat::png ? "png" : "ppm";
}

std::optional<ImageFormat> parse_image_format(std::string_view text) {
  if (text == "ppm") return ImageFormat::ppm;
  if (text == "png") return ImageFormat::png;
  return std::nullopt;
}

IoError::IoError(const fs::path& path, const std::string& what)
    : std::runtime_error(fmt::format("{}: {}", path.string(), what)), path_(path) {}

namespace {

void check_buffer(const Image& img) {
  if (img.width < 1 || img.height < 1 ||
      img.rgb.size() != 3 * static_cast<std::size_t>(img.width) *
                            static_cast<std::size_t>(img.height)) {
    throw std::invalid_argument("image buffer does not match its dimensions");
  }
}

extern "C" void png_append(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), length);
}

extern "C" void png_no_flush(png_structp) {}

std::string encode_png(const Image& img) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw std::runtime_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  std::string out;
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("PNG encoding failed");
  }
  png_set_write_fn(png, &out, png_append, png_no_flush);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
               static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = 3 * static_cast<std::size_t>(img.width);
  for (int row = 0; row < img.height; ++row) {
    // libpng takes a non-const row pointer but does not modify it.
    auto* p = const_cast<png_bytep>(img.rgb.data() + stride * static_cast<std::size_t>(row));
    png_write_row(png, p);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace

std::string encode_ppm(const Image& img) {
  check_buffer(img);
  std::string out = fmt::format("P6\n{} {}\n255\n", img.width, img.height);
  out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  return out;
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp = path;
  tmp += fmt::format(".tmp.{}.{}", ::getpid(), counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, fmt::format("cannot open for writing ({})", std::strerror(errno)));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError(path, "write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError(path, "rename failed: " + ec.message());
  }
}

void write_image(const Image& img, const fs::path& path, ImageFormat format) {
  check_buffer(img);
  write_file_atomic(path, format == ImageFormat::png ? encode_png(img) : encode_ppm(img));
}

Image read_png(const fs::path& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (fp == nullptr) throw IoError(path, "cannot open for reading");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  Image img;
  if (png == nullptr || info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw IoError(path, "not a readable PNG");
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  if (png_get_color_type(png, info) != PNG_COLOR_TYPE_RGB || png_get_bit_depth(png, info) != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw IoError(path, "expected 8-bit RGB");
  }
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.rgb.resize(3 * static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height));
  const std::size_t stride = 3 * static_cast<std::size_t>(img.width);
  for (int row = 0; row < img.height; ++row) {
    png_read_row(png, img.rgb.data() + stride * static_cast<std::size_t>(row), nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return img;
}

}  // namespace octoroot
