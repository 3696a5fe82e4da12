#include "neuroscope/image.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>

#include "neuroscope/binary_io.hpp"
#include "neuroscope/error.hpp"

namespace neuroscope {

namespace {

// libpng reports errors by longjmp, so everything with a destructor lives
// in these structs rather than as locals of the setjmp frame.
struct DecodeState {
  std::string_view bytes;
  std::size_t offset = 0;
  std::string error;
  GrayImage image;
  std::vector<png_bytep> rows;
  std::vector<png_byte> buffer;
};

struct EncodeState {
  std::string out;
  std::string error;
  std::vector<png_byte> buffer;
  std::vector<png_bytep> rows;
};

void on_error(png_structp png, png_const_charp message) {
  auto* error = static_cast<std::string*>(png_get_error_ptr(png));
  if (error) *error = message;
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

void read_bytes(png_structp png, png_bytep out, png_size_t length) {
  auto* state = static_cast<DecodeState*>(png_get_io_ptr(png));
  if (state->bytes.size() - state->offset < length) png_error(png, "unexpected end of PNG data");
  std::memcpy(out, state->bytes.data() + state->offset, length);
  state->offset += length;
}

void write_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* state = static_cast<EncodeState*>(png_get_io_ptr(png));
  state->out.append(reinterpret_cast<const char*>(data), length);
}

void flush_bytes(png_structp) {}

bool decode_into(DecodeState& s) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &s.error, on_error, on_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, &s, read_bytes);
  png_read_info(png, info);

  const png_byte color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
      color == PNG_COLOR_TYPE_PALETTE)
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int out_depth = png_get_bit_depth(png, info);
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  if (png_get_channels(png, info) != 1) png_error(png, "could not reduce image to one channel");

  s.buffer.assign(row_bytes * height, 0);
  s.rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) s.rows[y] = s.buffer.data() + y * row_bytes;
  png_read_image(png, s.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  s.image = GrayImage(width, height, out_depth == 16 ? 16 : 8);
  for (png_uint_32 y = 0; y < height; ++y) {
    const png_byte* row = s.rows[y];
    for (png_uint_32 x = 0; x < width; ++x) {
      s.image.at(x, y) = out_depth == 16
                             ? static_cast<std::uint16_t>((row[2 * x] << 8) | row[2 * x + 1])
                             : row[x];
    }
  }
  return true;
}

bool encode_into(EncodeState& s, const GrayImage& image) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &s.error, on_error, on_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &s, write_bytes, flush_bytes);
  const int depth = image.bit_depth == 16 ? 16 : 8;
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), depth, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const std::size_t bytes_per = depth == 16 ? 2 : 1;
  const std::size_t row_bytes = image.width * bytes_per;
  s.buffer.assign(row_bytes * image.height, 0);
  s.rows.resize(image.height);
  for (std::size_t y = 0; y < image.height; ++y) {
    png_byte* row = s.buffer.data() + y * row_bytes;
    s.rows[y] = row;
    for (std::size_t x = 0; x < image.width; ++x) {
      const std::uint16_t v = image.at(x, y);
      if (depth == 16) {
        row[2 * x] = static_cast<png_byte>(v >> 8);
        row[2 * x + 1] = static_cast<png_byte>(v & 0xFF);
      } else {
        row[x] = static_cast<png_byte>(v);
      }
    }
  }
  png_write_image(png, s.rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

GrayImage decode_png(std::string_view bytes) {
  if (bytes.size() < 8 || png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0) {
    fail(ErrorCode::UnreadableImage, "not a PNG file");
  }
  DecodeState state;
  state.bytes = bytes;
  if (!decode_into(state)) {
    fail(ErrorCode::UnreadableImage, "PNG decode failed: " + state.error);
  }
  return std::move(state.image);
}

std::string encode_png(const GrayImage& image) {
  if (image.width == 0 || image.height == 0 || image.pixels.size() != image.width * image.height) {
    fail(ErrorCode::InvalidArgument, "cannot encode an empty or inconsistent image");
  }
  EncodeState state;
  if (!encode_into(state, image)) {
    fail(ErrorCode::Io, "PNG encode failed: " + state.error);
  }
  return std::move(state.out);
}

GrayImage read_png(const std::filesystem::path& path) {
  std::string bytes;
  try {
    bytes = detail::read_file(path.string());
  } catch (const Error& e) {
    fail(ErrorCode::UnreadableImage, e.what());
  }
  try {
    return decode_png(bytes);
  } catch (const Error& e) {
    fail(ErrorCode::UnreadableImage, path.string() + ": " + e.what());
  }
}

void write_png(const GrayImage& image, const std::filesystem::path& path) {
  detail::write_file_atomic(path.string(), encode_png(image));
}

}  // namespace neuroscope
