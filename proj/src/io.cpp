#include "psusim/io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace psusim {

namespace {

std::vector<unsigned char> read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

std::uint32_t be32(const unsigned char* p) {
  return std::uint32_t(p[0]) << 24 | std::uint32_t(p[1]) << 16 | std::uint32_t(p[2]) << 8 |
         std::uint32_t(p[3]);
}

std::uint16_t be16(const unsigned char* p) { return std::uint16_t(p[0]) << 8 | p[1]; }

Image load_idx(const std::vector<unsigned char>& data, const std::string& path) {
  if (data.size() < 4 || data[0] != 0 || data[1] != 0 || data[2] != 0x08) {
    throw std::runtime_error(path + ": not an IDX ubyte file");
  }
  const int ndims = data[3];
  if (ndims != 2 && ndims != 3) {
    throw std::runtime_error(path + ": IDX rank must be 2 or 3");
  }
  const std::size_t header = 4 + 4 * static_cast<std::size_t>(ndims);
  if (data.size() < header) throw std::runtime_error(path + ": truncated IDX header");
  std::size_t off = 4;
  std::uint32_t count = 1;
  if (ndims == 3) {
    count = be32(&data[off]);
    off += 4;
  }
  const std::uint32_t h = be32(&data[off]);
  const std::uint32_t w = be32(&data[off + 4]);
  if (count == 0 || h == 0 || w == 0) throw std::runtime_error(path + ": empty IDX file");
  if (data.size() < header + static_cast<std::size_t>(h) * w) {
    throw std::runtime_error(path + ": truncated IDX pixel data");
  }
  Image img{static_cast<int>(h), static_cast<int>(w), {}};
  img.px.assign(data.begin() + header, data.begin() + header + static_cast<std::size_t>(h) * w);
  return img;
}

Image load_blnk(const std::vector<unsigned char>& data, const std::string& path) {
  if (data.size() < 8) throw std::runtime_error(path + ": truncated BLNK header");
  const std::uint16_t h = be16(&data[4]);
  const std::uint16_t w = be16(&data[6]);
  if (h == 0 || w == 0) throw std::runtime_error(path + ": empty BLNK image");
  if (data.size() < 8 + static_cast<std::size_t>(h) * w) {
    throw std::runtime_error(path + ": truncated BLNK pixel data");
  }
  Image img{h, w, {}};
  img.px.assign(data.begin() + 8, data.begin() + 8 + static_cast<std::size_t>(h) * w);
  return img;
}

}  // namespace

Image load_image(const std::string& path) {
  const auto data = read_all(path);
  if (data.size() >= 4 && data[0] == 'B' && data[1] == 'L' && data[2] == 'N' && data[3] == 'K') {
    return load_blnk(data, path);
  }
  return load_idx(data, path);
}

void write_blnk(const std::string& path, const Image& image) {
  if (image.h <= 0 || image.w <= 0 || image.h > 0xFFFF || image.w > 0xFFFF) {
    throw std::invalid_argument("write_blnk: dimensions out of range");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const unsigned char header[8] = {'B', 'L', 'N', 'K',
                                   static_cast<unsigned char>(image.h >> 8),
                                   static_cast<unsigned char>(image.h & 0xFF),
                                   static_cast<unsigned char>(image.w >> 8),
                                   static_cast<unsigned char>(image.w & 0xFF)};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  out.write(reinterpret_cast<const char*>(image.px.data()),
            static_cast<std::streamsize>(image.px.size()));
}

void write_layer_csv(const std::string& path, std::span<const OutputMap> maps) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "filter,row,col,value\n";
  for (std::size_t f = 0; f < maps.size(); ++f) {
    for (int r = 0; r < maps[f].h; ++r) {
      for (int c = 0; c < maps[f].w; ++c) {
        out << f << ',' << r << ',' << c << ',' << maps[f].at(r, c) << '\n';
      }
    }
  }
}

}  // namespace psusim
