#include "gaze4d/render/dumps.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace {

constexpr char kMagic[4] = {'I', 'D', '4', 'D'};

void put_u32(std::ostream& out, uint32_t v) {
  const unsigned char b[4] = {
      static_cast<unsigned char>(v & 0xFF),
      static_cast<unsigned char>((v >> 8) & 0xFF),
      static_cast<unsigned char>((v >> 16) & 0xFF),
      static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

}  // namespace

void save_id_dump(const IdImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write ID dump: " + path);
  out.write(kMagic, 4);
  put_u32(out, static_cast<uint32_t>(img.width()));
  put_u32(out, static_cast<uint32_t>(img.height()));
  put_u32(out, 0);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) put_u32(out, img.at(x, y));
  if (!out) throw ParseError("short write on ID dump: " + path);
}

IdImage load_id_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open ID dump: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError("bad ID dump magic: " + path);
  const uint32_t w = get_u32(in);
  const uint32_t h = get_u32(in);
  get_u32(in);  // reserved
  if (!in || w == 0 || h == 0 || w > 1u << 16 || h > 1u << 16)
    throw ParseError("bad ID dump header: " + path);
  IdImage img(static_cast<int>(w), static_cast<int>(h));
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) img.at(x, y) = get_u32(in);
  if (!in) throw ParseError("truncated ID dump: " + path);
  return img;
}

void save_pgm(const MaskImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write PGM: " + path);
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()),
            static_cast<std::streamsize>(img.size()));
  if (!out) throw ParseError("short write on PGM: " + path);
}

void save_pfm(const DepthImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write PFM: " + path);
  out << "Pf\n" << img.width() << ' ' << img.height() << "\n-1.0\n";
  for (int y = img.height() - 1; y >= 0; --y)
    out.write(reinterpret_cast<const char*>(img.row(y)),
              static_cast<std::streamsize>(img.width() * sizeof(float)));
  if (!out) throw ParseError("short write on PFM: " + path);
}

}  // namespace gaze4d
