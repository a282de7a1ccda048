#include "geopeg/binio.hpp"

#include <fstream>

namespace geopeg::io {

void Writer::write_file(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  f.write(reinterpret_cast<const char*>(buf_.data()), std::streamsize(buf_.size()));
  if (!f) throw IoError("write failed: " + path.string());
}

Reader Reader::from_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) throw IoError("cannot open: " + path.string());
  auto size = f.tellg();
  f.seekg(0);
  std::vector<uint8_t> buf(size_t(size));
  f.read(reinterpret_cast<char*>(buf.data()), size);
  if (!f) throw IoError("read failed: " + path.string());
  return Reader(std::move(buf));
}

}  // namespace geopeg::io
