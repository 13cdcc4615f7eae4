#include "icq/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace icq {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'I', 'C', 'Q', 'N'};

void put_u32(std::vector<char>& buf, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  buf.insert(buf.end(), b, b + 4);
}

void put_f64(std::vector<char>& buf, double v) {
  char b[8];
  std::memcpy(b, &v, 8);
  buf.insert(buf.end(), b, b + 8);
}

}  // namespace

void checkpoint_write(const WaveField& u, double t, const std::string& path) {
  const Grid2D& g = u.grid;
  std::vector<char> header;
  header.reserve(kCheckpointHeaderBytes);
  header.insert(header.end(), kMagic, kMagic + 4);
  put_u32(header, kCheckpointVersion);
  put_u32(header, static_cast<std::uint32_t>(g.n));
  put_f64(header, g.L);
  put_f64(header, t);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("checkpoint_write: cannot open " + path);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(u.v.data()),
            static_cast<std::streamsize>(u.v.size() * sizeof(cplx)));
  if (!out) throw CheckpointError("checkpoint_write: short write to " + path);
}

CheckpointHeader checkpoint_peek(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("checkpoint_peek: cannot open " + path);
  char buf[kCheckpointHeaderBytes];
  in.read(buf, kCheckpointHeaderBytes);
  if (in.gcount() != static_cast<std::streamsize>(kCheckpointHeaderBytes))
    throw CheckpointError("checkpoint_peek: truncated header in " + path);
  if (std::memcmp(buf, kMagic, 4) != 0)
    throw CheckpointError("not an ICQN checkpoint: " + path);
  CheckpointHeader h;
  std::memcpy(&h.version, buf + 4, 4);
  std::memcpy(&h.n, buf + 8, 4);
  std::memcpy(&h.L, buf + 12, 8);
  std::memcpy(&h.t, buf + 20, 8);
  if (h.version != kCheckpointVersion)
    throw CheckpointError("unsupported checkpoint version " +
                          std::to_string(h.version) + " in " + path);
  return h;
}

CheckpointData checkpoint_read(const std::string& path) {
  CheckpointHeader h = checkpoint_peek(path);
  if (h.n == 0 || h.n > (1u << 16))
    throw CheckpointError("checkpoint_read: implausible n in " + path);

  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("checkpoint_read: cannot open " + path);
  in.seekg(0, std::ios::end);
  const std::uint64_t size = static_cast<std::uint64_t>(in.tellg());
  const std::uint64_t expect =
      kCheckpointHeaderBytes + 16ull * h.n * h.n;
  if (size != expect)
    throw CheckpointError("payload length mismatch in " + path + ": have " +
                          std::to_string(size) + " bytes, expected " +
                          std::to_string(expect));
  in.seekg(static_cast<std::streamoff>(kCheckpointHeaderBytes));

  CheckpointData out;
  out.t = h.t;
  out.field = WaveField(Grid2D::make(static_cast<int>(h.n), h.L));
  in.read(reinterpret_cast<char*>(out.field.v.data()),
          static_cast<std::streamsize>(out.field.v.size() * sizeof(cplx)));
  if (in.gcount() !=
      static_cast<std::streamsize>(out.field.v.size() * sizeof(cplx)))
    throw CheckpointError("checkpoint_read: short payload read in " + path);
  return out;
}

}  // namespace icq
