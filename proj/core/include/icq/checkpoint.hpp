#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "icq/grid.hpp"

namespace icq {

struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "ICQN" container: magic(4) | version u32 | n u32 | L f64 | t f64, then
/// n^2 complex samples as interleaved (re, im) little-endian f64, row-major.
/// Header is 28 bytes, payload 16 n^2 bytes; round trips are byte-exact.
struct CheckpointHeader {
  std::uint32_t version = 1;
  std::uint32_t n = 0;
  double L = 0.0;
  double t = 0.0;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;
inline constexpr std::size_t kCheckpointHeaderBytes = 28;

void checkpoint_write(const WaveField& u, double t, const std::string& path);

struct CheckpointData {
  WaveField field;
  double t = 0.0;
};
CheckpointData checkpoint_read(const std::string& path);

/// Header only (for `inspect`); validates magic and version.
CheckpointHeader checkpoint_peek(const std::string& path);

}  // namespace icq
