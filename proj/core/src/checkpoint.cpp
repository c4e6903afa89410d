#include "glmcf/checkpoint.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "glmcf/errors.hpp"

namespace glmcf {

namespace {

constexpr char kMagic[8] = {'G', 'L', 'M', 'C', 'F', '0', '1', '\n'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const GraphState& state, const PeriodicGrid& grid) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error("cannot open checkpoint for writing: " + tmp);

    os.write(kMagic, sizeof kMagic);
    write_u32(os, kVersion);
    write_u32(os, static_cast<std::uint32_t>(grid.dim));
    write_u32(os, static_cast<std::uint32_t>(grid.points_per_axis));
    os.write(reinterpret_cast<const char*>(&state.t), sizeof state.t);
    os.write(reinterpret_cast<const char*>(state.harmonic.data()),
             static_cast<std::streamsize>(grid.dim * sizeof(double)));

    const std::streamsize plane = static_cast<std::streamsize>(grid.size() * sizeof(double));
    os.write(reinterpret_cast<const char*>(state.base_potential.plane(0)), plane);
    os.write(reinterpret_cast<const char*>(state.u.plane(0)), plane);
    if (!os) throw io_error("short write on checkpoint: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("cannot rename checkpoint into place: " + ec.message());
}

GraphState load_checkpoint(const std::string& path, PeriodicGrid& grid_out) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open checkpoint: " + path);

  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw io_error("not a checkpoint file: " + path);

  const std::uint32_t version = read_u32(is);
  if (version != kVersion) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "unsupported checkpoint version %u", version);
    throw io_error(buf);
  }
  const std::uint32_t n = read_u32(is);
  const std::uint32_t N = read_u32(is);
  if (n < 1 || n > 3 || N < 16) throw io_error("checkpoint header has invalid grid dimensions");
  grid_out = PeriodicGrid(static_cast<int>(n), static_cast<int>(N));

  GraphState state;
  is.read(reinterpret_cast<char*>(&state.t), sizeof state.t);
  is.read(reinterpret_cast<char*>(state.harmonic.data()),
          static_cast<std::streamsize>(n * sizeof(double)));

  state.base_potential = ScalarField(grid_out, 0);
  state.u = ScalarField(grid_out, 0);
  const std::streamsize plane = static_cast<std::streamsize>(grid_out.size() * sizeof(double));
  is.read(reinterpret_cast<char*>(state.base_potential.plane(0)), plane);
  is.read(reinterpret_cast<char*>(state.u.plane(0)), plane);
  if (!is) throw io_error("truncated checkpoint: " + path);
  return state;
}

}  // namespace glmcf
