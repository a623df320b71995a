#pragma once

#include <string>
#include <vector>

#include "fracrd/grid.hpp"

namespace fracrd {

/// Self-describing binary snapshot container. Layout (little-endian):
///   bytes 0..4   magic "FRDE1"
///   byte  5      space tag (0 physical, 1 spectral)
///   byte  6      component count
///   byte  7      reserved (0)
///   u32          nx, ny
///   f64          Lx, Ly, time
///   payload      components * nx*ny f64, row-major per component
struct SnapshotFile {
  double time = 0.0;
  std::vector<Field> components;  ///< all on one grid, same space
};

void write_snapshot(const std::string& path, const SnapshotFile& s);

/// Throws std::runtime_error on bad magic, short payload, or size overflow.
SnapshotFile read_snapshot(const std::string& path);

/// One row per node: "x,y,<comp values...>" with a header row, 17
/// significant digits, LF line endings.
void write_snapshot_csv(const std::string& path, const SnapshotFile& s,
                        const std::vector<std::string>& names);

/// 8-bit binary PGM (P5) with linear min->0, max->255 scaling; rows are y
/// (top row = largest y), columns are x. A sidecar "<path>.txt" records the
/// scaling so values can be recovered. Constant fields map to 0.
void write_pgm(const std::string& path, const Field& f);

}  // namespace fracrd
