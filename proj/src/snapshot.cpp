#include "fracrd/snapshot.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace fracrd {

namespace {

constexpr char kMagic[5] = {'F', 'R', 'D', 'E', '1'};

void put_u32(std::string& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& b, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const SnapshotFile& s) {
  if (s.components.empty())
    throw std::runtime_error("write_snapshot: no components");
  const Grid2D& g = s.components.front().grid;
  const Space sp = s.components.front().space;
  for (const auto& f : s.components)
    if (!(f.grid == g) || f.space != sp || f.values.size() != g.size())
      throw std::runtime_error("write_snapshot: inconsistent components");

  std::string buf;
  buf.reserve(40 + s.components.size() * g.size() * 8);
  buf.append(kMagic, 5);
  buf.push_back(sp == Space::physical ? 0 : 1);
  buf.push_back(static_cast<char>(s.components.size()));
  buf.push_back(0);  // reserved
  put_u32(buf, static_cast<std::uint32_t>(g.nx));
  put_u32(buf, static_cast<std::uint32_t>(g.ny));
  put_f64(buf, g.Lx);
  put_f64(buf, g.Ly);
  put_f64(buf, s.time);
  for (const auto& f : s.components)
    for (double v : f.values) put_f64(buf, v);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_snapshot: cannot open '" + path + "'");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("write_snapshot: write failed for '" + path + "'");
}

SnapshotFile read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_snapshot: cannot open '" + path + "'");
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (buf.size() < 40 || std::memcmp(buf.data(), kMagic, 5) != 0)
    throw std::runtime_error("read_snapshot: '" + path + "' is not a snapshot file");
  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
  const int space_tag = p[5];
  const int comps = p[6];
  if (space_tag > 1 || comps < 1)
    throw std::runtime_error("read_snapshot: bad header in '" + path + "'");
  const std::uint32_t nx = get_u32(p + 8), ny = get_u32(p + 12);
  const double Lx = get_f64(p + 16), Ly = get_f64(p + 24), time = get_f64(p + 32);
  if (nx == 0 || ny == 0 || nx > (1u << 20) || ny > (1u << 20))
    throw std::runtime_error("read_snapshot: implausible grid size in '" + path + "'");
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  if (buf.size() != 40 + static_cast<std::size_t>(comps) * n * 8)
    throw std::runtime_error("read_snapshot: payload size mismatch in '" + path + "'");

  SnapshotFile s;
  s.time = time;
  const Grid2D g{Lx, Ly, static_cast<int>(nx), static_cast<int>(ny)};
  const unsigned char* q = p + 40;
  for (int c = 0; c < comps; ++c) {
    Field f = Field::zeros(g, space_tag == 0 ? Space::physical : Space::spectral);
    for (std::size_t k = 0; k < n; ++k, q += 8) f.values[k] = get_f64(q);
    s.components.push_back(std::move(f));
  }
  return s;
}

void write_snapshot_csv(const std::string& path, const SnapshotFile& s,
                        const std::vector<std::string>& names) {
  if (s.components.empty() || names.size() != s.components.size())
    throw std::runtime_error("write_snapshot_csv: component/name mismatch");
  const Grid2D& g = s.components.front().grid;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_snapshot_csv: cannot open '" + path + "'");
  out << "x,y";
  for (const auto& n : names) out << "," << n;
  out << "\n";
  char buf[64];
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", g.x(i), g.y(j));
      out << buf;
      for (const auto& f : s.components) {
        std::snprintf(buf, sizeof(buf), ",%.17g", f.at(i, j));
        out << buf;
      }
      out << "\n";
    }
}

void write_pgm(const std::string& path, const Field& f) {
  const Grid2D& g = f.grid;
  double lo = f.values.empty() ? 0.0 : f.values[0], hi = lo;
  for (double v : f.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi - lo;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_pgm: cannot open '" + path + "'");
  out << "P5\n" << g.nx << " " << g.ny << "\n255\n";
  std::string row(static_cast<std::size_t>(g.nx), '\0');
  for (int j = g.ny - 1; j >= 0; --j) {  // top row = largest y
    for (int i = 0; i < g.nx; ++i) {
      int px = 0;
      if (span > 0.0)
        px = static_cast<int>(255.0 * (f.at(i, j) - lo) / span + 0.5);
      px = std::max(0, std::min(255, px));
      row[static_cast<std::size_t>(i)] = static_cast<char>(px);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }

  std::ofstream side(path + ".txt", std::ios::trunc);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "min = %.17g\nmax = %.17g\nmapping = linear min->0 max->255\n"
                "rows = y descending, cols = x ascending\n",
                lo, hi);
  side << buf;
}

}  // namespace fracrd
