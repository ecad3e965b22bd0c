#include "vortexlab/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace vlab {
namespace {

// on-disk layout is little-endian; this code targets little-endian hosts
void put_u64(std::ofstream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
}
void put_f64(std::ofstream& out, double v) { out.write(reinterpret_cast<const char*>(&v), 8); }

} // namespace

void write_snapshot(const std::string& path, const PhysicalVectorField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write("VMF1", 4);
    put_u64(out, static_cast<std::uint64_t>(f.grid.n));
    put_f64(out, f.grid.L);
    for (int c = 0; c < 3; ++c)
        out.write(reinterpret_cast<const char*>(f.comp[c].data()),
                  static_cast<std::streamsize>(f.comp[c].size() * sizeof(double)));
    if (!out) throw std::runtime_error("snapshot write failed: " + path);
}

PhysicalVectorField read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "VMF1", 4) != 0)
        throw std::runtime_error("not a VMF1 snapshot: " + path);
    std::uint64_t n = 0;
    double L = 0.0;
    in.read(reinterpret_cast<char*>(&n), 8);
    in.read(reinterpret_cast<char*>(&L), 8);
    if (!in) throw std::runtime_error("truncated VMF1 header: " + path);
    PhysicalVectorField f(GridSpec(static_cast<int>(n), L));
    for (int c = 0; c < 3; ++c) {
        in.read(reinterpret_cast<char*>(f.comp[c].data()),
                static_cast<std::streamsize>(f.comp[c].size() * sizeof(double)));
    }
    if (!in) throw std::runtime_error("truncated VMF1 payload: " + path);
    return f;
}

} // namespace vlab
