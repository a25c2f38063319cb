#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>

#include "srq/model.hpp"
#include "srq/reference.hpp"

namespace srq {

// Calibration lookup-table file, format version 1:
//
//   magic "SRL1"        4 bytes
//   version             u16 LE
//   n0                  u8
//   nk                  u8
//   delta               f64 LE
//   n                   u16 LE
//   grouping tag        u8   (0 bw, 1 hs, 2 un, 3 rs, 4 raw)
//   grouping param      u8   (rs only: s in high nibble, n0prime in low; else 0)
//   nominal weights     u32 LE * n
//   actual weights      f64 LE * n
//   mask stream         (2^nk - 1) * n bits, little-endian bit order,
//                       codes ascending, no per-code alignment
//   crc32               u32 LE over all prior bytes (IEEE reflected)
//
// Code 0 is the empty mask by construction and is not stored; neither is the
// fixed full-scale boundary. Total size is 24 + 12*n + ceil((2^nk - 1)*n / 8)
// bytes. Trial provenance is not persisted (run manifests carry it).

inline constexpr std::uint16_t kLutVersion = 1;
inline constexpr std::size_t kLutFixedBytes = 24;  // header 20 + crc 4

class LutError : public std::runtime_error {
public:
    enum class Kind { Io, BadMagic, BadVersion, Truncated, CrcMismatch, NonMonotone, BadField };

    LutError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct LutHeader {
    std::uint16_t version = 0;
    int n0 = 0;
    int nk = 0;
    double delta = 1.0;
    int n = 0;
    Grouping grouping;
};

std::size_t lut_file_size(int nk, int n);

// Writes the quantizer + array to `path`; returns bytes written. `delta` is
// the evaluation range the calibration was made for (header metadata only).
std::size_t export_lut(const SelectedQuantizer& q, const ComponentArray& array,
                       const std::filesystem::path& path, double delta = 1.0);

// Reads a LUT file, recomputes each interior boundary from its mask and the
// stored actual weights, and verifies monotonicity.
std::pair<SelectedQuantizer, ComponentArray> import_lut(const std::filesystem::path& path);

// Header fields only (validates magic/version, not the payload).
LutHeader read_lut_header(const std::filesystem::path& path);

// CRC-32 (IEEE 802.3, reflected, init/xorout 0xFFFFFFFF).
std::uint32_t crc32(const std::uint8_t* data, std::size_t size, std::uint32_t seed = 0);

}  // namespace srq
