#include "srq/lut_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace srq {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'R', 'L', '1'};

std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        table[i] = c;
    }
    return table;
}

const std::array<std::uint32_t, 256>& crc_table() {
    static const auto table = make_crc_table();
    return table;
}

class ByteWriter {
public:
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void u16(std::uint16_t v) {
        bytes_.push_back(static_cast<std::uint8_t>(v));
        bytes_.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    std::vector<std::uint8_t>& bytes() { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
};

class ByteReader {
public:
    explicit ByteReader(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

    std::uint8_t u8() { return take(1)[0]; }
    std::uint16_t u16() {
        const std::uint8_t* p = take(2);
        return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
    }
    std::uint32_t u32() {
        const std::uint8_t* p = take(4);
        return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
               (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        const std::uint8_t* p = take(8);
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }

    const std::uint8_t* take(std::size_t count) {
        if (pos_ + count > bytes_.size())
            throw LutError(LutError::Kind::Truncated, "lut file: truncated");
        const std::uint8_t* p = bytes_.data() + pos_;
        pos_ += count;
        return p;
    }

    std::size_t pos() const { return pos_; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::uint8_t grouping_param_byte(const Grouping& g) {
    if (g.kind != GroupingKind::RedundantSub) return 0;
    return static_cast<std::uint8_t>((g.s << 4) | (g.n0prime & 0x0F));
}

Grouping grouping_from_bytes(std::uint8_t tag, std::uint8_t param) {
    if (tag > 4) throw LutError(LutError::Kind::BadField, "lut file: unknown grouping tag");
    Grouping g;
    g.kind = static_cast<GroupingKind>(tag);
    if (g.kind == GroupingKind::RedundantSub) {
        g.s = param >> 4;
        g.n0prime = param & 0x0F;
    }
    return g;
}

}  // namespace

std::uint32_t crc32(const std::uint8_t* data, std::size_t size, std::uint32_t seed) {
    std::uint32_t c = seed ^ 0xFFFFFFFFu;
    const auto& table = crc_table();
    for (std::size_t i = 0; i < size; ++i) c = table[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

std::size_t lut_file_size(int nk, int n) {
    const std::uint64_t mask_bits =
        ((std::uint64_t{1} << nk) - 1) * static_cast<std::uint64_t>(n);
    return kLutFixedBytes + 12u * static_cast<std::size_t>(n) +
           static_cast<std::size_t>((mask_bits + 7) / 8);
}

std::size_t export_lut(const SelectedQuantizer& q, const ComponentArray& array,
                       const std::filesystem::path& path, double delta) {
    const std::size_t codes = std::size_t{1} << q.nk;
    if (q.n != array.n() || q.masks.size() != codes - 1 || q.boundaries.size() != codes + 1)
        throw std::invalid_argument("export_lut: quantizer and array are inconsistent");
    if (!(q.grouping == array.grouping))
        throw std::invalid_argument("export_lut: grouping tags differ");
    if (array.spec.n0 > 255 || q.nk > 255 || array.n() > 0xFFFF)
        throw std::invalid_argument("export_lut: field out of range");
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("export_lut: bad delta");

    ByteWriter w;
    for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
    w.u16(kLutVersion);
    w.u8(static_cast<std::uint8_t>(array.spec.n0));
    w.u8(static_cast<std::uint8_t>(q.nk));
    w.f64(delta);
    w.u16(static_cast<std::uint16_t>(array.n()));
    w.u8(static_cast<std::uint8_t>(array.grouping.kind));
    w.u8(grouping_param_byte(array.grouping));
    for (std::uint32_t wgt : array.nominal) w.u32(wgt);
    for (double wgt : array.actual) w.f64(wgt);

    // Interior codes 1..2^nk-1, n bits per code, packed with no alignment.
    const int n = array.n();
    std::uint64_t acc = 0;
    int acc_bits = 0;
    for (std::uint32_t mask : q.masks) {
        acc |= static_cast<std::uint64_t>(mask) << acc_bits;
        acc_bits += n;
        while (acc_bits >= 8) {
            w.u8(static_cast<std::uint8_t>(acc & 0xFFu));
            acc >>= 8;
            acc_bits -= 8;
        }
    }
    if (acc_bits > 0) w.u8(static_cast<std::uint8_t>(acc & 0xFFu));

    w.u32(crc32(w.bytes().data(), w.bytes().size()));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw LutError(LutError::Kind::Io, "cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(w.bytes().data()),
              static_cast<std::streamsize>(w.bytes().size()));
    if (!out) throw LutError(LutError::Kind::Io, "write failed: " + path.string());
    return w.bytes().size();
}

std::pair<SelectedQuantizer, ComponentArray> import_lut(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LutError(LutError::Kind::Io, "cannot open: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());

    if (bytes.size() < kLutFixedBytes)
        throw LutError(LutError::Kind::Truncated, "lut file: shorter than fixed header");

    ByteReader r(std::move(bytes));
    for (char c : kMagic)
        if (r.u8() != static_cast<std::uint8_t>(c))
            throw LutError(LutError::Kind::BadMagic, "lut file: bad magic");
    const std::uint16_t version = r.u16();
    if (version != kLutVersion)
        throw LutError(LutError::Kind::BadVersion,
                       "lut file: unsupported version " + std::to_string(version));

    const int n0 = r.u8();
    const int nk = r.u8();
    const double delta = r.f64();
    const int n = r.u16();
    const std::uint8_t tag = r.u8();
    const std::uint8_t param = r.u8();
    if (n0 < 1 || nk < 1 || nk > 30 || n < 1 || n > kMaxEnumerableComponents)
        throw LutError(LutError::Kind::BadField, "lut file: header field out of range");
    if (!(delta > 0.0 && delta <= 1.0))
        throw LutError(LutError::Kind::BadField, "lut file: delta out of range");

    ComponentArray array;
    array.spec = QuantizerSpec::make(n0);
    array.grouping = grouping_from_bytes(tag, param);
    array.nominal.resize(n);
    array.actual.resize(n);
    for (int i = 0; i < n; ++i) array.nominal[i] = r.u32();
    for (int i = 0; i < n; ++i) {
        array.actual[i] = r.f64();
        if (!(array.actual[i] >= 0.0))
            throw LutError(LutError::Kind::BadField, "lut file: negative actual weight");
    }

    const std::size_t codes = std::size_t{1} << nk;
    const std::uint64_t mask_bits = (codes - 1) * static_cast<std::uint64_t>(n);
    const std::uint8_t* stream = r.take(static_cast<std::size_t>((mask_bits + 7) / 8));

    const std::size_t crc_pos = r.pos();
    const std::uint32_t stored_crc = r.u32();
    if (crc32(r.bytes().data(), crc_pos) != stored_crc)
        throw LutError(LutError::Kind::CrcMismatch, "lut file: crc mismatch");

    SelectedQuantizer q;
    q.nk = nk;
    q.n = n;
    q.grouping = array.grouping;
    q.boundaries.resize(codes + 1);
    q.masks.resize(codes - 1);
    q.boundaries.front() = 0.0;
    q.boundaries.back() = 1.0;

    std::uint64_t acc = 0;
    int acc_bits = 0;
    std::size_t byte_pos = 0;
    for (std::size_t i = 0; i < codes - 1; ++i) {
        while (acc_bits < n) {
            acc |= static_cast<std::uint64_t>(stream[byte_pos++]) << acc_bits;
            acc_bits += 8;
        }
        const auto mask = static_cast<std::uint32_t>(acc & ((std::uint64_t{1} << n) - 1));
        acc >>= n;
        acc_bits -= n;
        q.masks[i] = mask;
        q.boundaries[i + 1] = decode_assembly(mask, array);
    }

    for (std::size_t i = 1; i < q.boundaries.size(); ++i)
        if (q.boundaries[i] < q.boundaries[i - 1])
            throw LutError(LutError::Kind::NonMonotone,
                           "lut file: reconstructed boundaries not monotone");
    return {std::move(q), std::move(array)};
}

LutHeader read_lut_header(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LutError(LutError::Kind::Io, "cannot open: " + path.string());
    std::vector<std::uint8_t> bytes(20);
    in.read(reinterpret_cast<char*>(bytes.data()), 20);
    if (in.gcount() != 20) throw LutError(LutError::Kind::Truncated, "lut file: truncated header");

    ByteReader r(std::move(bytes));
    for (char c : kMagic)
        if (r.u8() != static_cast<std::uint8_t>(c))
            throw LutError(LutError::Kind::BadMagic, "lut file: bad magic");

    LutHeader header;
    header.version = r.u16();
    if (header.version != kLutVersion)
        throw LutError(LutError::Kind::BadVersion,
                       "lut file: unsupported version " + std::to_string(header.version));
    header.n0 = r.u8();
    header.nk = r.u8();
    header.delta = r.f64();
    header.n = r.u16();
    const std::uint8_t tag = r.u8();
    const std::uint8_t param = r.u8();
    header.grouping = grouping_from_bytes(tag, param);
    return header;
}

}  // namespace srq
