#include "anonyabe/algebra/bytes.hpp"

namespace anonyabe {

static const char* kHexDigits = "0123456789abcdef";

std::string hex_encode(const uint8_t* data, size_t len) {
    std::string out;
    out.reserve(len * 2);
    for (size_t i = 0; i < len; ++i) {
        out.push_back(kHexDigits[data[i] >> 4]);
        out.push_back(kHexDigits[data[i] & 0xf]);
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes hex_decode(std::string_view hex) {
    if (hex.size() % 2 != 0) fail(Errc::format, "hex string has odd length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) fail(Errc::format, "invalid hex digit");
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

void ByteWriter::u16(uint16_t v) {
    u8(static_cast<uint8_t>(v >> 8));
    u8(static_cast<uint8_t>(v));
}

void ByteWriter::u32(uint32_t v) {
    u16(static_cast<uint16_t>(v >> 16));
    u16(static_cast<uint16_t>(v));
}

void ByteWriter::u64(uint64_t v) {
    u32(static_cast<uint32_t>(v >> 32));
    u32(static_cast<uint32_t>(v));
}

void ByteWriter::varint(uint64_t v) {
    while (v >= 0x80) {
        u8(static_cast<uint8_t>(v) | 0x80);
        v >>= 7;
    }
    u8(static_cast<uint8_t>(v));
}

void ByteWriter::lp_bytes(const Bytes& b) {
    u32(static_cast<uint32_t>(b.size()));
    raw(b);
}

void ByteWriter::lp_string(std::string_view s) {
    u32(static_cast<uint32_t>(s.size()));
    raw(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

const uint8_t* ByteReader::need(size_t n) {
    if (len_ - pos_ < n) fail(Errc::format, "truncated input");
    const uint8_t* p = data_ + pos_;
    pos_ += n;
    return p;
}

uint8_t ByteReader::u8() { return *need(1); }

uint16_t ByteReader::u16() {
    const uint8_t* p = need(2);
    return static_cast<uint16_t>((p[0] << 8) | p[1]);
}

uint32_t ByteReader::u32() {
    const uint8_t* p = need(4);
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

uint64_t ByteReader::u64() {
    uint64_t hi = u32();
    return (hi << 32) | u32();
}

uint64_t ByteReader::varint() {
    uint64_t v = 0;
    int shift = 0;
    for (;;) {
        uint8_t b = u8();
        if (shift >= 63 && (b & 0x7e)) fail(Errc::format, "varint overflow");
        v |= uint64_t(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
    }
}

Bytes ByteReader::raw(size_t n) {
    const uint8_t* p = need(n);
    return Bytes(p, p + n);
}

Bytes ByteReader::lp_bytes() {
    uint32_t n = u32();
    if (n > remaining()) fail(Errc::format, "length prefix exceeds input");
    return raw(n);
}

std::string ByteReader::lp_string() {
    Bytes b = lp_bytes();
    return std::string(b.begin(), b.end());
}

void ByteReader::expect_magic(std::string_view magic, std::string_view what) {
    if (remaining() < magic.size() || std::memcmp(data_ + pos_, magic.data(), magic.size()) != 0)
        fail(Errc::format, std::string(what) + ": bad magic");
    pos_ += magic.size();
}

} // namespace anonyabe
