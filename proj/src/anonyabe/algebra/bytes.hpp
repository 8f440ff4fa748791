#ifndef ANONYABE_ALGEBRA_BYTES_HPP
#define ANONYABE_ALGEBRA_BYTES_HPP

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "anonyabe/errors.hpp"

namespace anonyabe {

using Bytes = std::vector<uint8_t>;

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

std::string hex_encode(const uint8_t* data, size_t len);
inline std::string hex_encode(const Bytes& b) { return hex_encode(b.data(), b.size()); }
Bytes hex_decode(std::string_view hex);

/// Big-endian binary writer used for every on-disk and on-wire format.
class ByteWriter {
public:
    void u8(uint8_t v) { out_.push_back(v); }
    void u16(uint16_t v);
    void u32(uint32_t v);
    void u64(uint64_t v);
    void varint(uint64_t v); // LEB128
    void raw(const uint8_t* data, size_t len) { out_.insert(out_.end(), data, data + len); }
    void raw(const Bytes& b) { raw(b.data(), b.size()); }
    void lp_bytes(const Bytes& b); // u32 length prefix
    void lp_string(std::string_view s);

    const Bytes& bytes() const { return out_; }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

/// Reader counterpart; throws Errc::format on truncation or malformed input.
class ByteReader {
public:
    ByteReader(const uint8_t* data, size_t len) : data_(data), len_(len) {}
    explicit ByteReader(const Bytes& b) : ByteReader(b.data(), b.size()) {}

    uint8_t u8();
    uint16_t u16();
    uint32_t u32();
    uint64_t u64();
    uint64_t varint();
    Bytes raw(size_t n);
    Bytes lp_bytes();
    std::string lp_string();
    void expect_magic(std::string_view magic, std::string_view what);

    size_t remaining() const { return len_ - pos_; }
    void expect_end(std::string_view what) const {
        if (pos_ != len_) fail(Errc::format, std::string(what) + ": trailing bytes");
    }

private:
    const uint8_t* need(size_t n);
    const uint8_t* data_;
    size_t len_;
    size_t pos_ = 0;
};

} // namespace anonyabe

#endif
