#ifndef ANONYABE_ALGEBRA_DIGEST_HPP
#define ANONYABE_ALGEBRA_DIGEST_HPP

#include <array>
#include <initializer_list>
#include <string_view>

#include "anonyabe/algebra/bytes.hpp"

namespace anonyabe {

using Digest32 = std::array<uint8_t, 32>;

Digest32 sha256(const uint8_t* data, size_t len);
inline Digest32 sha256(const Bytes& b) { return sha256(b.data(), b.size()); }

/// SHA-256 over a domain tag followed by length-prefixed parts.
/// Keeps distinct uses of the hash mutually independent.
Digest32 sha256_tagged(std::string_view tag, std::initializer_list<Bytes> parts);

inline Bytes digest_bytes(const Digest32& d) { return Bytes(d.begin(), d.end()); }

} // namespace anonyabe

#endif
