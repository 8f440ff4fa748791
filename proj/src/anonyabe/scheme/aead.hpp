#ifndef ANONYABE_SCHEME_AEAD_HPP
#define ANONYABE_SCHEME_AEAD_HPP

#include <array>
#include <cstdint>

#include "anonyabe/algebra/bytes.hpp"

namespace anonyabe {

/// AES-256-GCM.  Sealed form is ciphertext followed by the 16-byte tag;
/// the nonce is 12 bytes and supplied by the caller so encryption stays
/// deterministic under a seeded rng.
inline constexpr size_t kAeadNonceBytes = 12;
inline constexpr size_t kAeadTagBytes = 16;

using AeadKey = std::array<uint8_t, 32>;

Bytes aead_seal(const AeadKey& key, const Bytes& nonce, const Bytes& aad, const Bytes& plaintext);

/// Throws Errc::verification_failed when the tag does not check out.
Bytes aead_open(const AeadKey& key, const Bytes& nonce, const Bytes& aad, const Bytes& sealed);

} // namespace anonyabe

#endif
