#include "anonyabe/algebra/digest.hpp"

#include <openssl/sha.h>

namespace anonyabe {

Digest32 sha256(const uint8_t* data, size_t len) {
    Digest32 out;
    SHA256(data, len, out.data());
    return out;
}

Digest32 sha256_tagged(std::string_view tag, std::initializer_list<Bytes> parts) {
    ByteWriter w;
    w.lp_string(tag);
    for (const auto& p : parts) w.lp_bytes(p);
    return sha256(w.bytes());
}

} // namespace anonyabe
