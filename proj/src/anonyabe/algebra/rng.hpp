#ifndef ANONYABE_ALGEBRA_RNG_HPP
#define ANONYABE_ALGEBRA_RNG_HPP

#include <cstdint>
#include <string_view>

#include "anonyabe/algebra/bytes.hpp"
#include "anonyabe/algebra/digest.hpp"

namespace anonyabe {

/// Deterministic byte stream: SHA-256 in counter mode over a 32-byte key.
/// Every random choice in the system draws from one of these, so a fixed
/// seed reproduces a whole run bit for bit. Single-owner: movable only.
class RngState {
public:
    explicit RngState(uint64_t seed);
    explicit RngState(const Bytes& seed);
    static RngState from_entropy();

    RngState(const RngState&) = delete;
    RngState& operator=(const RngState&) = delete;
    RngState(RngState&&) = default;
    RngState& operator=(RngState&&) = default;

    void fill(uint8_t* out, size_t n);
    Bytes bytes(size_t n);
    uint64_t next_u64();
    /// v uniform in [0, bound), bound > 0.
    uint64_t below(uint64_t bound);

    /// Independent child stream keyed by label; does not advance this stream.
    RngState fork(std::string_view label) const;
    RngState fork(uint64_t label) const;

private:
    struct Raw {};
    RngState(Raw, const Digest32& key);

    Digest32 key_;
    uint64_t counter_ = 0;
    Digest32 block_{};
    size_t avail_ = 0;

    void refill();
};

} // namespace anonyabe

#endif
