#include "anonyabe/algebra/rng.hpp"

#include <cstring>
#include <random>

namespace anonyabe {

namespace {

Digest32 derive_key(std::string_view domain, const uint8_t* seed, size_t n) {
    ByteWriter w;
    w.lp_string(std::string(domain));
    w.u32(static_cast<uint32_t>(n));
    w.raw(seed, n);
    Bytes buf = w.take();
    return sha256(buf.data(), buf.size());
}

} // namespace

RngState::RngState(Raw, const Digest32& key) : key_(key) {}

RngState::RngState(uint64_t seed) {
    uint8_t buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<uint8_t>(seed >> (56 - 8 * i));
    key_ = derive_key("rng.seed.u64", buf, sizeof(buf));
}

RngState::RngState(const Bytes& seed) {
    key_ = derive_key("rng.seed.bytes", seed.data(), seed.size());
}

RngState RngState::from_entropy() {
    std::random_device rd;
    uint8_t buf[32];
    for (size_t i = 0; i < sizeof(buf); i += 4) {
        uint32_t v = rd();
        std::memcpy(buf + i, &v, 4);
    }
    return RngState(Raw{}, derive_key("rng.seed.entropy", buf, sizeof(buf)));
}

void RngState::refill() {
    ByteWriter w;
    w.raw(key_.data(), key_.size());
    w.u64(counter_++);
    Bytes buf = w.take();
    block_ = sha256(buf.data(), buf.size());
    avail_ = block_.size();
}

void RngState::fill(uint8_t* out, size_t n) {
    while (n > 0) {
        if (avail_ == 0) refill();
        size_t take = std::min(n, avail_);
        std::memcpy(out, block_.data() + (block_.size() - avail_), take);
        out += take;
        n -= take;
        avail_ -= take;
    }
}

Bytes RngState::bytes(size_t n) {
    Bytes out(n);
    fill(out.data(), n);
    return out;
}

uint64_t RngState::next_u64() {
    uint8_t buf[8];
    fill(buf, sizeof(buf));
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | buf[i];
    return v;
}

uint64_t RngState::below(uint64_t bound) {
    if (bound == 0) fail(Errc::invalid_argument, "RngState::below: bound must be positive");
    // Rejection sampling over the largest multiple of bound that fits.
    uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
        uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

RngState RngState::fork(std::string_view label) const {
    ByteWriter w;
    w.raw(key_.data(), key_.size());
    w.lp_string(std::string(label));
    Bytes buf = w.take();
    return RngState(Raw{}, derive_key("rng.fork", buf.data(), buf.size()));
}

RngState RngState::fork(uint64_t label) const {
    ByteWriter w;
    w.raw(key_.data(), key_.size());
    w.u64(label);
    Bytes buf = w.take();
    return RngState(Raw{}, derive_key("rng.fork.u64", buf.data(), buf.size()));
}

} // namespace anonyabe
