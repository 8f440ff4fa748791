#ifndef ANONYABE_AUTHORITIES_MESSAGES_HPP
#define ANONYABE_AUTHORITIES_MESSAGES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "anonyabe/algebra/bytes.hpp"
#include "anonyabe/algebra/digest.hpp"

namespace anonyabe {

/// Wire tags for the authority protocol.  Setup uses YSHARE and BLIND;
/// key issuance uses CONTRIB (to the merging authority), DCOMMIT and
/// ATTRPART (to the user), and MERGED (merger to user).
enum class MsgTag : uint8_t {
    yshare = 1,
    blind = 2,
    contrib = 3,
    dcommit = 4,
    attrpart = 5,
    merged = 6,
};

const char* tag_name(MsgTag tag);

/// Addresses: authority indices are >= 0, kUserAddr is the requesting
/// user, kBroadcastAddr fans out to every other authority.
inline constexpr int32_t kUserAddr = -1;
inline constexpr int32_t kBroadcastAddr = -2;

/// One protocol message.  The payload is a canonical serialization of
/// algebra values (plus the attribute name for ATTRPART); the same frame
/// a TCP transport would carry.
struct Message {
    MsgTag tag;
    int32_t from = 0;
    int32_t to = 0;
    uint32_t phase = 0;
    Bytes payload;

    Bytes encode() const;
    static Message decode(const Bytes& frame);
};

/// "<tag> <from>-><to> phase=<n> payload=<sha256 prefix>" — the audit form.
std::string to_log_line(const Message& m);

/// Ordered log of protocol messages as (sender, receiver, phase, digest)
/// evidence; replaying a setup with the same seed reproduces it bit for
/// bit.
struct TranscriptEntry {
    MsgTag tag;
    int32_t sender = 0;
    int32_t receiver = 0;
    uint32_t phase = 0;
    Digest32 payload_digest{};

    bool operator==(const TranscriptEntry& o) const = default;
};

struct SetupTranscript {
    std::vector<TranscriptEntry> entries;

    void record(const Message& m);
    size_t count_tag(MsgTag tag) const;
    std::string dump() const;

    bool operator==(const SetupTranscript& o) const = default;
};

} // namespace anonyabe

#endif
