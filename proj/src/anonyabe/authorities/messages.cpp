#include "anonyabe/authorities/messages.hpp"

#include <algorithm>

#include "anonyabe/errors.hpp"

namespace anonyabe {

const char* tag_name(MsgTag tag) {
    switch (tag) {
    case MsgTag::yshare: return "YSHARE";
    case MsgTag::blind: return "BLIND";
    case MsgTag::contrib: return "CONTRIB";
    case MsgTag::dcommit: return "DCOMMIT";
    case MsgTag::attrpart: return "ATTRPART";
    case MsgTag::merged: return "MERGED";
    }
    return "?";
}

Bytes Message::encode() const {
    ByteWriter w;
    w.u8(static_cast<uint8_t>(tag));
    w.u32(static_cast<uint32_t>(from));
    w.u32(static_cast<uint32_t>(to));
    w.u32(phase);
    w.lp_bytes(payload);
    return w.take();
}

Message Message::decode(const Bytes& frame) {
    ByteReader r(frame);
    Message m;
    const uint8_t tag = r.u8();
    if (tag < 1 || tag > 6) fail(Errc::format, "unknown message tag");
    m.tag = static_cast<MsgTag>(tag);
    m.from = static_cast<int32_t>(r.u32());
    m.to = static_cast<int32_t>(r.u32());
    m.phase = r.u32();
    m.payload = r.lp_bytes();
    r.expect_end("message");
    return m;
}

namespace {

std::string addr_name(int32_t a) {
    if (a == kUserAddr) return "user";
    if (a == kBroadcastAddr) return "all";
    return "A" + std::to_string(a);
}

} // namespace

std::string to_log_line(const Message& m) {
    const Digest32 d = sha256(m.payload);
    return std::string(tag_name(m.tag)) + " " + addr_name(m.from) + "->" + addr_name(m.to) +
           " phase=" + std::to_string(m.phase) + " payload=" +
           hex_encode(Bytes(d.begin(), d.begin() + 8));
}

void SetupTranscript::record(const Message& m) {
    entries.push_back(TranscriptEntry{m.tag, m.from, m.to, m.phase, sha256(m.payload)});
}

size_t SetupTranscript::count_tag(MsgTag tag) const {
    return static_cast<size_t>(
        std::count_if(entries.begin(), entries.end(),
                      [&](const TranscriptEntry& e) { return e.tag == tag; }));
}

std::string SetupTranscript::dump() const {
    std::string out;
    for (const TranscriptEntry& e : entries) {
        out += std::string(tag_name(e.tag)) + " " + addr_name(e.sender) + "->" +
               addr_name(e.receiver) + " phase=" + std::to_string(e.phase) + " payload=" +
               hex_encode(Bytes(e.payload_digest.begin(), e.payload_digest.begin() + 8)) + "\n";
    }
    return out;
}

} // namespace anonyabe
