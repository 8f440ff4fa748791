#include "anonyabe/formats/formats.hpp"

#include "anonyabe/errors.hpp"
#include "anonyabe/scheme/aead.hpp"

namespace anonyabe {

namespace {

void write_header(ByteWriter& w, std::string_view magic, const ParamsPtr& params) {
    const Bytes m = to_bytes(magic);
    w.raw(m);
    w.u16(kFormatVersion);
    w.u8(params->id());
}

ParamsPtr read_header(ByteReader& r, std::string_view magic, std::string_view what) {
    r.expect_magic(magic, what);
    const uint16_t version = r.u16();
    if (version != kFormatVersion)
        fail(Errc::format, std::string(what) + ": unsupported version " + std::to_string(version));
    return PairingParams::by_id(r.u8());
}

void write_g0(ByteWriter& w, const G0Element& x) { w.lp_bytes(x.to_bytes()); }
G0Element read_g0(ByteReader& r, const ParamsPtr& pp) {
    return G0Element::from_bytes(pp, r.lp_bytes());
}

void write_gt(ByteWriter& w, const GTElement& x) { w.lp_bytes(x.to_bytes()); }
GTElement read_gt(ByteReader& r, const ParamsPtr& pp) {
    return GTElement::from_bytes(pp, r.lp_bytes());
}

void write_ct_body(ByteWriter& w, const Ciphertext& ct) {
    if (ct.trees.empty()) fail(Errc::invalid_argument, "ciphertext without privilege trees");
    if (ct.trees.size() != ct.root_commitments.size() ||
        ct.trees.size() != ct.leaf_components.size())
        fail(Errc::invalid_argument, "ciphertext sections disagree about the privilege count");
    write_header(w, "ANYC", ct.params());
    w.lp_string(ct.file_id);
    w.varint(ct.trees.size());
    for (const PrivilegeTree& tree : ct.trees) serialize_tree(w, tree);
    write_gt(w, ct.E_0);
    for (const G0Element& commitment : ct.root_commitments) write_g0(w, commitment);
    for (const auto& leaf_map : ct.leaf_components) {
        w.varint(leaf_map.size());
        for (const auto& [path, pair] : leaf_map) {
            w.lp_string(path);
            write_g0(w, pair.first);
            write_g0(w, pair.second);
        }
    }
    w.u8(ct.payload.cipher_id);
    w.lp_bytes(ct.payload.nonce);
}

Ciphertext read_ct_body(ByteReader& r) {
    Ciphertext ct;
    const ParamsPtr pp = read_header(r, "ANYC", "ciphertext");
    ct.file_id = r.lp_string();
    const uint64_t count = r.varint();
    if (count == 0) fail(Errc::format, "ciphertext without privilege trees");
    if (count > 0xffff) fail(Errc::format, "ciphertext privilege count out of range");
    for (uint64_t p = 0; p < count; ++p) {
        PrivilegeTree tree = deserialize_tree(r);
        if (tree.privilege_index != p)
            fail(Errc::format, "privilege tree order does not match its indices");
        ct.trees.push_back(std::move(tree));
    }
    ct.E_0 = read_gt(r, pp);
    for (uint64_t p = 0; p < count; ++p) ct.root_commitments.push_back(read_g0(r, pp));
    for (uint64_t p = 0; p < count; ++p) {
        const uint64_t leaves = r.varint();
        if (leaves != tree_leaf_count(ct.trees[p]))
            fail(Errc::format, "leaf component count does not match the tree");
        std::map<std::string, std::pair<G0Element, G0Element>> leaf_map;
        for (uint64_t i = 0; i < leaves; ++i) {
            std::string path = r.lp_string();
            G0Element C = read_g0(r, pp);
            G0Element C_prime = read_g0(r, pp);
            if (!leaf_map.emplace(std::move(path), std::make_pair(C, C_prime)).second)
                fail(Errc::format, "duplicate leaf component");
        }
        // every leaf of the tree must have exactly one component pair
        for_each_leaf(ct.trees[p], [&](const std::string& path, const std::string&) {
            if (!leaf_map.count(path))
                fail(Errc::format, "missing leaf component at " + (path.empty() ? "root" : path));
        });
        ct.leaf_components.push_back(std::move(leaf_map));
    }
    ct.payload.cipher_id = r.u8();
    if (ct.payload.cipher_id != 1)
        fail(Errc::format,
             "unknown payload cipher " + std::to_string(ct.payload.cipher_id));
    ct.payload.nonce = r.lp_bytes();
    if (ct.payload.nonce.size() != kAeadNonceBytes)
        fail(Errc::format, "payload nonce must be 12 bytes");
    return ct;
}

} // namespace

Bytes serialize_public_key(const PublicKey& pk) {
    ByteWriter w;
    write_header(w, "ANYP", pk.params);
    write_g0(w, pk.g);
    write_gt(w, pk.Y);
    return w.take();
}

PublicKey parse_public_key(const Bytes& in) {
    ByteReader r(in);
    PublicKey pk;
    pk.params = read_header(r, "ANYP", "public key");
    pk.g = read_g0(r, pk.params);
    pk.Y = read_gt(r, pk.params);
    r.expect_end("public key");
    return pk;
}

Bytes serialize_master_keyring(const MasterKeyring& ring, const ParamsPtr& params) {
    ByteWriter w;
    write_header(w, "ANYK", params);
    w.u8(1); // role: authority
    w.u32(ring.share.authority_index);
    w.u32(ring.N);
    w.lp_bytes(ring.share.v.to_bytes());
    write_g0(w, ring.share.x);
    w.varint(ring.categories.size());
    for (const std::string& cat : ring.categories) w.lp_string(cat);
    return w.take();
}

MasterKeyring parse_master_keyring(const Bytes& in) {
    ByteReader r(in);
    const ParamsPtr pp = read_header(r, "ANYK", "keyring");
    if (r.u8() != 1) fail(Errc::format, "keyring does not hold a master share");
    MasterKeyring ring;
    ring.share.authority_index = r.u32();
    ring.N = r.u32();
    if (ring.N == 0 || ring.share.authority_index >= ring.N)
        fail(Errc::format, "keyring authority index out of range");
    ring.share.v = Scalar::from_bytes(pp, r.lp_bytes());
    ring.share.x = read_g0(r, pp);
    const uint64_t cats = r.varint();
    for (uint64_t i = 0; i < cats; ++i) ring.categories.insert(r.lp_string());
    r.expect_end("keyring");
    return ring;
}

Bytes serialize_private_keyring(const PrivateKey& sk, const ParamsPtr& params) {
    if (sk.components.empty())
        fail(Errc::invalid_argument, "a private key needs at least one attribute");
    ByteWriter w;
    write_header(w, "ANYK", params);
    w.u8(2); // role: user
    write_g0(w, sk.D);
    w.varint(sk.components.size());
    for (const auto& [att, part] : sk.components) {
        w.lp_string(att);
        write_g0(w, part.D_i);
        write_g0(w, part.D_i_prime);
    }
    return w.take();
}

PrivateKey parse_private_keyring(const Bytes& in) {
    ByteReader r(in);
    const ParamsPtr pp = read_header(r, "ANYK", "keyring");
    if (r.u8() != 2) fail(Errc::format, "keyring does not hold a private key");
    PrivateKey sk;
    sk.D = read_g0(r, pp);
    const uint64_t count = r.varint();
    if (count == 0) fail(Errc::format, "private key without attributes");
    for (uint64_t i = 0; i < count; ++i) {
        std::string att = r.lp_string();
        if (att.empty()) fail(Errc::format, "private key with an empty attribute");
        G0Element D_i = read_g0(r, pp);
        G0Element D_i_prime = read_g0(r, pp);
        if (!sk.components.emplace(std::move(att), AttributePart{D_i, D_i_prime}).second)
            fail(Errc::format, "private key repeats an attribute");
    }
    r.expect_end("keyring");
    return sk;
}

Bytes serialize_ciphertext_header(const Ciphertext& ct) {
    ByteWriter w;
    write_ct_body(w, ct);
    return w.take();
}

Bytes serialize_ciphertext(const Ciphertext& ct) {
    ByteWriter w;
    write_ct_body(w, ct);
    w.lp_bytes(ct.payload.sealed);
    return w.take();
}

Ciphertext parse_ciphertext_header(const Bytes& in) {
    ByteReader r(in);
    Ciphertext ct = read_ct_body(r);
    r.expect_end("ciphertext");
    return ct;
}

Ciphertext parse_ciphertext(const Bytes& in) {
    ByteReader r(in);
    Ciphertext ct = read_ct_body(r);
    ct.payload.sealed = r.lp_bytes();
    if (ct.payload.sealed.size() < kAeadTagBytes)
        fail(Errc::format, "sealed payload shorter than its tag");
    r.expect_end("ciphertext");
    return ct;
}

Bytes serialize_verification(const VerificationSet& vr, const ParamsPtr& params) {
    ByteWriter w;
    write_header(w, "ANYV", params);
    w.lp_string(vr.file_id);
    w.varint(vr.entries.size());
    for (const GTElement& e : vr.entries) write_gt(w, e);
    return w.take();
}

VerificationSet parse_verification(const Bytes& in) {
    ByteReader r(in);
    const ParamsPtr pp = read_header(r, "ANYV", "verification set");
    VerificationSet vr;
    vr.file_id = r.lp_string();
    const uint64_t count = r.varint();
    if (count > 0xffff) fail(Errc::format, "verification set entry count out of range");
    for (uint64_t i = 0; i < count; ++i) vr.entries.push_back(read_gt(r, pp));
    r.expect_end("verification set");
    return vr;
}

} // namespace anonyabe
