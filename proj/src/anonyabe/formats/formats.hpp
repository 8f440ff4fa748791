#ifndef ANONYABE_FORMATS_FORMATS_HPP
#define ANONYABE_FORMATS_FORMATS_HPP

#include <set>
#include <string>

#include "anonyabe/scheme/keys.hpp"

namespace anonyabe {

/// Binary file formats.  Every format opens with a four-byte magic, a u16
/// version and the one-byte params preset id; all variable fields are
/// length-prefixed and byte order is fixed, so files round-trip bit-exactly.
///
///   ANYP  public key            g, Y
///   ANYK  keyring               role 1: master share (+ partition cell, N)
///                               role 2: private key
///   ANYC  ciphertext            trees, E_0, root commitments, leaf table,
///                               payload header; interchange form appends
///                               the sealed payload as the final field
///   ANYV  verification set      file id, E_1..E_{r-1}

inline constexpr uint16_t kFormatVersion = 1;

Bytes serialize_public_key(const PublicKey& pk);
PublicKey parse_public_key(const Bytes& in);

/// An authority's at-rest keyring: its master share plus what it needs to
/// serve requests later (its partition cell and the authority count).
struct MasterKeyring {
    MasterKeyShare share;
    std::set<std::string> categories;
    uint32_t N = 0;
};

Bytes serialize_master_keyring(const MasterKeyring& ring, const ParamsPtr& params);
MasterKeyring parse_master_keyring(const Bytes& in);

Bytes serialize_private_keyring(const PrivateKey& sk, const ParamsPtr& params);
PrivateKey parse_private_keyring(const Bytes& in);

/// Header-only form: everything except the sealed payload bytes (the
/// server stores those separately).  The interchange (.anyc) form is the
/// header with lp(sealed payload) appended, so splitting and rejoining are
/// plain byte operations.
Bytes serialize_ciphertext_header(const Ciphertext& ct);
Bytes serialize_ciphertext(const Ciphertext& ct);
/// Parses the header-only form; `ct.payload.sealed` comes back empty.
Ciphertext parse_ciphertext_header(const Bytes& in);
Ciphertext parse_ciphertext(const Bytes& in);

Bytes serialize_verification(const VerificationSet& vr, const ParamsPtr& params);
VerificationSet parse_verification(const Bytes& in);

} // namespace anonyabe

#endif
