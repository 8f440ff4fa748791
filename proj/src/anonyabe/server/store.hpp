#ifndef ANONYABE_SERVER_STORE_HPP
#define ANONYABE_SERVER_STORE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "anonyabe/algebra/bytes.hpp"
#include "anonyabe/algebra/group.hpp"
#include "anonyabe/algebra/rng.hpp"

namespace anonyabe {

/// Metadata kept alongside a stored file. `seq` is the store-wide sequence
/// number of the mutation that produced the current version; any open
/// challenge minted against an older sequence number is expired.
struct StoredMeta {
    std::string file_id;
    uint64_t size = 0;        ///< sealed payload bytes
    uint32_t privileges = 0;  ///< privilege count r
    uint64_t seq = 0;
};

/// Single-use proof-of-privilege challenge handed to a client. The client
/// answers with privilege_digest(Y^{s_p}, nonce); the server compares that
/// against the digest it computes from its own copy of E_p.
struct Challenge {
    Bytes nonce;  ///< 16 random bytes
    std::string file_id;
    uint32_t privilege = 0;
    uint64_t expiry_seq = 0;
};

/// A client's answer to a challenge, naming the operation target.
struct OperationRequest {
    std::string file_id;
    uint32_t privilege = 0;
    Bytes nonce;
    Bytes digest;
};

enum class Outcome {
    deleted,
    replaced,
};

/// The digest both sides compute: SHA-256 over the canonical encoding of the
/// privilege value followed by the challenge nonce.
Bytes privilege_digest(const GTElement& value, const Bytes& nonce);

/// Directory-backed store for (ciphertext, verification set, payload)
/// records, plus the challenge table that gates destructive operations.
///
/// On disk:
///   <root>/index             one "file_id seq" line per record
///   <root>/audit.log         append-only operation log
///   <root>/files/<id>/       ct.bin, vr.bin, payload.bin, meta
///
/// `ct.bin` holds the ciphertext header (everything but the sealed payload),
/// `payload.bin` the sealed bytes, so fetch can reassemble the interchange
/// blob by concatenation. `vr.bin` never leaves the store: reads are open to
/// everyone, but knowledge of the E_p values would let anyone pass the gate.
///
/// Mutations on the store are serialized; fetches may run concurrently.
class CloudStore {
public:
    explicit CloudStore(std::filesystem::path root, RngState rng = RngState::from_entropy());

    /// Validates both blobs, checks they agree on file id, privilege count
    /// and preset, and writes a durable record. Storing the exact same
    /// content again is a no-op; the same id with different content is a
    /// conflict.
    std::string store(const Bytes& ct_blob, const Bytes& vr_blob);

    /// Returns the interchange ciphertext blob (header plus sealed
    /// payload), byte-identical to what was stored. Never includes the
    /// verification set.
    Bytes fetch(const std::string& file_id) const;

    StoredMeta describe(const std::string& file_id) const;
    std::vector<std::string> list() const;

    /// Mints a fresh single-use nonce for operation privilege p on the
    /// given file. p = 0 (read) is ungated and rejected here.
    Challenge open_challenge(const std::string& file_id, uint32_t privilege);

    /// True iff the request's digest matches the server-side digest for the
    /// named challenge. The challenge is spent either way: a failed attempt
    /// erases it, a successful one marks it verified for the follow-up
    /// execute_operation. Unknown or already-answered nonces return false.
    bool verify_privilege(const OperationRequest& request);

    /// Performs the operation a verified challenge authorized: with both
    /// replacement blobs it swaps ciphertext, payload and verification set;
    /// with neither it deletes the record. Requires a prior successful
    /// verify_privilege on the same nonce.
    Outcome execute_operation(const OperationRequest& request,
                              const std::optional<Bytes>& new_ct = std::nullopt,
                              const std::optional<Bytes>& new_vr = std::nullopt);

private:
    struct PendingChallenge {
        Challenge challenge;
        bool verified = false;
    };

    std::filesystem::path root_;
    mutable std::shared_mutex mutex_;
    RngState rng_;
    uint64_t seq_ = 0;
    std::map<std::string, uint64_t> index_;              // file_id -> seq
    std::map<std::string, PendingChallenge> challenges_; // hex nonce -> state

    std::filesystem::path record_dir(const std::string& file_id) const;
    StoredMeta read_meta_locked(const std::string& file_id) const;
    void write_record_locked(const std::string& file_id, const Bytes& header,
                             const Bytes& sealed, const Bytes& vr_blob, uint64_t seq);
    void write_index_locked();
    void audit_locked(const std::string& line);
    void load_index();
};

} // namespace anonyabe

#endif
