#ifndef ANONYABE_AUTHORITIES_AUTHORITY_HPP
#define ANONYABE_AUTHORITIES_AUTHORITY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anonyabe/authorities/messages.hpp"
#include "anonyabe/scheme/scheme.hpp"

namespace anonyabe {

/// Static description of the authority network: N parties, cluster size C
/// for the reduced-exchange setup (C = N means one cluster, i.e. no
/// clustering), and the disjoint category partition mapping each attribute
/// category to its owning authority.
struct AuthorityConfig {
    uint32_t N = 0;
    uint32_t cluster_size = 0;
    std::map<uint32_t, std::set<std::string>> attribute_partition;
    uint64_t delivery_seed = 0; // permutes in-phase message delivery; 0 = in order

    /// Authority owning `category`, or nullopt when nobody does.
    std::optional<uint32_t> owner_of(const std::string& category) const;
};

/// The stock eight-category partition, dealt round-robin across N
/// authorities.
AuthorityConfig standard_config(uint32_t N, uint32_t cluster_size);

/// Contiguous cluster blocks of size C; the last block absorbs the
/// remainder so no cluster is ever smaller than C.  Returned as one
/// (first, last] index range per cluster.
std::vector<std::pair<uint32_t, uint32_t>> cluster_ranges(uint32_t N, uint32_t cluster_size);

/// One simulated authority.  The master share appears once setup
/// completes and is immutable afterwards; mailboxes keep every frame the
/// authority sent or received, for audits.
struct AuthorityState {
    uint32_t index = 0;
    uint32_t cluster = 0;
    std::set<std::string> categories;
    std::optional<MasterKeyShare> mk;
    std::vector<Message> inbox;
    std::vector<Message> outbox;
    bool compromised = false;
};

struct SetupResult {
    PublicKey pk;
    std::vector<AuthorityState> states;
    SetupTranscript transcript;
};

/// Runs the three-phase setup: Y_k broadcasts, pairwise blinding-share
/// exchange within clusters, then local x_k and master-share assembly.
/// Within every cluster the blinders multiply to the identity.
SetupResult run_setup(const ParamsPtr& params, const AuthorityConfig& config, RngState& rng);

/// A pseudonymous issuance request.  The global id stays client-side:
/// only the nym and the per-authority attribute slices ever reach an
/// authority.
struct KeyRequest {
    std::string nym;
    std::string gid;
    std::map<uint32_t, AttributeSet> attributes;
};

/// Splits "Category:Value" attributes across the owning authorities and
/// mints a fresh 128-bit nym.  Rejects categories nobody owns and
/// malformed attribute names.
KeyRequest make_request(const AuthorityConfig& config, const std::string& gid,
                        const AttributeSet& attrs, RngState& rng);

/// Two-phase key issuance over the message fabric: every authority sends
/// its blinded contribution to the lowest-index merger and its d-commitment
/// and attribute parts straight to the user; the merger folds D; the user
/// aggregates the private key.  Compromised authorities still participate.
/// `escrow`, when given, captures the session's d_k and r_i for white-box
/// tests.
PrivateKey issue_key(std::vector<AuthorityState>& states, const KeyRequest& request,
                     RngState& rng, SessionSecrets* escrow = nullptr);

/// What an adversary holding `subset`'s master shares learns.
struct CompromiseReport {
    bool blinders_cancel = false;  // product of the revealed x_k is the identity
    bool master_assembled = false; // g^{sum of all v_k} reconstructible
    G0Element partial_master;      // g^{sum of revealed v_k}
    std::set<std::string> mintable_categories;
    // blinders of uncompromised authorities that cancellation inside a
    // cluster gives away (all other members of their cluster revealed)
    std::map<uint32_t, G0Element> recovered_blinders;
};

CompromiseReport simulate_compromise(const std::vector<AuthorityState>& states,
                                     const std::set<uint32_t>& subset);

} // namespace anonyabe

#endif
