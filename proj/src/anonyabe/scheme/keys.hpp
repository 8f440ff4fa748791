#ifndef ANONYABE_SCHEME_KEYS_HPP
#define ANONYABE_SCHEME_KEYS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anonyabe/algebra/bytes.hpp"
#include "anonyabe/algebra/group.hpp"
#include "anonyabe/privtree/tree.hpp"

namespace anonyabe {

/// System-wide public key: PK = {G0, g, Y} with Y = e(g,g)^{sum of the
/// authorities' v_k}.
struct PublicKey {
    ParamsPtr params;
    G0Element g;
    GTElement Y;
};

/// One authority's master key share MK_k = {v_k, x_k}.  Across a complete
/// set the blinders multiply to the identity: prod_k x_k = 1.
struct MasterKeyShare {
    uint32_t authority_index = 0;
    Scalar v;
    G0Element x;
};

/// Per-attribute private key components D_i = g^{sum d_k} * H(att)^{r_i}
/// and D_i' = g^{r_i}.
struct AttributePart {
    G0Element D_i;
    G0Element D_i_prime;

    bool operator==(const AttributePart& o) const = default;
};

/// A user's private key SK_u = {D, {(D_i, D_i')}}.  D = g^{sum v_k + sum
/// d_k}; the d_k and r_i behind the components are fresh per issuance.
struct PrivateKey {
    G0Element D;
    std::map<std::string, AttributePart> components;

    AttributeSet attributes() const {
        AttributeSet out;
        for (const auto& [att, part] : components) out.insert(att);
        return out;
    }
};

/// Symmetric payload container: cipher 1 is AES-256-GCM; `sealed` is
/// ciphertext followed by the tag, bound to the file id as AAD.
struct PayloadBox {
    uint8_t cipher_id = 1;
    Bytes nonce;
    Bytes sealed;

    bool operator==(const PayloadBox& o) const = default;
};

/// CT = <{T_p}, E_0 = K_e * Y^{s_0}, {C_hat_p = g^{s_p}}, per leaf
/// {C_i = g^{q_i(0)}, C_i' = H(att)^{q_i(0)}}, payload>.  Privilege 0 is
/// the read privilege; leaf components are keyed by leaf path per tree.
struct Ciphertext {
    std::string file_id;
    std::vector<PrivilegeTree> trees;
    GTElement E_0;
    std::vector<G0Element> root_commitments;
    std::vector<std::map<std::string, std::pair<G0Element, G0Element>>> leaf_components;
    PayloadBox payload;

    size_t privilege_count() const { return trees.size(); }
    const ParamsPtr& params() const { return E_0.params(); }
};

/// VR = <{E_p = Y^{s_p}}> for p = 1..r-1, held by the server alone and
/// never shipped to users.
struct VerificationSet {
    std::string file_id;
    std::vector<GTElement> entries; // entries[p-1] belongs to privilege p

    size_t privilege_count() const { return entries.size() + 1; }
};

/// White-box escrow of session randomness, for tests only: keygen fills
/// d_k and r_i, encrypt fills s_p and K_e.  Never serialized anywhere.
struct SessionSecrets {
    std::vector<Scalar> d;            // per contributing authority
    std::map<std::string, Scalar> r;  // per attribute
    std::vector<Scalar> s;            // per privilege tree
    std::optional<GTElement> key;     // K_e
};

} // namespace anonyabe

#endif
