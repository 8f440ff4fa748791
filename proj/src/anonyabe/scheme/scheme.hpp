#ifndef ANONYABE_SCHEME_SCHEME_HPP
#define ANONYABE_SCHEME_SCHEME_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anonyabe/algebra/rng.hpp"
#include "anonyabe/scheme/aead.hpp"
#include "anonyabe/scheme/keys.hpp"

namespace anonyabe {

/// Y = product of the authorities' Y_k = e(g,g)^{v_k} shares.
PublicKey combine_public(const std::vector<GTElement>& Y_shares, const ParamsPtr& params,
                         const G0Element& g);

/// One authority's setup blinder x_k = (prod sent) / (prod received), i.e.
/// g^{sum_j s_kj - sum_j s_jk}.  Both lists hold one element per peer.
G0Element compute_blinder(const std::vector<G0Element>& sent,
                          const std::vector<G0Element>& received);

/// (H(att)^{r_i}, g^{r_i}) for a fresh nonzero r_i.
std::pair<G0Element, G0Element> keygen_attribute_part(const std::string& attribute,
                                                      const Scalar& r_i);

/// Merges the authorities' key-generation output into SK_u: D is the
/// product of the blinded contributions x_k * g^{v_k} * g^{d_k} (the x_k
/// cancel), and every attribute part picks up the factor prod_k g^{d_k}.
PrivateKey keygen_merge(const std::vector<G0Element>& blinded_contribs,
                        const std::vector<G0Element>& d_commitments,
                        const std::map<std::string, AttributePart>& attr_parts);

struct EncryptResult {
    Ciphertext ct;
    VerificationSet vr;
    SessionSecrets secrets;
};

/// Encrypts `payload` under one privilege tree per operation.  Draws a
/// uniform K_e in G_T, Shamir-splits a fresh s_p over every tree, and
/// seals the payload under kdf(K_e).  trees[0] must be the read
/// privilege.  The file id is sixteen rng bytes in hex.
EncryptResult encrypt(const PublicKey& pk, const Bytes& payload,
                      const std::vector<PrivilegeTree>& trees, RngState& rng);

/// Recursive DecryptNode: at a satisfied leaf e(D_i, C_x)/e(D_i', C_x')
/// = e(g,g)^{(sum d_k) q_x(0)}, at a gate the Lagrange combination of the
/// lexicographically smallest satisfying child subset; nullopt where the
/// key falls short.  `node` is a leaf-path-style address ("" = root).
std::optional<GTElement> decrypt_node(const Ciphertext& ct, const PrivateKey& sk,
                                      uint32_t tree_index, const std::string& node = "");

/// Recovers Y^{s_p} through privilege p's tree: B/A with A = DecryptNode
/// at the root and B = e(C_hat_p, D).  Shared by decryption (p = 0) and
/// verification (p >= 1).  Fails with policy-not-satisfied.
GTElement recover_y_power(const PrivateKey& sk, const Ciphertext& ct, uint32_t tree_index);

/// Full read path: K_e = E_0 / Y^{s_0}, then authenticated decryption.
Bytes decrypt_read(const PublicKey& pk, const PrivateKey& sk, const Ciphertext& ct);

/// Y^{s_p} for a verification privilege p in [1, r).
GTElement derive_verification(const PublicKey& pk, const PrivateKey& sk, const Ciphertext& ct,
                              uint32_t p);

/// Decrypt-then-encrypt under new trees with a fresh K_e; requires sk to
/// satisfy both the read tree and tree `reenc_privilege_index` of the old
/// ciphertext.  The file id carries over.
EncryptResult reencrypt(const PublicKey& pk, const PrivateKey& sk, const Ciphertext& ct,
                        const std::vector<PrivilegeTree>& new_trees,
                        uint32_t reenc_privilege_index, RngState& rng);

/// 32-byte symmetric key from the canonical K_e serialization.
AeadKey kdf(const GTElement& K_e);

} // namespace anonyabe

#endif
