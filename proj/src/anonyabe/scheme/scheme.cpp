#include "anonyabe/scheme/scheme.hpp"

#include <algorithm>

#include "anonyabe/algebra/digest.hpp"
#include "anonyabe/errors.hpp"

namespace anonyabe {

namespace {

void require_same_system(const ParamsPtr& a, const ParamsPtr& b, const char* what) {
    if (a->id() != b->id())
        fail(Errc::invalid_argument, std::string(what) + " uses a different pairing preset");
}

const TreeNode* locate_node(const TreeNode& root, const std::string& path) {
    const TreeNode* at = &root;
    size_t begin = 0;
    while (begin < path.size()) {
        const size_t dot = path.find('.', begin);
        const size_t end = dot == std::string::npos ? path.size() : dot;
        uint64_t index1 = 0;
        for (size_t i = begin; i < end; ++i) {
            if (path[i] < '0' || path[i] > '9') return nullptr;
            index1 = index1 * 10 + static_cast<uint64_t>(path[i] - '0');
            if (index1 > at->children.size()) return nullptr;
        }
        if (index1 == 0 || index1 > at->children.size()) return nullptr;
        at = &at->children[index1 - 1];
        begin = end + (dot == std::string::npos ? 0 : 1);
        if (dot == std::string::npos) break;
    }
    return at;
}

std::optional<GTElement> decrypt_node_at(const Ciphertext& ct, const PrivateKey& sk,
                                         uint32_t tree_index, const TreeNode& node,
                                         const std::string& path) {
    const auto& leaf_map = ct.leaf_components[tree_index];
    if (node.is_leaf()) {
        const auto part = sk.components.find(node.attribute);
        if (part == sk.components.end()) return std::nullopt;
        const auto pair_it = leaf_map.find(path);
        if (pair_it == leaf_map.end())
            fail(Errc::format, "ciphertext missing leaf component " +
                                   (path.empty() ? std::string("\"\"") : path));
        const auto& [C, C_prime] = pair_it->second;
        // e(D_i, C) / e(D_i', C') = e(g,g)^{(sum d_k) q(0)}: the H(att)^{r q}
        // factors cancel across the two pairings.
        return pairing(part->second.D_i, C).div(pairing(part->second.D_i_prime, C_prime));
    }
    // First threshold satisfied children in index order, i.e. the
    // lexicographically smallest satisfying subset.
    std::vector<std::pair<uint64_t, GTElement>> hits;
    for (size_t i = 0; i < node.children.size() && hits.size() < node.threshold; ++i) {
        auto F = decrypt_node_at(ct, sk, tree_index, node.children[i],
                                 child_path(path, static_cast<uint32_t>(i + 1)));
        if (F) hits.emplace_back(i + 1, std::move(*F));
    }
    if (hits.size() < node.threshold) return std::nullopt;

    const ParamsPtr& pp = ct.params();
    std::vector<uint64_t> indices;
    indices.reserve(hits.size());
    for (const auto& [i, F] : hits) indices.push_back(i);
    GTElement out = GTElement::one(pp);
    for (const auto& [i, F] : hits) out = out.mul(F.exp(lagrange_coeff(pp, i, indices)));
    return out;
}

void check_tree_positions(const std::vector<PrivilegeTree>& trees) {
    if (trees.empty()) fail(Errc::invalid_argument, "a ciphertext needs at least one privilege tree");
    if (trees[0].label != "read") fail(Errc::invalid_argument, "privilege 0 must be labeled \"read\"");
    for (size_t p = 0; p < trees.size(); ++p) {
        if (trees[p].privilege_index != p)
            fail(Errc::invalid_argument,
                 "tree at position " + std::to_string(p) + " carries privilege index " +
                     std::to_string(trees[p].privilege_index));
        validate_tree(trees[p]);
    }
}

EncryptResult encrypt_with_id(const PublicKey& pk, const Bytes& payload,
                              const std::vector<PrivilegeTree>& trees, RngState& rng,
                              std::string file_id) {
    check_tree_positions(trees);
    const ParamsPtr& pp = pk.params;

    EncryptResult out;
    out.ct.file_id = file_id;
    out.ct.trees = trees;
    out.vr.file_id = std::move(file_id);

    // K_e uniform in G_T: the group is cyclic of prime order, so a uniform
    // exponent of the generator covers it (zero gives the identity, which
    // is a legal key).
    const GTElement K_e = gt_generator(pp).exp(random_scalar(pp, rng));
    out.secrets.key = K_e;

    std::map<std::string, G0Element> hashed; // H(att) cache across trees
    auto hash_of = [&](const std::string& att) -> const G0Element& {
        auto it = hashed.find(att);
        if (it == hashed.end()) it = hashed.emplace(att, hash_to_group(pp, att)).first;
        return it->second;
    };

    for (const PrivilegeTree& tree : trees) {
        const Scalar s_p = random_scalar(pp, rng);
        out.secrets.s.push_back(s_p);
        out.ct.root_commitments.push_back(pk.g.exp(s_p));

        const ShareMap shares = assign_shares(tree, s_p, rng);
        std::map<std::string, std::pair<G0Element, G0Element>> leaf_map;
        for_each_leaf(tree, [&](const std::string& path, const std::string& att) {
            const Scalar& q0 = shares.shares.at(path);
            leaf_map.emplace(path, std::make_pair(pk.g.exp(q0), hash_of(att).exp(q0)));
        });
        out.ct.leaf_components.push_back(std::move(leaf_map));

        if (tree.privilege_index == 0) {
            out.ct.E_0 = K_e.mul(pk.Y.exp(s_p));
        } else {
            out.vr.entries.push_back(pk.Y.exp(s_p));
        }
    }

    Bytes nonce = rng.bytes(kAeadNonceBytes);
    out.ct.payload.cipher_id = 1;
    out.ct.payload.sealed = aead_seal(kdf(K_e), nonce, to_bytes(out.ct.file_id), payload);
    out.ct.payload.nonce = std::move(nonce);
    return out;
}

Bytes open_payload(const Ciphertext& ct, const GTElement& K_e) {
    if (ct.payload.cipher_id != 1)
        fail(Errc::format, "unknown payload cipher " + std::to_string(ct.payload.cipher_id));
    return aead_open(kdf(K_e), ct.payload.nonce, to_bytes(ct.file_id), ct.payload.sealed);
}

} // namespace

PublicKey combine_public(const std::vector<GTElement>& Y_shares, const ParamsPtr& params,
                         const G0Element& g) {
    if (Y_shares.empty()) fail(Errc::invalid_argument, "no authority shares to combine");
    require_same_system(g.params(), params, "generator");
    GTElement Y = GTElement::one(params);
    for (const GTElement& share : Y_shares) Y = Y.mul(share);
    return PublicKey{params, g, Y};
}

G0Element compute_blinder(const std::vector<G0Element>& sent,
                          const std::vector<G0Element>& received) {
    if (sent.size() != received.size())
        fail(Errc::invalid_argument, "blinder exchange lists differ in length");
    if (sent.empty()) fail(Errc::invalid_argument, "blinder needs at least one peer exchange");
    G0Element acc = sent[0];
    for (size_t i = 1; i < sent.size(); ++i) acc = acc.mul(sent[i]);
    for (const G0Element& r : received) acc = acc.mul(r.inverse());
    return acc;
}

std::pair<G0Element, G0Element> keygen_attribute_part(const std::string& attribute,
                                                      const Scalar& r_i) {
    if (r_i.is_zero()) fail(Errc::invalid_argument, "attribute exponent r_i must be nonzero");
    const ParamsPtr& pp = r_i.params();
    return {hash_to_group(pp, attribute).exp(r_i), G0Element::generator(pp).exp(r_i)};
}

PrivateKey keygen_merge(const std::vector<G0Element>& blinded_contribs,
                        const std::vector<G0Element>& d_commitments,
                        const std::map<std::string, AttributePart>& attr_parts) {
    if (blinded_contribs.empty()) fail(Errc::invalid_argument, "no key-generation contributions");
    if (blinded_contribs.size() != d_commitments.size())
        fail(Errc::invalid_argument, "missing key-generation contribution");
    if (attr_parts.empty()) fail(Errc::invalid_argument, "a private key needs at least one attribute");

    PrivateKey sk;
    sk.D = blinded_contribs[0];
    for (size_t i = 1; i < blinded_contribs.size(); ++i) sk.D = sk.D.mul(blinded_contribs[i]);

    G0Element g_sum_d = d_commitments[0];
    for (size_t i = 1; i < d_commitments.size(); ++i) g_sum_d = g_sum_d.mul(d_commitments[i]);

    for (const auto& [att, part] : attr_parts)
        sk.components.emplace(att, AttributePart{part.D_i.mul(g_sum_d), part.D_i_prime});
    return sk;
}

EncryptResult encrypt(const PublicKey& pk, const Bytes& payload,
                      const std::vector<PrivilegeTree>& trees, RngState& rng) {
    return encrypt_with_id(pk, payload, trees, rng, hex_encode(rng.bytes(16)));
}

std::optional<GTElement> decrypt_node(const Ciphertext& ct, const PrivateKey& sk,
                                      uint32_t tree_index, const std::string& node) {
    if (tree_index >= ct.trees.size())
        fail(Errc::invalid_argument, "privilege index out of range");
    const TreeNode* at = locate_node(ct.trees[tree_index].root, node);
    if (!at) fail(Errc::invalid_argument, "no node at path " + node);
    return decrypt_node_at(ct, sk, tree_index, *at, node);
}

GTElement recover_y_power(const PrivateKey& sk, const Ciphertext& ct, uint32_t tree_index) {
    if (tree_index >= ct.trees.size())
        fail(Errc::invalid_argument, "privilege index out of range");
    auto A = decrypt_node(ct, sk, tree_index);
    if (!A)
        fail(Errc::policy_not_satisfied,
             "key does not satisfy privilege " + std::to_string(tree_index) + " (" +
                 ct.trees[tree_index].label + ")");
    // B/A = e(g^{s_p}, D) / e(g,g)^{s_p sum d_k} = e(g,g)^{s_p sum v_k}
    const GTElement B = pairing(ct.root_commitments[tree_index], sk.D);
    return B.div(*A);
}

Bytes decrypt_read(const PublicKey& pk, const PrivateKey& sk, const Ciphertext& ct) {
    require_same_system(pk.params, ct.params(), "ciphertext");
    const GTElement Y_s0 = recover_y_power(sk, ct, 0);
    return open_payload(ct, ct.E_0.div(Y_s0));
}

GTElement derive_verification(const PublicKey& pk, const PrivateKey& sk, const Ciphertext& ct,
                              uint32_t p) {
    require_same_system(pk.params, ct.params(), "ciphertext");
    if (p == 0 || p >= ct.trees.size())
        fail(Errc::invalid_argument, "verification privilege index out of range");
    return recover_y_power(sk, ct, p);
}

EncryptResult reencrypt(const PublicKey& pk, const PrivateKey& sk, const Ciphertext& ct,
                        const std::vector<PrivilegeTree>& new_trees,
                        uint32_t reenc_privilege_index, RngState& rng) {
    require_same_system(pk.params, ct.params(), "ciphertext");
    if (reenc_privilege_index >= ct.trees.size())
        fail(Errc::invalid_argument, "re-encryption privilege index out of range");

    const AttributeSet attrs = sk.attributes();
    if (!satisfies(ct.trees[0], attrs))
        fail(Errc::privilege_refused, "key does not satisfy the read privilege");
    if (!satisfies(ct.trees[reenc_privilege_index], attrs))
        fail(Errc::privilege_refused,
             "key does not satisfy privilege " + std::to_string(reenc_privilege_index) + " (" +
                 ct.trees[reenc_privilege_index].label + ")");

    const Bytes payload = decrypt_read(pk, sk, ct);
    return encrypt_with_id(pk, payload, new_trees, rng, ct.file_id);
}

AeadKey kdf(const GTElement& K_e) {
    const Digest32 digest = sha256_tagged("anonyabe.kdf", {K_e.to_bytes()});
    AeadKey key{};
    std::copy(digest.begin(), digest.end(), key.begin());
    return key;
}

} // namespace anonyabe
