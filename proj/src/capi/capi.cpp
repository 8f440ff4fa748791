#include "anonycontrol.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "anonyabe/algebra/digest.hpp"
#include "anonyabe/authorities/authority.hpp"
#include "anonyabe/errors.hpp"
#include "anonyabe/formats/formats.hpp"
#include "anonyabe/privtree/tree.hpp"
#include "anonyabe/scheme/scheme.hpp"

using namespace anonyabe;

struct anyc_public_key {
    PublicKey pk;
};
struct anyc_private_key {
    PrivateKey sk;
    ParamsPtr params;
};
struct anyc_ciphertext {
    Ciphertext ct;
};

namespace {

thread_local std::string g_last_error = "no error";

int code_of(Errc c) {
    switch (c) {
        case Errc::invalid_argument: return ANYC_ERR_INVALID;
        case Errc::io: return ANYC_ERR_IO;
        case Errc::format: return ANYC_ERR_FORMAT;
        case Errc::invalid_point: return ANYC_ERR_POINT;
        case Errc::policy_not_satisfied: return ANYC_ERR_POLICY;
        case Errc::privilege_refused: return ANYC_ERR_PRIVILEGE;
        case Errc::verification_failed: return ANYC_ERR_VERIFY;
        case Errc::not_found: return ANYC_ERR_NOT_FOUND;
        case Errc::conflict: return ANYC_ERR_CONFLICT;
        case Errc::internal: return ANYC_ERR_INTERNAL;
    }
    return ANYC_ERR_INTERNAL;
}

/// Runs `fn`, translating exceptions into error codes + the thread-local
/// message. Every public entry point goes through here.
template <typename Fn>
int api_guard(Fn&& fn) {
    try {
        fn();
        return ANYC_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return code_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ANYC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return ANYC_ERR_INTERNAL;
    }
}

void fill_buf(anyc_buf* out, const Bytes& bytes) {
    if (out == nullptr) fail(Errc::invalid_argument, "null output buffer");
    out->data = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
    if (out->data == nullptr) fail(Errc::internal, "out of memory");
    std::memcpy(out->data, bytes.data(), bytes.size());
    out->len = bytes.size();
}

void fill_buf(anyc_buf* out, const std::string& text) {
    fill_buf(out, Bytes(text.begin(), text.end()));
}

Bytes input_bytes(const uint8_t* data, size_t len, const char* what) {
    if (data == nullptr && len != 0)
        fail(Errc::invalid_argument, std::string("null ") + what);
    return Bytes(data, data + len);
}

RngState make_rng(const uint8_t* seed, size_t seed_len) {
    if (seed == nullptr || seed_len == 0) return RngState::from_entropy();
    return RngState(Bytes(seed, seed + seed_len));
}

std::vector<PrivilegeTree> build_trees(const char* const* labels, const char* const* policies,
                                       size_t n) {
    if (n == 0) fail(Errc::invalid_argument, "at least one policy is required");
    if (labels == nullptr || policies == nullptr)
        fail(Errc::invalid_argument, "null policy list");
    std::vector<PrivilegeTree> trees;
    trees.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (labels[i] == nullptr || policies[i] == nullptr)
            fail(Errc::invalid_argument, "null policy entry");
        trees.push_back(
            PrivilegeTree{static_cast<uint32_t>(i), labels[i], parse_policy(policies[i])});
    }
    return trees;
}

template <typename T>
const T& deref(const T* p, const char* what) {
    if (p == nullptr) fail(Errc::invalid_argument, std::string("null ") + what);
    return *p;
}

void copy_file_id(const std::string& id, char* out, size_t cap) {
    if (out == nullptr) fail(Errc::invalid_argument, "null file id output");
    if (cap <= id.size())
        fail(Errc::invalid_argument, "file id buffer needs " + std::to_string(id.size() + 1) +
                                         " bytes");
    std::memcpy(out, id.c_str(), id.size() + 1);
}

} // namespace

void anyc_buf_free(anyc_buf* buf) {
    if (buf == nullptr) return;
    std::free(buf->data);
    buf->data = nullptr;
    buf->len = 0;
}

const char* anyc_last_error(void) { return g_last_error.c_str(); }

const char* anyc_version(void) { return "anonycontrol 1.0"; }

/* ------------------------------------------------------------------ */

int anyc_public_key_parse(const uint8_t* data, size_t len, anyc_public_key** out) {
    return api_guard([&] {
        if (out == nullptr) fail(Errc::invalid_argument, "null output handle");
        *out = new anyc_public_key{parse_public_key(input_bytes(data, len, "public key"))};
    });
}

int anyc_public_key_serialize(const anyc_public_key* pk, anyc_buf* out) {
    return api_guard([&] { fill_buf(out, serialize_public_key(deref(pk, "public key").pk)); });
}

void anyc_public_key_free(anyc_public_key* pk) { delete pk; }

int anyc_private_key_parse(const uint8_t* data, size_t len, anyc_private_key** out) {
    return api_guard([&] {
        if (out == nullptr) fail(Errc::invalid_argument, "null output handle");
        PrivateKey sk = parse_private_keyring(input_bytes(data, len, "private key"));
        ParamsPtr pp = sk.D.params();
        *out = new anyc_private_key{std::move(sk), std::move(pp)};
    });
}

int anyc_private_key_serialize(const anyc_private_key* sk, anyc_buf* out) {
    return api_guard([&] {
        const anyc_private_key& h = deref(sk, "private key");
        fill_buf(out, serialize_private_keyring(h.sk, h.params));
    });
}

int anyc_private_key_attributes(const anyc_private_key* sk, anyc_buf* out) {
    return api_guard([&] {
        std::string text;
        for (const auto& [att, part] : deref(sk, "private key").sk.components) {
            text += att;
            text += '\n';
        }
        fill_buf(out, text);
    });
}

void anyc_private_key_free(anyc_private_key* sk) { delete sk; }

int anyc_ciphertext_parse(const uint8_t* data, size_t len, anyc_ciphertext** out) {
    return api_guard([&] {
        if (out == nullptr) fail(Errc::invalid_argument, "null output handle");
        *out = new anyc_ciphertext{parse_ciphertext(input_bytes(data, len, "ciphertext"))};
    });
}

int anyc_ciphertext_serialize(const anyc_ciphertext* ct, anyc_buf* out) {
    return api_guard([&] { fill_buf(out, serialize_ciphertext(deref(ct, "ciphertext").ct)); });
}

int anyc_ciphertext_file_id(const anyc_ciphertext* ct, char* out, size_t cap) {
    return api_guard([&] { copy_file_id(deref(ct, "ciphertext").ct.file_id, out, cap); });
}

int anyc_ciphertext_privileges(const anyc_ciphertext* ct, uint32_t* out) {
    return api_guard([&] {
        if (out == nullptr) fail(Errc::invalid_argument, "null output");
        *out = static_cast<uint32_t>(deref(ct, "ciphertext").ct.privilege_count());
    });
}

namespace {

const PrivilegeTree& tree_at(const anyc_ciphertext* ct, uint32_t privilege) {
    const Ciphertext& c = deref(ct, "ciphertext").ct;
    if (privilege >= c.trees.size())
        fail(Errc::invalid_argument,
             "ciphertext has no privilege " + std::to_string(privilege));
    return c.trees[privilege];
}

} // namespace

int anyc_ciphertext_label(const anyc_ciphertext* ct, uint32_t privilege, anyc_buf* out) {
    return api_guard([&] { fill_buf(out, tree_at(ct, privilege).label); });
}

int anyc_ciphertext_policy(const anyc_ciphertext* ct, uint32_t privilege, anyc_buf* out) {
    return api_guard([&] { fill_buf(out, render_policy(tree_at(ct, privilege).root)); });
}

void anyc_ciphertext_free(anyc_ciphertext* ct) { delete ct; }

/* ------------------------------------------------------------------ */

int anyc_setup(const char* preset, uint32_t n_authorities, uint32_t cluster_size,
               const uint8_t* seed, size_t seed_len, anyc_buf* out_public,
               anyc_buf* out_masters, anyc_buf* out_summary) {
    return api_guard([&] {
        if (preset == nullptr) fail(Errc::invalid_argument, "null preset name");
        if (out_masters == nullptr) fail(Errc::invalid_argument, "null master key output");
        const ParamsPtr pp = PairingParams::preset(preset);
        RngState rng = make_rng(seed, seed_len);
        const AuthorityConfig config = standard_config(n_authorities, cluster_size);
        SetupResult result = run_setup(pp, config, rng);

        const Bytes pub = serialize_public_key(result.pk);
        fill_buf(out_public, pub);
        for (uint32_t k = 0; k < n_authorities; ++k) {
            const AuthorityState& st = result.states[k];
            fill_buf(&out_masters[k],
                     serialize_master_keyring(MasterKeyring{*st.mk, st.categories, n_authorities},
                                              pp));
        }

        if (out_summary != nullptr) {
            const auto clusters = cluster_ranges(n_authorities, cluster_size);
            std::ostringstream text;
            text << "preset: " << pp->name() << '\n'
                 << "authorities: " << n_authorities << '\n'
                 << "clusters: " << clusters.size() << " (target size " << cluster_size << ")\n"
                 << "setup messages: " << result.transcript.count_tag(MsgTag::yshare)
                 << " public-share broadcasts, " << result.transcript.count_tag(MsgTag::blind)
                 << " pairwise blinds\n"
                 << "public key fingerprint: " << hex_encode(sha256(pub).data(), 8) << '\n';
            fill_buf(out_summary, text.str());
        }
    });
}

int anyc_keygen(const anyc_public_key* pk, const anyc_buf* masters, size_t n_masters,
                const char* const* attributes, size_t n_attributes, const char* gid,
                const uint8_t* seed, size_t seed_len, anyc_buf* out_private) {
    return api_guard([&] {
        const PublicKey& pub = deref(pk, "public key").pk;
        if (masters == nullptr || n_masters == 0)
            fail(Errc::invalid_argument, "at least one master keyring is required");
        if (attributes == nullptr || n_attributes == 0)
            fail(Errc::invalid_argument, "at least one attribute is required");
        if (gid == nullptr || *gid == '\0')
            fail(Errc::invalid_argument, "a user identifier is required");

        // reassemble the authority ensemble from the keyring files
        std::map<uint32_t, MasterKeyring> rings;
        uint32_t N = 0;
        for (size_t i = 0; i < n_masters; ++i) {
            MasterKeyring ring =
                parse_master_keyring(input_bytes(masters[i].data, masters[i].len, "keyring"));
            if (ring.share.v.params()->id() != pub.params->id())
                fail(Errc::invalid_argument, "master keyring preset differs from the public key");
            if (N == 0) N = ring.N;
            if (ring.N != N)
                fail(Errc::invalid_argument, "master keyrings disagree about the authority count");
            const uint32_t index = ring.share.authority_index;
            if (!rings.emplace(index, std::move(ring)).second)
                fail(Errc::invalid_argument,
                     "duplicate master keyring for authority " + std::to_string(index));
        }
        if (rings.size() != N)
            fail(Errc::invalid_argument, "key generation needs all " + std::to_string(N) +
                                             " master keyrings, got " +
                                             std::to_string(rings.size()));

        AuthorityConfig config;
        config.N = N;
        config.cluster_size = N;
        std::vector<AuthorityState> states;
        for (auto& [index, ring] : rings) {
            config.attribute_partition[index] = ring.categories;
            AuthorityState st;
            st.index = index;
            st.categories = ring.categories;
            st.mk = ring.share;
            states.push_back(std::move(st));
        }

        AttributeSet attrs;
        for (size_t i = 0; i < n_attributes; ++i) {
            if (attributes[i] == nullptr) fail(Errc::invalid_argument, "null attribute");
            attrs.insert(attributes[i]);
        }

        RngState rng = make_rng(seed, seed_len);
        const KeyRequest request = make_request(config, gid, attrs, rng);
        const PrivateKey sk = issue_key(states, request, rng);
        fill_buf(out_private, serialize_private_keyring(sk, pub.params));
    });
}

int anyc_encrypt(const anyc_public_key* pk, const uint8_t* payload, size_t payload_len,
                 const char* const* labels, const char* const* policies, size_t n_policies,
                 const uint8_t* seed, size_t seed_len, anyc_buf* out_ct, anyc_buf* out_vr,
                 char* out_file_id, size_t file_id_cap) {
    return api_guard([&] {
        const PublicKey& pub = deref(pk, "public key").pk;
        RngState rng = make_rng(seed, seed_len);
        const EncryptResult result = encrypt(pub, input_bytes(payload, payload_len, "payload"),
                                             build_trees(labels, policies, n_policies), rng);
        fill_buf(out_ct, serialize_ciphertext(result.ct));
        fill_buf(out_vr, serialize_verification(result.vr, pub.params));
        if (out_file_id != nullptr) copy_file_id(result.ct.file_id, out_file_id, file_id_cap);
    });
}

int anyc_decrypt(const anyc_public_key* pk, const anyc_private_key* sk,
                 const anyc_ciphertext* ct, anyc_buf* out_payload) {
    return api_guard([&] {
        fill_buf(out_payload, decrypt_read(deref(pk, "public key").pk,
                                           deref(sk, "private key").sk,
                                           deref(ct, "ciphertext").ct));
    });
}

int anyc_derive_token(const anyc_public_key* pk, const anyc_private_key* sk,
                      const anyc_ciphertext* ct, uint32_t privilege, anyc_buf* out_token) {
    return api_guard([&] {
        const GTElement value =
            derive_verification(deref(pk, "public key").pk, deref(sk, "private key").sk,
                                deref(ct, "ciphertext").ct, privilege);
        fill_buf(out_token, value.to_bytes());
    });
}

int anyc_reencrypt(const anyc_public_key* pk, const anyc_private_key* sk,
                   const anyc_ciphertext* ct, const char* const* labels,
                   const char* const* policies, size_t n_policies, uint32_t privilege,
                   const uint8_t* seed, size_t seed_len, anyc_buf* out_ct, anyc_buf* out_vr) {
    return api_guard([&] {
        const PublicKey& pub = deref(pk, "public key").pk;
        RngState rng = make_rng(seed, seed_len);
        const EncryptResult result =
            reencrypt(pub, deref(sk, "private key").sk, deref(ct, "ciphertext").ct,
                      build_trees(labels, policies, n_policies), privilege, rng);
        fill_buf(out_ct, serialize_ciphertext(result.ct));
        fill_buf(out_vr, serialize_verification(result.vr, pub.params));
    });
}
