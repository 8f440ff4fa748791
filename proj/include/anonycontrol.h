#ifndef ANONYCONTROL_H
#define ANONYCONTROL_H

/*
 * C interface to the AnonyControl library: multi-authority attribute-based
 * encryption with one access tree per operation privilege.
 *
 * Conventions
 *   - Every function returns ANYC_OK (0) or an ANYC_ERR_* code; on failure
 *     anyc_last_error() describes what went wrong (thread-local).
 *   - Parsed objects are opaque handles freed with their *_free function.
 *   - Variable-length outputs arrive as anyc_buf, allocated by the library
 *     and released with anyc_buf_free.
 *   - A NULL seed draws from the OS entropy pool; a seed makes the call
 *     fully deterministic, including the payload cipher nonce.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    ANYC_OK = 0,
    ANYC_ERR_INVALID = 1,    /* bad argument or parameter combination */
    ANYC_ERR_IO = 2,         /* filesystem failure */
    ANYC_ERR_FORMAT = 3,     /* malformed serialized input */
    ANYC_ERR_POINT = 4,      /* group element failed validation */
    ANYC_ERR_POLICY = 5,     /* key does not satisfy the access tree */
    ANYC_ERR_PRIVILEGE = 6,  /* operation privilege refused */
    ANYC_ERR_VERIFY = 7,     /* authentication or proof check failed */
    ANYC_ERR_NOT_FOUND = 8,
    ANYC_ERR_CONFLICT = 9,
    ANYC_ERR_INTERNAL = 10,
};

/* Library-owned byte buffer. Zero-initialize, pass by pointer, free once. */
typedef struct anyc_buf {
    uint8_t* data;
    size_t len;
} anyc_buf;

void anyc_buf_free(anyc_buf* buf);

/* Message for the most recent failure on this thread; never NULL. */
const char* anyc_last_error(void);

const char* anyc_version(void);

/* ------------------------------------------------------------------ */
/* Opaque handles                                                      */

typedef struct anyc_public_key anyc_public_key;
typedef struct anyc_private_key anyc_private_key;
typedef struct anyc_ciphertext anyc_ciphertext;

int anyc_public_key_parse(const uint8_t* data, size_t len, anyc_public_key** out);
int anyc_public_key_serialize(const anyc_public_key* pk, anyc_buf* out);
void anyc_public_key_free(anyc_public_key* pk);

int anyc_private_key_parse(const uint8_t* data, size_t len, anyc_private_key** out);
int anyc_private_key_serialize(const anyc_private_key* sk, anyc_buf* out);
/* Attribute names, one per line, sorted. */
int anyc_private_key_attributes(const anyc_private_key* sk, anyc_buf* out);
void anyc_private_key_free(anyc_private_key* sk);

int anyc_ciphertext_parse(const uint8_t* data, size_t len, anyc_ciphertext** out);
int anyc_ciphertext_serialize(const anyc_ciphertext* ct, anyc_buf* out);
/* File id as a NUL-terminated hex string into caller storage (>= 33 bytes). */
int anyc_ciphertext_file_id(const anyc_ciphertext* ct, char* out, size_t cap);
/* Number of privilege trees r (read tree included). */
int anyc_ciphertext_privileges(const anyc_ciphertext* ct, uint32_t* out);
/* Label of privilege tree p. */
int anyc_ciphertext_label(const anyc_ciphertext* ct, uint32_t privilege, anyc_buf* out);
/* Canonical policy text of privilege tree p. */
int anyc_ciphertext_policy(const anyc_ciphertext* ct, uint32_t privilege, anyc_buf* out);
void anyc_ciphertext_free(anyc_ciphertext* ct);

/* ------------------------------------------------------------------ */
/* Protocol operations                                                 */

/*
 * Multi-authority setup over `preset` ("toy" or "demo"). Writes the shared
 * public key into out_public and one master keyring per authority into
 * out_masters[0..n_authorities-1] (caller-provided, zero-initialized
 * array). out_summary receives a human-readable transcript summary.
 * Authorities blind each other within clusters of cluster_size.
 */
int anyc_setup(const char* preset, uint32_t n_authorities, uint32_t cluster_size,
               const uint8_t* seed, size_t seed_len, anyc_buf* out_public,
               anyc_buf* out_masters, anyc_buf* out_summary);

/*
 * Issues a private key for `attributes` (each "Category:Value"), running
 * the two-phase issuance across all authorities. `masters` must hold every
 * authority's keyring blob from the same setup, in any order. `gid` is the
 * user's global identifier; the authorities only ever see a fresh nym.
 */
int anyc_keygen(const anyc_public_key* pk, const anyc_buf* masters, size_t n_masters,
                const char* const* attributes, size_t n_attributes, const char* gid,
                const uint8_t* seed, size_t seed_len, anyc_buf* out_private);

/*
 * Encrypts `payload` under one access tree per privilege. labels[0] must
 * be "read". Policies use the grammar: attribute, `and`, `or`,
 * `k of (…, …)`, parentheses. Outputs the interchange ciphertext and the
 * verification set, and the generated file id (as with
 * anyc_ciphertext_file_id).
 */
int anyc_encrypt(const anyc_public_key* pk, const uint8_t* payload, size_t payload_len,
                 const char* const* labels, const char* const* policies, size_t n_policies,
                 const uint8_t* seed, size_t seed_len, anyc_buf* out_ct, anyc_buf* out_vr,
                 char* out_file_id, size_t file_id_cap);

/* Recovers the plaintext payload (privilege 0). */
int anyc_decrypt(const anyc_public_key* pk, const anyc_private_key* sk,
                 const anyc_ciphertext* ct, anyc_buf* out_payload);

/*
 * Derives the canonical verification value for privilege p >= 1 (the bytes
 * a server digests against its challenge nonce). Fails with
 * ANYC_ERR_POLICY if the key does not satisfy tree p.
 */
int anyc_derive_token(const anyc_public_key* pk, const anyc_private_key* sk,
                      const anyc_ciphertext* ct, uint32_t privilege, anyc_buf* out_token);

/*
 * Re-encrypts `ct` under a fresh set of trees, preserving the file id.
 * The key must satisfy the read tree and tree `privilege` of the old
 * ciphertext. Labels and policies as for anyc_encrypt.
 */
int anyc_reencrypt(const anyc_public_key* pk, const anyc_private_key* sk,
                   const anyc_ciphertext* ct, const char* const* labels,
                   const char* const* policies, size_t n_policies, uint32_t privilege,
                   const uint8_t* seed, size_t seed_len, anyc_buf* out_ct, anyc_buf* out_vr);

#ifdef __cplusplus
}
#endif

#endif /* ANONYCONTROL_H */
