#include "anonyabe/scheme/aead.hpp"

#include <memory>

#include <openssl/evp.h>

#include "anonyabe/errors.hpp"

namespace anonyabe {

namespace {

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

CipherCtx make_ctx() {
    CipherCtx ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (!ctx) fail(Errc::internal, "cipher context allocation failed");
    return ctx;
}

void check_nonce(const Bytes& nonce) {
    if (nonce.size() != kAeadNonceBytes)
        fail(Errc::invalid_argument, "aead nonce must be 12 bytes");
}

} // namespace

Bytes aead_seal(const AeadKey& key, const Bytes& nonce, const Bytes& aad, const Bytes& plaintext) {
    check_nonce(nonce);
    CipherCtx ctx = make_ctx();
    if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1)
        fail(Errc::internal, "aead init failed");

    int len = 0;
    if (!aad.empty() &&
        EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1)
        fail(Errc::internal, "aead aad failed");

    Bytes out(plaintext.size() + kAeadTagBytes);
    if (!plaintext.empty() && EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(),
                                                static_cast<int>(plaintext.size())) != 1)
        fail(Errc::internal, "aead encrypt failed");

    int fin = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &fin) != 1)
        fail(Errc::internal, "aead finalize failed");
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kAeadTagBytes,
                            out.data() + plaintext.size()) != 1)
        fail(Errc::internal, "aead tag failed");
    return out;
}

Bytes aead_open(const AeadKey& key, const Bytes& nonce, const Bytes& aad, const Bytes& sealed) {
    check_nonce(nonce);
    if (sealed.size() < kAeadTagBytes)
        fail(Errc::verification_failed, "sealed payload shorter than its tag");
    const size_t body = sealed.size() - kAeadTagBytes;

    CipherCtx ctx = make_ctx();
    if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1)
        fail(Errc::internal, "aead init failed");

    int len = 0;
    if (!aad.empty() &&
        EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1)
        fail(Errc::internal, "aead aad failed");

    Bytes out(body);
    if (body > 0 &&
        EVP_DecryptUpdate(ctx.get(), out.data(), &len, sealed.data(), static_cast<int>(body)) != 1)
        fail(Errc::verification_failed, "payload authentication failed");

    Bytes tag(sealed.begin() + static_cast<ptrdiff_t>(body), sealed.end());
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kAeadTagBytes, tag.data()) != 1)
        fail(Errc::internal, "aead tag failed");

    int fin = 0;
    if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &fin) != 1)
        fail(Errc::verification_failed, "payload authentication failed");
    return out;
}

} // namespace anonyabe
