// anonyabe-dec: decrypts a ciphertext with a private key. With
// --privilege 0 (the default) it writes the plaintext; with a higher
// privilege it prints the canonical verification value for that privilege
// as hex, ready to be digested against a server challenge.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Decrypts a file or derives an operation-privilege token"};

    std::string pub_path;
    std::string key_path;
    std::string in_path;
    std::string out_path;
    uint32_t privilege = 0;

    app.add_option("-p,--pub", pub_path, "public key file")->required();
    app.add_option("-k,--key", key_path, "private key file")->required();
    app.add_option("-i,--in", in_path, "ciphertext (.anyc) file")->required();
    app.add_option("-o,--out", out_path, "plaintext output file (privilege 0 only)");
    app.add_option("--privilege", privilege,
                   "privilege index: 0 decrypts, p >= 1 derives the verification token")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (privilege == 0 && out_path.empty())
        tool::die("anonyabe-dec", 1, "--out is required when decrypting (privilege 0)");

    const std::vector<uint8_t> pub_bytes = tool::read_file("anonyabe-dec", pub_path);
    const std::vector<uint8_t> key_bytes = tool::read_file("anonyabe-dec", key_path);
    const std::vector<uint8_t> ct_bytes = tool::read_file("anonyabe-dec", in_path);

    anyc_public_key* pk = nullptr;
    anyc_private_key* sk = nullptr;
    anyc_ciphertext* ct = nullptr;
    tool::check("anonyabe-dec", anyc_public_key_parse(pub_bytes.data(), pub_bytes.size(), &pk));
    tool::check("anonyabe-dec", anyc_private_key_parse(key_bytes.data(), key_bytes.size(), &sk));
    tool::check("anonyabe-dec", anyc_ciphertext_parse(ct_bytes.data(), ct_bytes.size(), &ct));

    int err;
    if (privilege == 0) {
        tool::Buf payload;
        err = anyc_decrypt(pk, sk, ct, payload.out());
        if (err == ANYC_OK)
            tool::write_file("anonyabe-dec", out_path, payload.data(), payload.size());
    } else {
        tool::Buf token;
        err = anyc_derive_token(pk, sk, ct, privilege, token.out());
        if (err == ANYC_OK) {
            for (size_t i = 0; i < token.size(); ++i) std::printf("%02x", token.data()[i]);
            std::printf("\n");
        }
    }

    anyc_ciphertext_free(ct);
    anyc_private_key_free(sk);
    anyc_public_key_free(pk);
    tool::check("anonyabe-dec", err);
    return 0;
}
