// anonyabe-rec: re-encrypts a ciphertext under fresh privilege policies,
// keeping its file id. The key must satisfy the old read tree and the old
// re-encryption tree (the tree labeled "reencrypt" if present, otherwise
// the last one).

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"

namespace {

/// The privilege whose tree gates re-encryption on the old ciphertext.
uint32_t resolve_reencrypt_privilege(anyc_ciphertext* ct) {
    uint32_t privileges = 0;
    tool::check("anonyabe-rec", anyc_ciphertext_privileges(ct, &privileges));
    if (privileges < 2)
        tool::die("anonyabe-rec", 3,
                  "the ciphertext has no operation privilege to authorize re-encryption");
    for (uint32_t p = 1; p < privileges; ++p) {
        tool::Buf label;
        tool::check("anonyabe-rec", anyc_ciphertext_label(ct, p, label.out()));
        if (label.str() == "reencrypt") return p;
    }
    return privileges - 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Re-encrypts a file under new privilege policies"};

    std::string pub_path;
    std::string key_path;
    std::string in_path;
    std::string out_base;
    std::vector<std::string> policy_args;
    uint32_t privilege = 0;
    tool::Seed seed;

    app.add_option("-p,--pub", pub_path, "public key file")->required();
    app.add_option("-k,--key", key_path, "private key file")->required();
    app.add_option("-i,--in", in_path, "ciphertext (.anyc) file")->required();
    app.add_option("-o,--out", out_base,
                   "output base path (writes <base>.anyc and <base>.anyv; "
                   "default: input base)");
    app.add_option("--policy", policy_args,
                   "new privilege policy, optionally labeled as label=POLICY")
        ->required();
    auto* priv_opt = app.add_option(
        "--privilege", privilege,
        "privilege that authorizes the re-encryption (default: the tree "
        "labeled reencrypt, else the last tree)");
    auto* seed_opt = app.add_option("--seed", seed.value, "deterministic run seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    seed.set = seed_opt->count() > 0;
    if (out_base.empty()) {
        out_base = in_path;
        const size_t dot = out_base.rfind(".anyc");
        if (dot != std::string::npos && dot == out_base.size() - 5) out_base.resize(dot);
    }

    std::vector<std::string> labels, policies;
    for (size_t i = 0; i < policy_args.size(); ++i) {
        const tool::LabeledPolicy lp = tool::split_policy(policy_args[i], i);
        labels.push_back(lp.label);
        policies.push_back(lp.policy);
    }
    std::vector<const char*> label_ptrs, policy_ptrs;
    for (size_t i = 0; i < labels.size(); ++i) {
        label_ptrs.push_back(labels[i].c_str());
        policy_ptrs.push_back(policies[i].c_str());
    }

    const std::vector<uint8_t> pub_bytes = tool::read_file("anonyabe-rec", pub_path);
    const std::vector<uint8_t> key_bytes = tool::read_file("anonyabe-rec", key_path);
    const std::vector<uint8_t> ct_bytes = tool::read_file("anonyabe-rec", in_path);

    anyc_public_key* pk = nullptr;
    anyc_private_key* sk = nullptr;
    anyc_ciphertext* ct = nullptr;
    tool::check("anonyabe-rec", anyc_public_key_parse(pub_bytes.data(), pub_bytes.size(), &pk));
    tool::check("anonyabe-rec", anyc_private_key_parse(key_bytes.data(), key_bytes.size(), &sk));
    tool::check("anonyabe-rec", anyc_ciphertext_parse(ct_bytes.data(), ct_bytes.size(), &ct));

    if (priv_opt->count() == 0) privilege = resolve_reencrypt_privilege(ct);

    tool::Buf new_ct, new_vr;
    const int err =
        anyc_reencrypt(pk, sk, ct, label_ptrs.data(), policy_ptrs.data(), policy_ptrs.size(),
                       privilege, seed.data(), seed.size(), new_ct.out(), new_vr.out());
    anyc_ciphertext_free(ct);
    anyc_private_key_free(sk);
    anyc_public_key_free(pk);
    tool::check("anonyabe-rec", err);

    tool::write_file("anonyabe-rec", out_base + ".anyc", new_ct.data(), new_ct.size());
    tool::write_file("anonyabe-rec", out_base + ".anyv", new_vr.data(), new_vr.size());
    std::printf("re-encrypted under %zu new privilege(s); wrote %s.anyc and %s.anyv\n",
                policies.size(), out_base.c_str(), out_base.c_str());
    return 0;
}
