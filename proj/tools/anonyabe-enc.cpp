// anonyabe-enc: encrypts a file under one access tree per operation
// privilege and writes the ciphertext (.anyc) and the verification set
// (.anyv) the cloud server needs to gate operations.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Encrypts a file under labeled privilege policies"};

    std::string pub_path;
    std::string in_path;
    std::string out_base;
    std::vector<std::string> policy_args;
    tool::Seed seed;

    app.add_option("-p,--pub", pub_path, "public key file")->required();
    app.add_option("-i,--in", in_path, "plaintext input file")->required();
    app.add_option("-o,--out", out_base,
                   "output base path (writes <base>.anyc and <base>.anyv; "
                   "default: input path)");
    app.add_option("--policy", policy_args,
                   "privilege policy, optionally labeled as label=POLICY; the first "
                   "is the read policy")
        ->required();
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
    if (out_base.empty()) out_base = in_path;

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

    const std::vector<uint8_t> pub_bytes = tool::read_file("anonyabe-enc", pub_path);
    anyc_public_key* pk = nullptr;
    tool::check("anonyabe-enc", anyc_public_key_parse(pub_bytes.data(), pub_bytes.size(), &pk));

    const std::vector<uint8_t> payload = tool::read_file("anonyabe-enc", in_path);

    tool::Buf ct, vr;
    char file_id[64] = {0};
    const int err =
        anyc_encrypt(pk, payload.data(), payload.size(), label_ptrs.data(), policy_ptrs.data(),
                     policy_ptrs.size(), seed.data(), seed.size(), ct.out(), vr.out(), file_id,
                     sizeof(file_id));
    anyc_public_key_free(pk);
    tool::check("anonyabe-enc", err);

    tool::write_file("anonyabe-enc", out_base + ".anyc", ct.data(), ct.size());
    tool::write_file("anonyabe-enc", out_base + ".anyv", vr.data(), vr.size());
    std::printf("file id %s, %zu privilege(s); wrote %s.anyc and %s.anyv\n", file_id,
                policies.size(), out_base.c_str(), out_base.c_str());
    return 0;
}
