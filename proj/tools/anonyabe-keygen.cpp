// anonyabe-keygen: runs the multi-authority key issuance for a set of
// "Category:Value" attributes and writes the aggregated private key.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Issues a private key for an attribute set"};

    std::string pub_path;
    std::vector<std::string> master_paths;
    std::vector<std::string> attributes;
    std::string gid = "user";
    std::string out_path = "private.key";
    tool::Seed seed;

    app.add_option("-p,--pub", pub_path, "public key file")->required();
    app.add_option("-m,--master", master_paths,
                   "master key file; pass one per authority")
        ->required();
    app.add_option("attributes", attributes, "attributes as Category:Value")->required();
    app.add_option("--gid", gid, "user's global identifier")->capture_default_str();
    app.add_option("-o,--out", out_path, "private key output file")->capture_default_str();
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

    const std::vector<uint8_t> pub_bytes = tool::read_file("anonyabe-keygen", pub_path);
    anyc_public_key* pk = nullptr;
    tool::check("anonyabe-keygen", anyc_public_key_parse(pub_bytes.data(), pub_bytes.size(), &pk));

    std::vector<std::vector<uint8_t>> master_bytes;
    std::vector<anyc_buf> masters;
    for (const std::string& path : master_paths) {
        master_bytes.push_back(tool::read_file("anonyabe-keygen", path));
        masters.push_back(anyc_buf{master_bytes.back().data(), master_bytes.back().size()});
    }

    std::vector<const char*> attr_ptrs;
    for (const std::string& a : attributes) attr_ptrs.push_back(a.c_str());

    tool::Buf key;
    const int err = anyc_keygen(pk, masters.data(), masters.size(), attr_ptrs.data(),
                                attr_ptrs.size(), gid.c_str(), seed.data(), seed.size(),
                                key.out());
    anyc_public_key_free(pk);
    tool::check("anonyabe-keygen", err);

    tool::write_file("anonyabe-keygen", out_path, key.data(), key.size());
    std::printf("wrote a private key with %zu attributes to %s\n", attributes.size(),
                out_path.c_str());
    return 0;
}
