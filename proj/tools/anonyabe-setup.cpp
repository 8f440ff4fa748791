// anonyabe-setup: jointly generates the system public key and one master
// key share per attribute authority, then writes pub.key and
// master<k>.key into the output directory.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Multi-authority setup: generates pub.key and master<k>.key files"};

    uint32_t authorities = 0;
    uint32_t cluster = 0;
    std::string preset = tool::default_preset();
    std::string out_dir = ".";
    tool::Seed seed;

    app.add_option("-n,--authorities", authorities, "number of attribute authorities")
        ->required();
    app.add_option("-c,--cluster", cluster,
                   "authorities per blinding cluster (default: all in one cluster)");
    app.add_option("--preset", preset, "pairing parameter preset (toy | demo)")->capture_default_str();
    app.add_option("-o,--out", out_dir, "output directory")->capture_default_str();
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
    if (cluster == 0) cluster = authorities;

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) tool::die("anonyabe-setup", 2, "cannot create output directory " + out_dir);

    tool::Buf pub;
    tool::Buf summary;
    std::vector<anyc_buf> masters(authorities, anyc_buf{});
    const int err = anyc_setup(preset.c_str(), authorities, cluster, seed.data(), seed.size(),
                               pub.out(), masters.data(), summary.out());
    if (err != ANYC_OK) {
        for (anyc_buf& m : masters) anyc_buf_free(&m);
        tool::check("anonyabe-setup", err);
    }

    const std::filesystem::path dir(out_dir);
    tool::write_file("anonyabe-setup", (dir / "pub.key").string(), pub.data(), pub.size());
    for (uint32_t k = 0; k < authorities; ++k) {
        const std::string name = "master" + std::to_string(k + 1) + ".key";
        tool::write_file("anonyabe-setup", (dir / name).string(), masters[k].data,
                         masters[k].len);
        anyc_buf_free(&masters[k]);
    }

    std::fputs(summary.str().c_str(), stdout);
    std::printf("wrote pub.key and %u master key files to %s\n", authorities, out_dir.c_str());
    return 0;
}
