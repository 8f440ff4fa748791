// anonyabe-bench: times the core operations while sweeping one dimension
// (authorities, attributes, nodes, filesize, trees) and emits one CSV row
// per repetition:
//
//   op,N,I,X,K,filesize,rep,micros
//
// N = authority count, I = key attribute count, X = total access-tree
// nodes, K = mean gate threshold. Columns that do not apply to an
// operation are 0. Analysis (fits, medians) is left to whatever reads the
// CSV; rows carry raw repetitions.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"

namespace {

const char* const kTool = "anonyabe-bench";

const char* const kCategories[] = {"Sex",      "Nationality", "University", "Position",
                                   "Age",      "Religion",    "Degree",     "Affiliation"};

std::string attr(size_t i) {
    return std::string(kCategories[i % 8]) + ":v" + std::to_string(i);
}

/// All-AND access tree with exactly `nodes` tree nodes (leaves plus
/// gates), built as a right-leaning chain of binary gates so decryption
/// has to touch every leaf. Even node counts make the innermost gate
/// ternary. Returns the policy plus the instance parameters to echo.
struct BuiltTree {
    std::string policy;
    std::vector<std::string> leaves;
    size_t nodes = 0;
    double mean_threshold = 0.0;
};

BuiltTree chain_tree(size_t nodes, size_t first_leaf = 0) {
    BuiltTree t;
    t.nodes = nodes;
    if (nodes == 1) {
        t.leaves.push_back(attr(first_leaf));
        t.policy = t.leaves[0];
        return t;
    }
    if (nodes < 3) tool::die(kTool, 1, "a gate tree needs at least 3 nodes");
    const size_t gates = (nodes - (nodes % 2 == 0 ? 2 : 1)) / 2;
    const size_t leaf_count = nodes - gates;
    for (size_t i = 0; i < leaf_count; ++i) t.leaves.push_back(attr(first_leaf + i));

    // innermost gate takes the last two (or three) leaves
    const size_t tail = nodes % 2 == 0 ? 3 : 2;
    std::string expr = "(" + t.leaves[leaf_count - tail];
    for (size_t i = leaf_count - tail + 1; i < leaf_count; ++i) expr += " and " + t.leaves[i];
    expr += ")";
    for (size_t i = leaf_count - tail; i-- > 0;) expr = "(" + t.leaves[i] + " and " + expr + ")";
    t.policy = expr;
    t.mean_threshold =
        (2.0 * static_cast<double>(gates - 1) + static_cast<double>(tail)) /
        static_cast<double>(gates);
    return t;
}

/// Five structurally different all-AND trees over the same 12 leaves,
/// 20 nodes each (8 gates), so timings compare shape against shape with
/// everything else equal.
std::vector<BuiltTree> shape_trees() {
    std::string a[12];
    for (size_t i = 0; i < 12; ++i) a[i] = attr(i);
    const std::string shapes[5] = {
        // right-leaning chain
        "(" + a[0] + " and (" + a[1] + " and (" + a[2] + " and (" + a[3] + " and (" + a[4] +
            " and (" + a[5] + " and (" + a[6] + " and (" + a[7] + " and " + a[8] + " and " +
            a[9] + " and " + a[10] + " and " + a[11] + "))))))))",
        // balanced pairs under a ternary root
        "((" + a[0] + " and " + a[1] + ") and (" + a[2] + " and " + a[3] + ")) and ((" + a[4] +
            " and " + a[5] + ") and (" + a[6] + " and " + a[7] + ")) and (" + a[8] + " and " +
            a[9] + " and " + a[10] + " and " + a[11] + ")",
        // shallow left arm, deep right arm
        "(" + a[0] + " and (" + a[1] + " and " + a[2] + " and " + a[3] + " and " + a[4] +
            ")) and (" + a[5] + " and (" + a[6] + " and (" + a[7] + " and (" + a[8] + " and (" +
            a[9] + " and " + a[10] + " and " + a[11] + ")))))",
        // two balanced halves of mixed arity
        "((" + a[0] + " and " + a[1] + " and " + a[2] + ") and ((" + a[3] + " and " + a[4] +
            ") and " + a[5] + ")) and ((" + a[6] + " and " + a[7] + " and " + a[8] + ") and (" +
            a[9] + " and " + a[10] + " and " + a[11] + "))",
        // left-deep chain into a wide tail
        "(((((((" + a[0] + " and " + a[1] + ") and " + a[2] + ") and " + a[3] + ") and " + a[4] +
            ") and " + a[5] + ") and " + a[6] + ") and (" + a[7] + " and " + a[8] + " and " +
            a[9] + " and " + a[10] + " and " + a[11] + "))",
    };
    std::vector<BuiltTree> trees;
    for (const std::string& policy : shapes) {
        BuiltTree t;
        t.policy = policy;
        t.nodes = 20;
        for (size_t i = 0; i < 12; ++i) t.leaves.push_back(a[i]);
        t.mean_threshold = 19.0 / 8.0; // all-AND: threshold sum = nodes - 1
        trees.push_back(std::move(t));
    }
    return trees;
}

uint64_t now_micros() {
    return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                     std::chrono::steady_clock::now().time_since_epoch())
                                     .count());
}

std::vector<uint8_t> deterministic_payload(size_t size, uint64_t seed) {
    std::vector<uint8_t> payload(size);
    uint64_t x = seed | 1;
    for (size_t i = 0; i < size; ++i) {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        payload[i] = static_cast<uint8_t>(x);
    }
    return payload;
}

struct Csv {
    FILE* out = stdout;
    void header() const { std::fprintf(out, "op,N,I,X,K,filesize,rep,micros\n"); }
    void row(const char* op, uint32_t N, size_t I, size_t X, double K, size_t filesize,
             size_t rep, uint64_t micros) const {
        std::fprintf(out, "%s,%u,%zu,%zu,%.3f,%zu,%zu,%llu\n", op, N, I, X, K, filesize, rep,
                     static_cast<unsigned long long>(micros));
    }
};

/// One deployed system: public key handle plus master keyring blobs.
struct System {
    anyc_public_key* pk = nullptr;
    std::vector<tool::Buf> master_bufs;
    std::vector<anyc_buf> masters;

    ~System() { anyc_public_key_free(pk); }
};

void deploy(System& sys, const std::string& preset, uint32_t N, uint32_t C, tool::Seed& seed,
            uint64_t* setup_micros = nullptr) {
    tool::Buf pub;
    sys.master_bufs = std::vector<tool::Buf>(N);
    std::vector<anyc_buf> raw(N, anyc_buf{});
    const uint64_t t0 = now_micros();
    tool::check(kTool, anyc_setup(preset.c_str(), N, C, seed.data(), seed.size(), pub.out(),
                                  raw.data(), nullptr));
    const uint64_t t1 = now_micros();
    if (setup_micros != nullptr) *setup_micros = t1 - t0;
    for (uint32_t k = 0; k < N; ++k) sys.master_bufs[k].buf = raw[k];
    sys.masters.clear();
    for (uint32_t k = 0; k < N; ++k)
        sys.masters.push_back(anyc_buf{sys.master_bufs[k].buf.data, sys.master_bufs[k].buf.len});
    tool::check(kTool, anyc_public_key_parse(pub.data(), pub.size(), &sys.pk));
}

anyc_private_key* issue(System& sys, const std::vector<std::string>& attrs, tool::Seed& seed,
                        uint64_t* keygen_micros = nullptr) {
    std::vector<const char*> ptrs;
    for (const std::string& a : attrs) ptrs.push_back(a.c_str());
    tool::Buf key;
    const uint64_t t0 = now_micros();
    tool::check(kTool, anyc_keygen(sys.pk, sys.masters.data(), sys.masters.size(), ptrs.data(),
                                   ptrs.size(), "bench-user", seed.data(), seed.size(),
                                   key.out()));
    const uint64_t t1 = now_micros();
    if (keygen_micros != nullptr) *keygen_micros = t1 - t0;
    anyc_private_key* sk = nullptr;
    tool::check(kTool, anyc_private_key_parse(key.data(), key.size(), &sk));
    return sk;
}

/// Times one encrypt/decrypt pair and emits both rows.
void time_enc_dec(const Csv& csv, System& sys, anyc_private_key* sk,
                  const std::vector<std::string>& labels,
                  const std::vector<std::string>& policies,
                  const std::vector<uint8_t>& payload, tool::Seed& seed, uint32_t N, size_t I,
                  size_t X, double K, size_t rep) {
    std::vector<const char*> label_ptrs, policy_ptrs;
    for (size_t i = 0; i < labels.size(); ++i) {
        label_ptrs.push_back(labels[i].c_str());
        policy_ptrs.push_back(policies[i].c_str());
    }

    tool::Buf ct_blob, vr_blob;
    const uint64_t e0 = now_micros();
    tool::check(kTool, anyc_encrypt(sys.pk, payload.data(), payload.size(), label_ptrs.data(),
                                    policy_ptrs.data(), policy_ptrs.size(), seed.data(),
                                    seed.size(), ct_blob.out(), vr_blob.out(), nullptr, 0));
    const uint64_t e1 = now_micros();
    csv.row("enc", N, I, X, K, payload.size(), rep, e1 - e0);

    anyc_ciphertext* ct = nullptr;
    tool::check(kTool, anyc_ciphertext_parse(ct_blob.data(), ct_blob.size(), &ct));
    tool::Buf plain;
    const uint64_t d0 = now_micros();
    tool::check(kTool, anyc_decrypt(sys.pk, sk, ct, plain.out()));
    const uint64_t d1 = now_micros();
    anyc_ciphertext_free(ct);
    if (plain.size() != payload.size())
        tool::die(kTool, 2, "decryption returned the wrong payload size");
    csv.row("dec", N, I, X, K, payload.size(), rep, d1 - d0);
}

std::vector<std::string> key_attrs(size_t count) {
    std::vector<std::string> attrs;
    for (size_t i = 0; i < count; ++i) attrs.push_back(attr(i));
    return attrs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmarks the core operations along one dimension"};

    std::string dimension;
    std::vector<size_t> points;
    size_t reps = 5;
    std::string out_path = "-";
    std::string preset = tool::default_preset();
    bool shapes = false;
    tool::Seed seed;
    seed.set = true;
    seed.value = 42;

    app.add_option("-d,--dimension", dimension, "authorities | attributes | nodes | filesize | trees")
        ->required();
    app.add_option("--points", points, "sweep points (defaults depend on the dimension)")
        ->delimiter(',');
    app.add_option("-r,--reps", reps, "repetitions per point")->capture_default_str();
    app.add_option("-o,--out", out_path, "CSV output path, - for stdout")->capture_default_str();
    app.add_option("--preset", preset, "pairing parameter preset")->capture_default_str();
    app.add_flag("--shapes", shapes,
                 "with --dimension nodes: sweep five tree shapes at 20 nodes; the rep "
                 "column becomes shape*reps+rep");
    app.add_option("--seed", seed.value, "deterministic run seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (reps == 0) tool::die(kTool, 1, "--reps must be positive");

    Csv csv;
    FILE* file = nullptr;
    if (out_path != "-") {
        file = std::fopen(out_path.c_str(), "w");
        if (file == nullptr) tool::die(kTool, 2, "cannot open " + out_path + " for writing");
        csv.out = file;
    }
    csv.header();

    const size_t default_filesize = 100 * 1024;

    if (dimension == "authorities") {
        if (points.empty()) points = {2, 4, 6, 8, 10, 12, 14, 16};
        const std::vector<std::string> attrs = key_attrs(20);
        // rep-major order: a transient load spike lands on at most one rep
        // of each point instead of swallowing one point whole
        for (size_t rep = 0; rep < reps; ++rep) {
            for (size_t N : points) {
                System sys;
                uint64_t setup_us = 0, keygen_us = 0;
                deploy(sys, preset, static_cast<uint32_t>(N), 2, seed, &setup_us);
                // per-authority cost: the joint setup divided by N
                csv.row("setup", static_cast<uint32_t>(N), 0, 0, 0.0, 0, rep, setup_us / N);
                anyc_private_key* sk = issue(sys, attrs, seed, &keygen_us);
                csv.row("keygen", static_cast<uint32_t>(N), attrs.size(), 0, 0.0, 0, rep,
                        keygen_us);
                anyc_private_key_free(sk);
            }
        }
    } else if (dimension == "attributes") {
        if (points.empty()) points = {4, 8, 12, 16, 20, 24, 28, 32};
        System sys;
        deploy(sys, preset, 4, 2, seed);
        for (size_t rep = 0; rep < reps; ++rep) {
            for (size_t I : points) {
                const std::vector<std::string> attrs = key_attrs(I);
                uint64_t keygen_us = 0;
                anyc_private_key* sk = issue(sys, attrs, seed, &keygen_us);
                csv.row("keygen", 4, I, 0, 0.0, 0, rep, keygen_us);
                anyc_private_key_free(sk);
            }
        }
    } else if (dimension == "nodes" && shapes) {
        System sys;
        deploy(sys, preset, 4, 2, seed);
        const std::vector<BuiltTree> trees = shape_trees();
        anyc_private_key* sk = issue(sys, trees[0].leaves, seed);
        const std::vector<uint8_t> payload = deterministic_payload(default_filesize, seed.value);
        for (size_t rep = 0; rep < reps; ++rep) {
            for (size_t s = 0; s < trees.size(); ++s) {
                time_enc_dec(csv, sys, sk, {"read"}, {trees[s].policy}, payload, seed, 4,
                             trees[s].leaves.size(), trees[s].nodes, trees[s].mean_threshold,
                             s * reps + rep);
            }
        }
        anyc_private_key_free(sk);
    } else if (dimension == "nodes") {
        if (points.empty()) points = {9, 13, 17, 21, 25, 29};
        System sys;
        deploy(sys, preset, 4, 2, seed);
        std::vector<BuiltTree> point_trees;
        std::vector<anyc_private_key*> point_keys;
        for (size_t X : points) {
            point_trees.push_back(chain_tree(X));
            point_keys.push_back(issue(sys, point_trees.back().leaves, seed));
        }
        const std::vector<uint8_t> payload = deterministic_payload(default_filesize, seed.value);
        for (size_t rep = 0; rep < reps; ++rep) {
            for (size_t i = 0; i < points.size(); ++i) {
                const BuiltTree& tree = point_trees[i];
                time_enc_dec(csv, sys, point_keys[i], {"read"}, {tree.policy}, payload, seed, 4,
                             tree.leaves.size(), tree.nodes, tree.mean_threshold, rep);
            }
        }
        for (anyc_private_key* sk : point_keys) anyc_private_key_free(sk);
    } else if (dimension == "filesize") {
        if (points.empty()) points = {10 * 1024, 100 * 1024, 1024 * 1024};
        System sys;
        deploy(sys, preset, 4, 2, seed);
        const BuiltTree tree = chain_tree(39); // 20 leaves in the read tree
        anyc_private_key* sk = issue(sys, tree.leaves, seed);
        for (size_t size : points) {
            const std::vector<uint8_t> payload = deterministic_payload(size, seed.value);
            for (size_t rep = 0; rep < reps; ++rep) {
                time_enc_dec(csv, sys, sk, {"read"}, {tree.policy}, payload, seed, 4,
                             tree.leaves.size(), tree.nodes, tree.mean_threshold, rep);
            }
        }
        anyc_private_key_free(sk);
    } else if (dimension == "trees") {
        if (points.empty()) points = {1, 2, 3, 4, 5};
        System sys;
        deploy(sys, preset, 4, 2, seed);
        const BuiltTree read_tree = chain_tree(39);
        std::vector<std::string> attrs = read_tree.leaves;
        attrs.push_back("Position:chair");
        anyc_private_key* sk = issue(sys, attrs, seed);
        const std::vector<uint8_t> payload = deterministic_payload(default_filesize, seed.value);
        for (size_t r : points) {
            if (r == 0) tool::die(kTool, 1, "a ciphertext needs at least one tree");
            std::vector<std::string> labels = {"read"};
            std::vector<std::string> policies = {read_tree.policy};
            for (size_t p = 1; p < r; ++p) {
                labels.push_back("op" + std::to_string(p));
                policies.push_back("Position:chair");
            }
            const size_t total_nodes = read_tree.nodes + (r - 1);
            for (size_t rep = 0; rep < reps; ++rep) {
                time_enc_dec(csv, sys, sk, labels, policies, payload, seed, 4, attrs.size(),
                             total_nodes, read_tree.mean_threshold, rep);
            }
        }
        anyc_private_key_free(sk);
    } else {
        tool::die(kTool, 1, "unknown dimension " + dimension +
                                " (expected authorities | attributes | nodes | filesize | trees)");
    }

    if (file != nullptr) std::fclose(file);
    return 0;
}
