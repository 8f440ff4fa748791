#ifndef ANONYABE_TOOLS_COMMON_HPP
#define ANONYABE_TOOLS_COMMON_HPP

// Shared plumbing for the anonyabe-* tools: file I/O, seed handling, and
// the mapping from library error codes to the tools' exit-code contract:
//   0 success, 1 usage, 2 I/O or malformed data, 3 policy or privilege
//   refused, 4 verification failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <anonycontrol.h>

namespace tool {

/// Owning wrapper so every anyc_buf is released exactly once.
struct Buf {
    anyc_buf buf{};
    Buf() = default;
    ~Buf() { anyc_buf_free(&buf); }
    Buf(const Buf&) = delete;
    Buf& operator=(const Buf&) = delete;
    anyc_buf* out() { return &buf; }
    const uint8_t* data() const { return buf.data; }
    size_t size() const { return buf.len; }
    std::string str() const { return std::string(reinterpret_cast<const char*>(buf.data), buf.len); }
};

inline int exit_code(int err) {
    switch (err) {
        case ANYC_OK: return 0;
        case ANYC_ERR_INVALID: return 1;
        case ANYC_ERR_POLICY:
        case ANYC_ERR_PRIVILEGE: return 3;
        case ANYC_ERR_VERIFY: return 4;
        default: return 2;
    }
}

/// Checks a library call; on failure prints the error and exits with the
/// mapped code.
inline void check(const char* tool_name, int err) {
    if (err == ANYC_OK) return;
    std::fprintf(stderr, "%s: %s\n", tool_name, anyc_last_error());
    std::exit(exit_code(err));
}

[[noreturn]] inline void die(const char* tool_name, int code, const std::string& message) {
    std::fprintf(stderr, "%s: %s\n", tool_name, message.c_str());
    std::exit(code);
}

inline std::vector<uint8_t> read_file(const char* tool_name, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die(tool_name, 2, "cannot open " + path + " for reading");
    std::vector<uint8_t> content((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
    if (in.bad()) die(tool_name, 2, "read error on " + path);
    return content;
}

inline void write_file(const char* tool_name, const std::string& path, const uint8_t* data,
                       size_t len) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) die(tool_name, 2, "cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(len));
    out.flush();
    if (!out) die(tool_name, 2, "write error on " + path);
}

inline void write_file(const char* tool_name, const std::string& path,
                       const std::vector<uint8_t>& content) {
    write_file(tool_name, path, content.data(), content.size());
}

/// Explicit --seed values make a run fully reproducible; without one the
/// library draws from the entropy pool.
struct Seed {
    bool set = false;
    uint64_t value = 0;
    std::vector<uint8_t> bytes_le;

    const uint8_t* data() {
        if (!set) return nullptr;
        bytes_le.resize(8);
        for (int i = 0; i < 8; ++i) bytes_le[i] = static_cast<uint8_t>(value >> (8 * i));
        return bytes_le.data();
    }
    size_t size() const { return set ? 8 : 0; }
};

inline std::string default_preset() {
    const char* env = std::getenv("ANONYABE_PRESET");
    return (env != nullptr && *env != '\0') ? env : "demo";
}

/// "label=policy" → {label, policy}; a bare policy gets "read" for the
/// first tree and "op<index>" afterwards.
struct LabeledPolicy {
    std::string label;
    std::string policy;
};

inline LabeledPolicy split_policy(const std::string& text, size_t index) {
    const size_t eq = text.find('=');
    if (eq != std::string::npos)
        return {text.substr(0, eq), text.substr(eq + 1)};
    return {index == 0 ? "read" : "op" + std::to_string(index), text};
}

} // namespace tool

#endif
