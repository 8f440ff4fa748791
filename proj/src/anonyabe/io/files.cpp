#include "anonyabe/io/files.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "anonyabe/errors.hpp"

namespace anonyabe {

namespace fs = std::filesystem;

Bytes read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io, "cannot open " + path.string() + " for reading");
    Bytes content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) fail(Errc::io, "read error on " + path.string());
    return content;
}

namespace {

void write_atomic_impl(const fs::path& path, const char* data, size_t size) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(Errc::io, "cannot open " + tmp.string() + " for writing");
        out.write(data, static_cast<std::streamsize>(size));
        out.flush();
        if (!out) fail(Errc::io, "write error on " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(Errc::io, "cannot replace " + path.string());
    }
}

} // namespace

void write_file_atomic(const fs::path& path, const Bytes& content) {
    write_atomic_impl(path, reinterpret_cast<const char*>(content.data()), content.size());
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    write_atomic_impl(path, content.data(), content.size());
}

} // namespace anonyabe
