#include "anonyabe/server/store.hpp"

#include <fstream>
#include <mutex>
#include <sstream>
#include <system_error>

#include "anonyabe/algebra/digest.hpp"
#include "anonyabe/errors.hpp"
#include "anonyabe/formats/formats.hpp"
#include "anonyabe/io/files.hpp"

namespace anonyabe {

namespace fs = std::filesystem;

Bytes privilege_digest(const GTElement& value, const Bytes& nonce) {
    Bytes input = value.to_bytes();
    input.insert(input.end(), nonce.begin(), nonce.end());
    return digest_bytes(sha256(input));
}

CloudStore::CloudStore(fs::path root, RngState rng) : root_(std::move(root)), rng_(std::move(rng)) {
    std::error_code ec;
    fs::create_directories(root_ / "files", ec);
    if (ec) fail(Errc::io, "cannot create store directory " + root_.string());
    load_index();
}

fs::path CloudStore::record_dir(const std::string& file_id) const {
    return root_ / "files" / file_id;
}

void CloudStore::load_index() {
    const fs::path path = root_ / "index";
    std::ifstream in(path);
    if (!in) return; // fresh store
    std::string id;
    uint64_t seq = 0;
    while (in >> id >> seq) {
        index_[id] = seq;
        if (seq > seq_) seq_ = seq;
    }
}

void CloudStore::write_index_locked() {
    std::ostringstream out;
    for (const auto& [id, seq] : index_) out << id << ' ' << seq << '\n';
    write_file_atomic(root_ / "index", out.str());
}

void CloudStore::audit_locked(const std::string& line) {
    std::ofstream out(root_ / "audit.log", std::ios::app);
    out << line << '\n';
}

StoredMeta CloudStore::read_meta_locked(const std::string& file_id) const {
    const Bytes raw = read_file(record_dir(file_id) / "meta");
    std::istringstream in(std::string(raw.begin(), raw.end()));
    StoredMeta meta;
    std::string line;
    while (std::getline(in, line)) {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "file_id") meta.file_id = value;
        else if (key == "size") meta.size = std::stoull(value);
        else if (key == "privileges") meta.privileges = static_cast<uint32_t>(std::stoul(value));
        else if (key == "seq") meta.seq = std::stoull(value);
    }
    if (meta.file_id != file_id) fail(Errc::io, "metadata for " + file_id + " is damaged");
    return meta;
}

void CloudStore::write_record_locked(const std::string& file_id, const Bytes& header,
                                     const Bytes& sealed, const Bytes& vr_blob, uint64_t seq) {
    const fs::path dir = record_dir(file_id);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(Errc::io, "cannot create record directory " + dir.string());

    write_file_atomic(dir / "ct.bin", header);
    write_file_atomic(dir / "payload.bin", sealed);
    write_file_atomic(dir / "vr.bin", vr_blob);

    const Ciphertext ct = parse_ciphertext_header(header);
    std::ostringstream text;
    text << "file_id=" << file_id << '\n'
         << "size=" << sealed.size() << '\n'
         << "privileges=" << ct.privilege_count() << '\n'
         << "seq=" << seq << '\n';
    write_file_atomic(dir / "meta", text.str());

    index_[file_id] = seq;
    write_index_locked();
}

namespace {

/// Shared validation for store and replace: both blobs parse, agree on file
/// id and privilege count, and come from the same parameter preset.
struct ParsedRecord {
    Ciphertext ct;
    VerificationSet vr;
};

ParsedRecord parse_record(const Bytes& ct_blob, const Bytes& vr_blob) {
    ParsedRecord rec{parse_ciphertext(ct_blob), parse_verification(vr_blob)};
    if (rec.vr.file_id != rec.ct.file_id)
        fail(Errc::invalid_argument, "verification set names file " + rec.vr.file_id +
                                         " but the ciphertext is " + rec.ct.file_id);
    if (rec.vr.privilege_count() != rec.ct.privilege_count())
        fail(Errc::invalid_argument, "verification set carries " +
                                         std::to_string(rec.vr.entries.size()) +
                                         " entries for a ciphertext with " +
                                         std::to_string(rec.ct.privilege_count()) + " privileges");
    if (!rec.vr.entries.empty() &&
        rec.vr.entries.front().params()->id() != rec.ct.params()->id())
        fail(Errc::invalid_argument, "ciphertext and verification set use different presets");
    return rec;
}

} // namespace

std::string CloudStore::store(const Bytes& ct_blob, const Bytes& vr_blob) {
    const ParsedRecord rec = parse_record(ct_blob, vr_blob);
    const std::string& id = rec.ct.file_id;

    std::unique_lock lock(mutex_);
    if (index_.count(id) != 0) {
        const fs::path dir = record_dir(id);
        Bytes existing = read_file(dir / "ct.bin");
        const Bytes sealed = read_file(dir / "payload.bin");
        ByteWriter w;
        w.raw(existing);
        w.lp_bytes(sealed);
        if (w.take() == ct_blob && read_file(dir / "vr.bin") == vr_blob) {
            audit_locked("op=store file=" + id + " result=duplicate");
            return id; // idempotent
        }
        fail(Errc::conflict, "file " + id + " already stored with different content");
    }

    const uint64_t seq = ++seq_;
    write_record_locked(id, serialize_ciphertext_header(rec.ct), rec.ct.payload.sealed, vr_blob,
                        seq);
    audit_locked("seq=" + std::to_string(seq) + " op=store file=" + id +
                 " privileges=" + std::to_string(rec.ct.privilege_count()) +
                 " size=" + std::to_string(rec.ct.payload.sealed.size()));
    return id;
}

Bytes CloudStore::fetch(const std::string& file_id) const {
    std::shared_lock lock(mutex_);
    if (index_.count(file_id) == 0) fail(Errc::not_found, "no stored file " + file_id);
    const fs::path dir = record_dir(file_id);
    ByteWriter w;
    w.raw(read_file(dir / "ct.bin"));
    w.lp_bytes(read_file(dir / "payload.bin"));
    return w.take();
}

StoredMeta CloudStore::describe(const std::string& file_id) const {
    std::shared_lock lock(mutex_);
    if (index_.count(file_id) == 0) fail(Errc::not_found, "no stored file " + file_id);
    return read_meta_locked(file_id);
}

std::vector<std::string> CloudStore::list() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> ids;
    ids.reserve(index_.size());
    for (const auto& [id, seq] : index_) ids.push_back(id);
    return ids;
}

Challenge CloudStore::open_challenge(const std::string& file_id, uint32_t privilege) {
    std::unique_lock lock(mutex_);
    if (index_.count(file_id) == 0) fail(Errc::not_found, "no stored file " + file_id);
    const StoredMeta meta = read_meta_locked(file_id);
    if (privilege == 0)
        fail(Errc::invalid_argument, "privilege 0 is an ungated read; nothing to challenge");
    if (privilege >= meta.privileges)
        fail(Errc::invalid_argument, "file " + file_id + " has no privilege " +
                                         std::to_string(privilege));

    Challenge ch{rng_.bytes(16), file_id, privilege, meta.seq};
    challenges_[hex_encode(ch.nonce)] = PendingChallenge{ch, false};
    audit_locked("op=challenge file=" + file_id + " p=" + std::to_string(privilege));
    return ch;
}

bool CloudStore::verify_privilege(const OperationRequest& request) {
    std::unique_lock lock(mutex_);
    const std::string key = hex_encode(request.nonce);
    const std::string tail = " file=" + request.file_id + " p=" + std::to_string(request.privilege);

    auto it = challenges_.find(key);
    if (it == challenges_.end() || it->second.verified) {
        audit_locked("op=verify" + tail + " ok=0 replay=1");
        return false;
    }

    const Challenge ch = it->second.challenge;
    challenges_.erase(it); // spent no matter what; re-inserted below if it passes

    bool ok = ch.file_id == request.file_id && ch.privilege == request.privilege &&
              index_.count(ch.file_id) != 0;
    if (ok) {
        const StoredMeta meta = read_meta_locked(ch.file_id);
        ok = meta.seq == ch.expiry_seq; // expired once the file mutates
    }
    if (ok) {
        const VerificationSet vr = parse_verification(read_file(record_dir(ch.file_id) / "vr.bin"));
        const Bytes expected = privilege_digest(vr.entries[ch.privilege - 1], ch.nonce);
        ok = expected == request.digest;
    }
    if (ok) challenges_[key] = PendingChallenge{ch, true};
    audit_locked("op=verify" + tail + (ok ? " ok=1" : " ok=0") + " replay=0");
    return ok;
}

Outcome CloudStore::execute_operation(const OperationRequest& request,
                                      const std::optional<Bytes>& new_ct,
                                      const std::optional<Bytes>& new_vr) {
    if (new_ct.has_value() != new_vr.has_value())
        fail(Errc::invalid_argument, "replacement needs both a ciphertext and a verification set");

    std::unique_lock lock(mutex_);
    const std::string key = hex_encode(request.nonce);
    auto it = challenges_.find(key);
    const bool authorized = it != challenges_.end() && it->second.verified &&
                            it->second.challenge.file_id == request.file_id &&
                            it->second.challenge.privilege == request.privilege;
    if (!authorized)
        fail(Errc::verification_failed,
             "operation on " + request.file_id + " was not verified");
    challenges_.erase(it);

    if (!new_ct.has_value()) {
        const uint64_t seq = ++seq_;
        std::error_code ec;
        fs::remove_all(record_dir(request.file_id), ec);
        if (ec) fail(Errc::io, "cannot delete record " + request.file_id);
        index_.erase(request.file_id);
        write_index_locked();
        audit_locked("seq=" + std::to_string(seq) + " op=delete file=" + request.file_id +
                     " p=" + std::to_string(request.privilege));
        return Outcome::deleted;
    }

    const ParsedRecord rec = parse_record(*new_ct, *new_vr);
    if (rec.ct.file_id != request.file_id)
        fail(Errc::invalid_argument, "replacement ciphertext carries file id " + rec.ct.file_id +
                                         " instead of " + request.file_id);
    const uint64_t seq = ++seq_;
    write_record_locked(request.file_id, serialize_ciphertext_header(rec.ct),
                        rec.ct.payload.sealed, *new_vr, seq);
    audit_locked("seq=" + std::to_string(seq) + " op=replace file=" + request.file_id +
                 " p=" + std::to_string(request.privilege) +
                 " privileges=" + std::to_string(rec.ct.privilege_count()));
    return Outcome::replaced;
}

} // namespace anonyabe
