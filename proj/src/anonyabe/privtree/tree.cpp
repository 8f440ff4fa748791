#include "anonyabe/privtree/tree.hpp"

#include <algorithm>

#include "anonyabe/errors.hpp"

namespace anonyabe {

namespace {

constexpr size_t kMaxDepth = 64;

void validate_node_at(const TreeNode& n, size_t depth) {
    if (depth > kMaxDepth)
        fail(Errc::invalid_argument, "privilege tree deeper than 64 levels");
    if (n.is_leaf()) {
        if (n.attribute.empty())
            fail(Errc::invalid_argument, "privilege tree leaf with empty attribute");
        if (n.threshold != 0)
            fail(Errc::invalid_argument, "privilege tree leaf with a threshold");
        return;
    }
    if (!n.attribute.empty())
        fail(Errc::invalid_argument, "privilege tree gate carrying an attribute");
    if (n.children.size() < 2)
        fail(Errc::invalid_argument, "privilege tree gate with fewer than two children");
    if (n.threshold < 1 || n.threshold > n.children.size())
        fail(Errc::invalid_argument, "privilege tree gate threshold out of range");
    for (const TreeNode& c : n.children) validate_node_at(c, depth + 1);
}

bool satisfies_node(const TreeNode& n, const AttributeSet& attrs) {
    if (n.is_leaf()) return attrs.count(n.attribute) != 0;
    uint32_t hit = 0;
    for (const TreeNode& c : n.children) {
        if (satisfies_node(c, attrs) && ++hit == n.threshold) return true;
    }
    return false;
}

void collect_attributes(const TreeNode& n, std::vector<std::string>& out,
                        std::set<std::string>& seen) {
    if (n.is_leaf()) {
        if (seen.insert(n.attribute).second) out.push_back(n.attribute);
        return;
    }
    for (const TreeNode& c : n.children) collect_attributes(c, out, seen);
}

size_t count_nodes(const TreeNode& n) {
    size_t total = 1;
    for (const TreeNode& c : n.children) total += count_nodes(c);
    return total;
}

size_t count_leaves(const TreeNode& n) {
    if (n.is_leaf()) return 1;
    size_t total = 0;
    for (const TreeNode& c : n.children) total += count_leaves(c);
    return total;
}

void sum_thresholds(const TreeNode& n, uint64_t& sum, uint64_t& gates) {
    if (n.is_leaf()) return;
    sum += n.threshold;
    ++gates;
    for (const TreeNode& c : n.children) sum_thresholds(c, sum, gates);
}

void each_leaf(const TreeNode& n, const std::string& path,
               const std::function<void(const std::string&, const std::string&)>& fn) {
    if (n.is_leaf()) {
        fn(path, n.attribute);
        return;
    }
    for (size_t i = 0; i < n.children.size(); ++i)
        each_leaf(n.children[i], child_path(path, static_cast<uint32_t>(i + 1)), fn);
}

void assign_node(const TreeNode& n, const std::string& path, const Scalar& share,
                 RngState& rng, std::map<std::string, Scalar>& out) {
    if (n.is_leaf()) {
        out.emplace(path, share);
        return;
    }
    // q(0) = share; degree exactly threshold - 1, so the leading coefficient
    // is nonzero while the middle ones are uniform.
    const ParamsPtr& pp = share.params();
    std::vector<Scalar> coeffs;
    coeffs.reserve(n.threshold);
    coeffs.push_back(share);
    for (uint32_t d = 1; d + 1 < n.threshold; ++d) coeffs.push_back(random_scalar(pp, rng));
    if (n.threshold > 1) coeffs.push_back(random_scalar_nonzero(pp, rng));

    for (size_t i = 0; i < n.children.size(); ++i) {
        const Scalar x = Scalar::from_uint(pp, i + 1);
        Scalar q = coeffs.back();
        for (size_t d = coeffs.size() - 1; d-- > 0;) q = q.mul(x).add(coeffs[d]);
        assign_node(n.children[i], child_path(path, static_cast<uint32_t>(i + 1)), q, rng, out);
    }
}

std::optional<Scalar> recover_node(const TreeNode& n, const std::string& path,
                                   const ShareMap& shares, const AttributeSet& attrs,
                                   const ParamsPtr& pp) {
    if (n.is_leaf()) {
        if (attrs.count(n.attribute) == 0) return std::nullopt;
        auto it = shares.shares.find(path);
        if (it == shares.shares.end())
            fail(Errc::invalid_argument, "share map missing leaf " + (path.empty() ? "\"\"" : path));
        return it->second;
    }
    // First threshold satisfied children in index order: the
    // lexicographically smallest satisfying subset.
    std::vector<std::pair<uint64_t, Scalar>> points;
    for (size_t i = 0; i < n.children.size() && points.size() < n.threshold; ++i) {
        auto sub = recover_node(n.children[i], child_path(path, static_cast<uint32_t>(i + 1)),
                                shares, attrs, pp);
        if (sub) points.emplace_back(i + 1, *sub);
    }
    if (points.size() < n.threshold) return std::nullopt;
    return recover_secret(pp, points);
}

void serialize_node(ByteWriter& w, const TreeNode& n) {
    if (n.is_leaf()) {
        w.u8(0);
        w.lp_string(n.attribute);
        return;
    }
    w.u8(1);
    w.varint(n.threshold);
    w.varint(n.children.size());
    for (const TreeNode& c : n.children) serialize_node(w, c);
}

TreeNode deserialize_node(ByteReader& r, size_t depth) {
    if (depth > kMaxDepth) fail(Errc::format, "privilege tree deeper than 64 levels");
    TreeNode n;
    const uint8_t kind = r.u8();
    if (kind == 0) {
        n.attribute = r.lp_string();
        return n;
    }
    if (kind != 1) fail(Errc::format, "privilege tree node with unknown kind");
    const uint64_t threshold = r.varint();
    const uint64_t count = r.varint();
    if (count < 2) fail(Errc::format, "privilege tree gate with fewer than two children");
    if (count > r.remaining()) fail(Errc::format, "privilege tree gate child count exceeds input");
    if (threshold < 1 || threshold > count)
        fail(Errc::format, "privilege tree gate threshold out of range");
    n.threshold = static_cast<uint32_t>(threshold);
    n.children.reserve(count);
    for (uint64_t i = 0; i < count; ++i) n.children.push_back(deserialize_node(r, depth + 1));
    return n;
}

} // namespace

std::string child_path(const std::string& parent, uint32_t index1) {
    std::string path = parent;
    if (!path.empty()) path.push_back('.');
    path += std::to_string(index1);
    return path;
}

void validate_node(const TreeNode& root) { validate_node_at(root, 0); }

void validate_tree(const PrivilegeTree& tree) {
    if (tree.label.empty()) fail(Errc::invalid_argument, "privilege tree with empty label");
    if (tree.privilege_index == 0 && tree.label != "read")
        fail(Errc::invalid_argument, "privilege 0 must be labeled \"read\"");
    validate_node(tree.root);
}

bool satisfies(const PrivilegeTree& tree, const AttributeSet& attrs) {
    return satisfies_node(tree.root, attrs);
}

std::vector<std::string> tree_attributes(const PrivilegeTree& tree) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_attributes(tree.root, out, seen);
    return out;
}

size_t tree_node_count(const PrivilegeTree& tree) { return count_nodes(tree.root); }

size_t tree_leaf_count(const PrivilegeTree& tree) { return count_leaves(tree.root); }

double tree_mean_threshold(const PrivilegeTree& tree) {
    uint64_t sum = 0, gates = 0;
    sum_thresholds(tree.root, sum, gates);
    return gates ? static_cast<double>(sum) / static_cast<double>(gates) : 0.0;
}

void for_each_leaf(const PrivilegeTree& tree,
                   const std::function<void(const std::string&, const std::string&)>& fn) {
    each_leaf(tree.root, "", fn);
}

ShareMap assign_shares(const PrivilegeTree& tree, const Scalar& secret, RngState& rng) {
    validate_tree(tree);
    ShareMap out;
    out.root_secret = secret;
    assign_node(tree.root, "", secret, rng, out.shares);
    return out;
}

Scalar recover_secret(const ParamsPtr& pp,
                      const std::vector<std::pair<uint64_t, Scalar>>& points) {
    if (points.empty()) fail(Errc::invalid_argument, "secret recovery needs at least one point");
    std::vector<uint64_t> indices;
    indices.reserve(points.size());
    for (const auto& [i, share] : points) indices.push_back(i);
    Scalar acc = Scalar::zero(pp);
    for (const auto& [i, share] : points)
        acc = acc.add(share.mul(lagrange_coeff(pp, i, indices)));
    return acc;
}

std::optional<Scalar> recover_tree_secret(const PrivilegeTree& tree, const ShareMap& shares,
                                          const AttributeSet& attrs) {
    validate_tree(tree);
    return recover_node(tree.root, "", shares, attrs, shares.root_secret.params());
}

void serialize_tree(ByteWriter& w, const PrivilegeTree& tree) {
    validate_tree(tree);
    w.varint(tree.privilege_index);
    w.lp_string(tree.label);
    serialize_node(w, tree.root);
}

PrivilegeTree deserialize_tree(ByteReader& r) {
    PrivilegeTree tree;
    const uint64_t index = r.varint();
    if (index > 0xffffffffu) fail(Errc::format, "privilege index out of range");
    tree.privilege_index = static_cast<uint32_t>(index);
    tree.label = r.lp_string();
    tree.root = deserialize_node(r, 0);
    try {
        validate_tree(tree);
    } catch (const Error& e) {
        fail(Errc::format, e.what());
    }
    return tree;
}

} // namespace anonyabe
