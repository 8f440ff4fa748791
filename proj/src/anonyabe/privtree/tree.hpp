#ifndef ANONYABE_PRIVTREE_TREE_HPP
#define ANONYABE_PRIVTREE_TREE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "anonyabe/algebra/bytes.hpp"
#include "anonyabe/algebra/group.hpp"
#include "anonyabe/algebra/rng.hpp"

namespace anonyabe {

/// Node of a privilege tree.  A node with no children is a leaf and names a
/// required attribute; any other node is a threshold gate that is satisfied
/// when at least `threshold` of its children are.  "and" is threshold = n,
/// "or" is threshold = 1.  Children are ordered; child i is addressed by
/// index i + 1 in share polynomials and paths.
struct TreeNode {
    std::string attribute;           // leaves only
    uint32_t threshold = 0;          // gates only
    std::vector<TreeNode> children;

    bool is_leaf() const { return children.empty(); }
    bool operator==(const TreeNode& o) const = default;
};

/// One privilege of a ciphertext: the tree plus its operation label and its
/// position p among the file's privileges.  Privilege 0 is always the read
/// privilege and carries the label "read".
struct PrivilegeTree {
    uint32_t privilege_index = 0;
    std::string label = "read";
    TreeNode root;

    bool operator==(const PrivilegeTree& o) const = default;
};

/// Attributes held by (or granted to) one user.
using AttributeSet = std::set<std::string>;

/// Secret shares produced by one tree's top-down split: q_leaf(0) per leaf,
/// keyed by the leaf's path, plus the root secret they hide.  A path lists
/// 1-based child indices from the root joined with '.'; the root is "".
struct ShareMap {
    std::map<std::string, Scalar> shares;
    Scalar root_secret;
};

std::string child_path(const std::string& parent, uint32_t index1);

/// Parses the policy grammar
///
///   EXPR    := OR
///   OR      := AND ("or" AND)*
///   AND     := PRIMARY ("and" PRIMARY)*
///   PRIMARY := ATTR | "(" EXPR ")" | INT "of" "(" EXPR ("," EXPR)+ ")"
///
/// "and" binds tighter than "or" and chains of one operator flatten into a
/// single gate, so "A and B and C" is one 3-of-3 gate.  Parentheses keep
/// their subtree, which fixes the tree shape.  Errors carry the byte offset
/// of the offending token.
TreeNode parse_policy(std::string_view text);

/// Canonical text form; parse_policy(render_policy(n)) reproduces n exactly.
std::string render_policy(const TreeNode& root);

/// Structural rules: leaves carry a non-empty attribute, gates have at
/// least two children and 1 <= threshold <= #children, depth <= 64; a
/// privilege at index 0 must be labeled "read", and labels are non-empty.
void validate_node(const TreeNode& root);
void validate_tree(const PrivilegeTree& tree);

bool satisfies(const PrivilegeTree& tree, const AttributeSet& attrs);

/// Attributes mentioned by the tree, in first-appearance order, no repeats.
std::vector<std::string> tree_attributes(const PrivilegeTree& tree);

size_t tree_node_count(const PrivilegeTree& tree);
size_t tree_leaf_count(const PrivilegeTree& tree);
/// Sum of gate thresholds divided by gate count; 0 for a single-leaf tree.
double tree_mean_threshold(const PrivilegeTree& tree);

/// Calls fn(path, attribute) for every leaf in preorder.
void for_each_leaf(const PrivilegeTree& tree,
                   const std::function<void(const std::string&, const std::string&)>& fn);

/// Top-down Shamir split of `secret` over the tree: every gate with
/// threshold k draws a polynomial q of degree exactly k - 1 with
/// q(0) = its own share, and child i receives q(i).
ShareMap assign_shares(const PrivilegeTree& tree, const Scalar& secret, RngState& rng);

/// Plain Lagrange combination at x = 0: returns sum share_i * L_{i,S}(0),
/// i.e. f(0) when given >= deg(f) + 1 points of f.  Indices must be
/// distinct.
Scalar recover_secret(const ParamsPtr& pp,
                      const std::vector<std::pair<uint64_t, Scalar>>& points);

/// Recursive in-the-clear mirror of the scheme's DecryptNode: reconstructs
/// the root secret from the shares of leaves whose attributes are in
/// `attrs`, combining the lexicographically smallest satisfying child
/// subset at every gate.  Empty when the tree is not satisfied.
std::optional<Scalar> recover_tree_secret(const PrivilegeTree& tree, const ShareMap& shares,
                                          const AttributeSet& attrs);

/// Canonical binary form (preorder), embedded in ciphertexts and digests.
void serialize_tree(ByteWriter& w, const PrivilegeTree& tree);
PrivilegeTree deserialize_tree(ByteReader& r);

} // namespace anonyabe

#endif
