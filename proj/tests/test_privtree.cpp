#include <doctest.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anonyabe/errors.hpp"
#include "anonyabe/privtree/tree.hpp"

using namespace anonyabe;

namespace {

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

TreeNode leaf(std::string attr) {
    TreeNode n;
    n.attribute = std::move(attr);
    return n;
}

TreeNode gate(uint32_t threshold, std::vector<TreeNode> children) {
    TreeNode n;
    n.threshold = threshold;
    n.children = std::move(children);
    return n;
}

PrivilegeTree read_tree(TreeNode root) {
    PrivilegeTree t;
    t.root = std::move(root);
    return t;
}

// Independent satisfaction oracle: a gate holds iff some child subset of
// size exactly `threshold` has every member satisfied.  The production code
// counts satisfied children instead, so agreement is meaningful.
bool brute_satisfies(const TreeNode& n, const AttributeSet& attrs) {
    if (n.is_leaf()) return attrs.count(n.attribute) != 0;
    std::function<bool(size_t, uint32_t)> pick = [&](size_t start, uint32_t chosen) -> bool {
        if (chosen == n.threshold) return true;
        for (size_t i = start; i < n.children.size(); ++i)
            if (brute_satisfies(n.children[i], attrs) && pick(i + 1, chosen + 1)) return true;
        return false;
    };
    return pick(0, 0);
}

// Random tree over the given attribute pool with at most `budget` nodes.
TreeNode random_tree(RngState& rng, size_t budget, const std::vector<std::string>& pool,
                     size_t depth = 0) {
    if (budget < 3 || depth >= 5 || rng.below(10) < 3)
        return leaf(pool[rng.below(pool.size())]);
    const size_t arity = 2 + rng.below(std::min<uint64_t>(4, budget - 1) - 1);
    TreeNode n;
    n.threshold = 1 + static_cast<uint32_t>(rng.below(arity));
    size_t left = budget - 1;
    for (size_t i = 0; i < arity; ++i) {
        const size_t slots = arity - i;
        // leave at least one node for each remaining child
        const size_t share = (i + 1 == arity) ? left : 1 + rng.below(left - (slots - 1));
        n.children.push_back(random_tree(rng, share, pool, depth + 1));
        left -= (i + 1 == arity) ? left : share;
    }
    return n;
}

std::vector<std::string> numbered_pool(size_t count) {
    std::vector<std::string> pool;
    for (size_t i = 0; i < count; ++i) pool.push_back("Dept:D" + std::to_string(i));
    return pool;
}

// Distinct attribute per leaf, so attribute subsets map one-to-one onto
// leaf subsets and recovery can be checked exhaustively.
void relabel_leaves(TreeNode& n, size_t& counter) {
    if (n.is_leaf()) {
        n.attribute = "Leaf:L" + std::to_string(counter++);
        return;
    }
    for (TreeNode& c : n.children) relabel_leaves(c, counter);
}

} // namespace

TEST_CASE("policy parsing produces the expected trees") {
    // "and" binds tighter than "or"
    CHECK(parse_policy("Sex:Male and Position:PhD or University:StateU") ==
          gate(1, {gate(2, {leaf("Sex:Male"), leaf("Position:PhD")}), leaf("University:StateU")}));
    // parentheses override precedence
    CHECK(parse_policy("Sex:Male and (Position:PhD or University:StateU)") ==
          gate(2, {leaf("Sex:Male"), gate(1, {leaf("Position:PhD"), leaf("University:StateU")})}));
    // chains flatten into a single gate
    CHECK(parse_policy("A and B and C") == gate(3, {leaf("A"), leaf("B"), leaf("C")}));
    CHECK(parse_policy("A or B or C") == gate(1, {leaf("A"), leaf("B"), leaf("C")}));
    // explicit parentheses keep the nested gate
    CHECK(parse_policy("A and (B and C)") == gate(2, {leaf("A"), gate(2, {leaf("B"), leaf("C")})}));
    // threshold gates
    CHECK(parse_policy("2 of (A, B, C)") == gate(2, {leaf("A"), leaf("B"), leaf("C")}));
    CHECK(parse_policy("2 of (A or B, C and D, E)") ==
          gate(2, {gate(1, {leaf("A"), leaf("B")}), gate(2, {leaf("C"), leaf("D")}), leaf("E")}));
    // a single attribute is a bare leaf
    CHECK(parse_policy("  Age:30+  ") == leaf("Age:30+"));
    // redundant parentheses collapse
    CHECK(parse_policy("((A))") == leaf("A"));
    // keywords are case sensitive; "And" is an attribute
    CHECK(parse_policy("2 of (And, B)") == gate(2, {leaf("And"), leaf("B")}));
}

TEST_CASE("policy parse errors carry a byte offset") {
    auto message_of = [](std::string_view text) -> std::string {
        try {
            parse_policy(text);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::format);
            return e.what();
        }
        return "";
    };
    CHECK(message_of("A and") == "policy: unexpected end of policy at offset 5");
    CHECK(message_of("and A") == "policy: unexpected 'and' at offset 0");
    CHECK(message_of("A B") == "policy: unexpected 'B' at offset 2");
    CHECK(message_of("(A or B") == "policy: expected ')' at offset 7");
    CHECK(message_of("A & B") == "policy: stray character '&' at offset 2");
    CHECK(message_of("A = B") == "policy: stray character '=' at offset 2");
    CHECK(message_of("5 of (A, B)") == "policy: threshold 5 out of range for 2 branches at offset 0");
    CHECK(message_of("0 of (A, B)") == "policy: threshold 0 out of range for 2 branches at offset 0");
    CHECK(message_of("1 of (A)") == "policy: threshold gate needs at least two branches at offset 0");
    CHECK(message_of("2 off (A, B)") == "policy: expected 'of' after threshold at offset 2");
    CHECK(message_of("") == "policy: unexpected end of policy at offset 0");
    CHECK(message_of("A or ()") == "policy: unexpected ')' at offset 6");
    CHECK(message_of("99999999 of (A, B)") == "policy: threshold too large at offset 0");

    // nesting bomb
    std::string deep(70, '(');
    deep += "A";
    deep.append(70, ')');
    CHECK(thrown_code([&] { parse_policy(deep); }) == Errc::format);
}

TEST_CASE("rendering is canonical and parse-stable") {
    auto canon = [](std::string_view text) { return render_policy(parse_policy(text)); };
    CHECK(canon("A and B or C") == "A and B or C");
    CHECK(canon("(A and B) or C") == "A and B or C");
    CHECK(canon("A and (B or C)") == "A and (B or C)");
    CHECK(canon("1 of (A, B)") == "A or B");
    CHECK(canon("3 of (A, B, C)") == "A and B and C");
    CHECK(canon("2 of (A, B, C)") == "2 of (A, B, C)");
    CHECK(canon("A and (B and C)") == "A and (B and C)");
    CHECK(canon("2 of (A or B, C)") == "(A or B) and C"); // a 2-of-2 gate is an and gate
    CHECK(canon("2 of (A, B, C) or D") == "2 of (A, B, C) or D");
    CHECK(canon("A or B and C") == "A or B and C");

    // parse(render(t)) == t on random trees
    RngState rng(uint64_t{411});
    const auto pool = numbered_pool(6);
    for (int trial = 0; trial < 300; ++trial) {
        const TreeNode t = random_tree(rng, 2 + rng.below(30), pool);
        const std::string text = render_policy(t);
        CHECK(parse_policy(text) == t);
    }
}

TEST_CASE("satisfaction matches the subset-enumeration oracle") {
    RngState rng(uint64_t{412});
    const auto pool = numbered_pool(7);
    for (int trial = 0; trial < 200; ++trial) {
        PrivilegeTree t = read_tree(random_tree(rng, 2 + rng.below(30), pool));
        REQUIRE(tree_node_count(t) <= 32);
        for (int round = 0; round < 8; ++round) {
            AttributeSet attrs;
            for (const auto& a : pool)
                if (rng.below(2)) attrs.insert(a);
            const bool got = satisfies(t, attrs);
            CHECK(got == brute_satisfies(t.root, attrs));
            // monotone: granting every attribute can only help
            if (got) CHECK(satisfies(t, AttributeSet(pool.begin(), pool.end())));
        }
        CHECK_FALSE(satisfies(t, {}));
    }
}

TEST_CASE("leaf paths and tree measures") {
    PrivilegeTree t = read_tree(parse_policy("A and (B or C)"));
    std::vector<std::pair<std::string, std::string>> seen;
    for_each_leaf(t, [&](const std::string& path, const std::string& attr) {
        seen.emplace_back(path, attr);
    });
    CHECK(seen == std::vector<std::pair<std::string, std::string>>{
                      {"1", "A"}, {"2.1", "B"}, {"2.2", "C"}});
    CHECK(tree_node_count(t) == 5);
    CHECK(tree_leaf_count(t) == 3);
    CHECK(tree_mean_threshold(t) == doctest::Approx(1.5));

    PrivilegeTree single = read_tree(parse_policy("A"));
    for_each_leaf(single, [&](const std::string& path, const std::string& attr) {
        CHECK(path == "");
        CHECK(attr == "A");
    });
    CHECK(tree_mean_threshold(single) == 0.0);

    CHECK(child_path("", 3) == "3");
    CHECK(child_path("2.1", 11) == "2.1.11");
}

TEST_CASE("tree validation rejects malformed shapes and labels") {
    CHECK(thrown_code([] { validate_node(gate(1, {leaf("A")})); }) == Errc::invalid_argument);
    CHECK(thrown_code([] { validate_node(gate(3, {leaf("A"), leaf("B")})); }) ==
          Errc::invalid_argument);
    CHECK(thrown_code([] { validate_node(gate(0, {leaf("A"), leaf("B")})); }) ==
          Errc::invalid_argument);
    CHECK(thrown_code([] { validate_node(leaf("")); }) == Errc::invalid_argument);
    TreeNode leaf_with_threshold = leaf("A");
    leaf_with_threshold.threshold = 1;
    CHECK(thrown_code([&] { validate_node(leaf_with_threshold); }) == Errc::invalid_argument);
    TreeNode gate_with_attr = gate(1, {leaf("A"), leaf("B")});
    gate_with_attr.attribute = "X";
    CHECK(thrown_code([&] { validate_node(gate_with_attr); }) == Errc::invalid_argument);

    PrivilegeTree t = read_tree(parse_policy("A or B"));
    t.label = "";
    CHECK(thrown_code([&] { validate_tree(t); }) == Errc::invalid_argument);
    t.label = "write";
    CHECK(thrown_code([&] { validate_tree(t); }) == Errc::invalid_argument); // index 0 is "read"
    t.privilege_index = 1;
    CHECK_NOTHROW(validate_tree(t));
}

TEST_CASE("flat secret recovery interpolates at zero") {
    const ParamsPtr pp = PairingParams::preset("toy");
    RngState rng(uint64_t{413});

    // f(x) = 7 + 3x + 11x^2 over the toy order 89
    auto f = [&](uint64_t x) {
        return Scalar::from_uint(pp, (7 + 3 * x + 11 * x * x) % 89);
    };
    for (auto indices : std::vector<std::vector<uint64_t>>{
             {1, 2, 3}, {2, 5, 9}, {1, 2, 3, 4}, {88, 3, 40}}) {
        std::vector<std::pair<uint64_t, Scalar>> points;
        for (uint64_t i : indices) points.emplace_back(i, f(i));
        CHECK(recover_secret(pp, points) == Scalar::from_uint(pp, 7));
    }
    // a single point recovers a constant
    CHECK(recover_secret(pp, {{5, Scalar::from_uint(pp, 42)}}) == Scalar::from_uint(pp, 42));
    // too few points give the wrong value, not an error
    CHECK(recover_secret(pp, {{1, f(1)}, {2, f(2)}}) != Scalar::from_uint(pp, 7));

    CHECK(thrown_code([&] { recover_secret(pp, {}); }) == Errc::invalid_argument);
    CHECK(thrown_code([&] {
              recover_secret(pp, {{1, f(1)}, {1, f(1)}});
          }) == Errc::invalid_argument);
    // indices 1 and 90 collide modulo the toy order
    CHECK(thrown_code([&] {
              recover_secret(pp, {{1, f(1)}, {90, f(2)}});
          }) == Errc::invalid_argument);
}

TEST_CASE("share assignment and recovery agree with satisfaction") {
    const ParamsPtr pp = PairingParams::preset("toy");
    RngState rng(uint64_t{414});

    SUBCASE("exhaustive over distinct-leaf trees") {
        for (int trial = 0; trial < 40; ++trial) {
            TreeNode root = random_tree(rng, 2 + rng.below(16), numbered_pool(4));
            size_t counter = 0;
            relabel_leaves(root, counter);
            PrivilegeTree t = read_tree(std::move(root));
            const size_t leaves = tree_leaf_count(t);
            REQUIRE(leaves <= 12);

            const Scalar secret = random_scalar(pp, rng);
            const ShareMap shares = assign_shares(t, secret, rng);
            CHECK(shares.root_secret == secret);
            CHECK(shares.shares.size() == leaves);

            for (uint64_t mask = 0; mask < (uint64_t{1} << leaves); ++mask) {
                AttributeSet attrs;
                for (size_t i = 0; i < leaves; ++i)
                    if (mask & (uint64_t{1} << i)) attrs.insert("Leaf:L" + std::to_string(i));
                const auto got = recover_tree_secret(t, shares, attrs);
                CHECK(got.has_value() == satisfies(t, attrs));
                if (got) CHECK(*got == secret);
            }
        }
    }

    SUBCASE("random trees with repeated attributes") {
        const auto pool = numbered_pool(5);
        for (int trial = 0; trial < 60; ++trial) {
            PrivilegeTree t = read_tree(random_tree(rng, 2 + rng.below(28), pool));
            const Scalar secret = random_scalar(pp, rng);
            const ShareMap shares = assign_shares(t, secret, rng);
            CHECK(shares.shares.size() == tree_leaf_count(t));
            for (int round = 0; round < 10; ++round) {
                AttributeSet attrs;
                for (const auto& a : pool)
                    if (rng.below(2)) attrs.insert(a);
                const auto got = recover_tree_secret(t, shares, attrs);
                CHECK(got.has_value() == satisfies(t, attrs));
                if (got) CHECK(*got == secret);
            }
        }
    }

    SUBCASE("an or gate hands every child the parent share") {
        PrivilegeTree t = read_tree(parse_policy("A or B or C"));
        const Scalar secret = Scalar::from_uint(pp, 17);
        const ShareMap shares = assign_shares(t, secret, rng);
        for (const auto& [path, share] : shares.shares) CHECK(share == secret);
    }

    SUBCASE("an and gate needs every share") {
        PrivilegeTree t = read_tree(parse_policy("A and B and C"));
        const Scalar secret = Scalar::from_uint(pp, 23);
        const ShareMap shares = assign_shares(t, secret, rng);
        CHECK(recover_tree_secret(t, shares, {"A", "B", "C"}) == secret);
        CHECK_FALSE(recover_tree_secret(t, shares, {"A", "B"}).has_value());
        // shares of a 3-of-3 gate interpolate back through the flat helper
        std::vector<std::pair<uint64_t, Scalar>> points{{1, shares.shares.at("1")},
                                                        {2, shares.shares.at("2")},
                                                        {3, shares.shares.at("3")}};
        CHECK(recover_secret(pp, points) == secret);
    }

    SUBCASE("duplicate attribute feeds both leaves") {
        PrivilegeTree t = read_tree(parse_policy("A and (A or B)"));
        const Scalar secret = Scalar::from_uint(pp, 31);
        const ShareMap shares = assign_shares(t, secret, rng);
        CHECK(shares.shares.size() == 3);
        CHECK(recover_tree_secret(t, shares, {"A"}) == secret);
        CHECK_FALSE(recover_tree_secret(t, shares, {"B"}).has_value());
    }

    SUBCASE("assignment is deterministic for a fixed rng stream") {
        PrivilegeTree t = read_tree(parse_policy("2 of (A, B, C) and D"));
        const Scalar secret = Scalar::from_uint(pp, 5);
        RngState r1(uint64_t{77}), r2(uint64_t{77});
        const ShareMap a = assign_shares(t, secret, r1);
        const ShareMap b = assign_shares(t, secret, r2);
        CHECK(a.shares == b.shares);
    }

    SUBCASE("missing share surfaces as an error, not a miss") {
        PrivilegeTree t = read_tree(parse_policy("A and B"));
        ShareMap shares = assign_shares(t, Scalar::from_uint(pp, 9), rng);
        shares.shares.erase("2");
        CHECK(thrown_code([&] { recover_tree_secret(t, shares, {"A", "B"}); }) ==
              Errc::invalid_argument);
    }
}

TEST_CASE("tree serialization round-trips and rejects malformed input") {
    RngState rng(uint64_t{415});
    const auto pool = numbered_pool(6);
    for (int trial = 0; trial < 200; ++trial) {
        PrivilegeTree t;
        t.privilege_index = static_cast<uint32_t>(rng.below(5));
        t.label = t.privilege_index == 0 ? "read" : "op" + std::to_string(t.privilege_index);
        t.root = random_tree(rng, 2 + rng.below(30), pool);
        ByteWriter w;
        serialize_tree(w, t);
        ByteReader r(w.bytes());
        CHECK(deserialize_tree(r) == t);
        r.expect_end("tree");
    }

    auto reject = [](std::initializer_list<uint8_t> raw) {
        Bytes b(raw);
        ByteReader r(b);
        return thrown_code([&] { deserialize_tree(r); });
    };
    // varint 0 index, label "read", then a bad node
    CHECK(reject({0, 4, 'r', 'e', 'a', 'd', 7}) == Errc::format);             // unknown kind
    CHECK(reject({0, 4, 'r', 'e', 'a', 'd', 1, 1, 1, 0, 0, 'x'}) == Errc::format); // one child
    CHECK(reject({0, 4, 'r', 'e', 'a', 'd', 1, 3, 2, 0, 1, 'a', 0, 1, 'b'}) ==
          Errc::format); // threshold 3 of 2
    CHECK(reject({0, 4, 'r', 'e', 'a', 'd', 1, 2, 200, 0, 1, 'a'}) ==
          Errc::format); // child count beyond input
    CHECK(reject({0, 4, 'r', 'e', 'a', 'd', 0, 0, 0, 0, 1, 'a'}) == Errc::format); // empty attribute
    CHECK(reject({0, 4, 'm', 'a', 'i', 'n', 0, 1, 'a'}) == Errc::format); // index 0 not "read"
    CHECK(reject({0, 4, 'r', 'e', 'a', 'd', 0, 1}) == Errc::format);      // truncated

    // depth bomb: nested 1-of-2 gates beyond the depth cap
    ByteWriter bomb;
    bomb.varint(0);
    bomb.lp_string("read");
    for (int i = 0; i < 80; ++i) {
        bomb.u8(1);
        bomb.varint(1);
        bomb.varint(2);
        bomb.u8(0);
        bomb.lp_string("pad");
    }
    ByteReader rb(bomb.bytes());
    CHECK(thrown_code([&] { deserialize_tree(rb); }) == Errc::format);
}
