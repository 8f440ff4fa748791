#include "anonyabe/authorities/authority.hpp"

#include <algorithm>
#include <numeric>

#include "anonyabe/errors.hpp"

namespace anonyabe {

namespace {

const std::vector<std::string>& standard_categories() {
    static const std::vector<std::string> cats{"Sex",      "Nationality", "University",
                                               "Position", "Age",         "Religion",
                                               "Degree",   "Affiliation"};
    return cats;
}

void validate_config(const AuthorityConfig& config) {
    if (config.N == 0) fail(Errc::invalid_argument, "authority count must be positive");
    if (config.cluster_size == 0 || config.cluster_size > config.N)
        fail(Errc::invalid_argument, "cluster size must be in [1, N]");
    if (config.cluster_size == 1 && config.N > 1)
        fail(Errc::invalid_argument, "a cluster of one authority cannot blind its master share");
    std::set<std::string> seen;
    for (const auto& [k, cell] : config.attribute_partition) {
        if (k >= config.N)
            fail(Errc::invalid_argument,
                 "partition names authority " + std::to_string(k) + " of " +
                     std::to_string(config.N));
        for (const std::string& cat : cell)
            if (!seen.insert(cat).second)
                fail(Errc::invalid_argument, "category " + cat + " owned by two authorities");
    }
}

// In-phase delivery permutation; seed 0 keeps the natural order.
std::vector<size_t> delivery_order(size_t count, uint64_t seed, uint64_t phase_salt) {
    std::vector<size_t> order(count);
    std::iota(order.begin(), order.end(), size_t{0});
    if (seed == 0) return order;
    RngState rng(seed ^ phase_salt);
    for (size_t i = count; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    return order;
}

void deliver(std::vector<AuthorityState>& states, SetupTranscript* transcript,
             std::vector<Message> batch, uint64_t seed, uint64_t phase_salt) {
    for (size_t i : delivery_order(batch.size(), seed, phase_salt)) {
        Message& m = batch[i];
        if (transcript) transcript->record(m);
        states[static_cast<size_t>(m.from)].outbox.push_back(m);
        if (m.to == kBroadcastAddr) {
            for (AuthorityState& s : states)
                if (static_cast<int32_t>(s.index) != m.from) s.inbox.push_back(m);
        } else if (m.to >= 0) {
            states[static_cast<size_t>(m.to)].inbox.push_back(m);
        }
        // user-bound frames stay in the sender's outbox; the caller owns
        // the user side
    }
}

Bytes g0_payload(const G0Element& x) {
    ByteWriter w;
    w.lp_bytes(x.to_bytes());
    return w.take();
}

std::string split_category(const std::string& attribute) {
    const size_t colon = attribute.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == attribute.size())
        fail(Errc::invalid_argument,
             "attribute \"" + attribute + "\" is not of the form Category:Value");
    return attribute.substr(0, colon);
}

} // namespace

std::optional<uint32_t> AuthorityConfig::owner_of(const std::string& category) const {
    for (const auto& [k, cell] : attribute_partition)
        if (cell.count(category)) return k;
    return std::nullopt;
}

AuthorityConfig standard_config(uint32_t N, uint32_t cluster_size) {
    if (N == 0) fail(Errc::invalid_argument, "authority count must be positive");
    AuthorityConfig config;
    config.N = N;
    config.cluster_size = cluster_size;
    const auto& cats = standard_categories();
    for (size_t i = 0; i < cats.size(); ++i)
        config.attribute_partition[static_cast<uint32_t>(i % N)].insert(cats[i]);
    validate_config(config);
    return config;
}

std::vector<std::pair<uint32_t, uint32_t>> cluster_ranges(uint32_t N, uint32_t cluster_size) {
    std::vector<std::pair<uint32_t, uint32_t>> ranges;
    const uint32_t clusters = std::max<uint32_t>(1, N / cluster_size);
    for (uint32_t t = 0; t < clusters; ++t) {
        const uint32_t first = t * cluster_size;
        const uint32_t last = (t + 1 == clusters) ? N : first + cluster_size;
        ranges.emplace_back(first, last);
    }
    return ranges;
}

SetupResult run_setup(const ParamsPtr& params, const AuthorityConfig& config, RngState& rng) {
    validate_config(config);
    const uint32_t N = config.N;
    const G0Element g = G0Element::generator(params);

    SetupResult out;
    out.states.resize(N);
    const auto ranges = cluster_ranges(N, config.cluster_size);
    for (uint32_t k = 0; k < N; ++k) {
        out.states[k].index = k;
        auto cell = config.attribute_partition.find(k);
        if (cell != config.attribute_partition.end()) out.states[k].categories = cell->second;
        for (size_t t = 0; t < ranges.size(); ++t)
            if (k >= ranges[t].first && k < ranges[t].second)
                out.states[k].cluster = static_cast<uint32_t>(t);
    }

    // Each authority consumes its own forked stream, so neither cluster
    // layout nor delivery order can shift another authority's draws.  The
    // session draw advances the caller's rng, keeping repeated setups
    // distinct.
    const RngState session = rng.fork(rng.next_u64());
    std::vector<RngState> streams;
    streams.reserve(N);
    for (uint32_t k = 0; k < N; ++k) streams.push_back(session.fork(k));

    // phase 1: everyone broadcasts Y_k = e(g,g)^{v_k}
    std::vector<Scalar> v;
    std::vector<GTElement> y_shares;
    std::vector<Message> phase1;
    for (uint32_t k = 0; k < N; ++k) {
        v.push_back(random_scalar(params, streams[k]));
        y_shares.push_back(gt_generator(params).exp(v.back()));
        ByteWriter w;
        w.lp_bytes(y_shares.back().to_bytes());
        phase1.push_back(Message{MsgTag::yshare, static_cast<int32_t>(k), kBroadcastAddr, 1,
                                 w.take()});
    }
    deliver(out.states, &out.transcript, std::move(phase1), config.delivery_seed, 0xA11CE);

    // phase 2: pairwise blinding shares g^{s_kj} within each cluster
    std::vector<std::vector<G0Element>> sent(N), received(N);
    std::vector<Message> phase2;
    for (const auto& [first, last] : ranges) {
        for (uint32_t k = first; k < last; ++k) {
            for (uint32_t j = first; j < last; ++j) {
                if (j == k) continue;
                const Scalar s_kj = random_scalar(params, streams[k]);
                const G0Element share = g.exp(s_kj);
                sent[k].push_back(share);
                received[j].push_back(share);
                phase2.push_back(Message{MsgTag::blind, static_cast<int32_t>(k),
                                         static_cast<int32_t>(j), 2, g0_payload(share)});
            }
        }
    }
    deliver(out.states, &out.transcript, std::move(phase2), config.delivery_seed, 0xB0B);

    // phase 3: no messages — every authority folds its blinder and master
    // share locally, and computes Y from the broadcasts on its own
    for (uint32_t k = 0; k < N; ++k) {
        const G0Element x_k =
            N == 1 ? G0Element::identity(params) : compute_blinder(sent[k], received[k]);
        out.states[k].mk = MasterKeyShare{k, v[k], x_k};
    }
    out.pk = combine_public(y_shares, params, g);
    return out;
}

KeyRequest make_request(const AuthorityConfig& config, const std::string& gid,
                        const AttributeSet& attrs, RngState& rng) {
    validate_config(config);
    if (attrs.empty()) fail(Errc::invalid_argument, "a key request needs at least one attribute");

    KeyRequest request;
    request.gid = gid;
    do {
        request.nym = hex_encode(rng.bytes(16));
    } while (request.nym == gid);

    for (const std::string& att : attrs) {
        const std::string category = split_category(att);
        const auto owner = config.owner_of(category);
        if (!owner)
            fail(Errc::invalid_argument, "no authority owns the category " + category);
        request.attributes[*owner].insert(att);
    }
    return request;
}

PrivateKey issue_key(std::vector<AuthorityState>& states, const KeyRequest& request,
                     RngState& rng, SessionSecrets* escrow) {
    if (states.empty()) fail(Errc::invalid_argument, "no authorities");
    for (const AuthorityState& s : states)
        if (!s.mk) fail(Errc::invalid_argument, "setup has not completed");
    if (request.nym.empty() || request.nym == request.gid)
        fail(Errc::invalid_argument, "request lacks a fresh pseudonym");

    size_t requested = 0;
    for (const auto& [k, slice] : request.attributes) {
        if (k >= states.size())
            fail(Errc::invalid_argument, "request names authority " + std::to_string(k));
        for (const std::string& att : slice) {
            if (!states[k].categories.count(split_category(att)))
                fail(Errc::invalid_argument,
                     "authority " + std::to_string(k) + " does not own " + att);
            ++requested;
        }
    }
    if (requested == 0) fail(Errc::invalid_argument, "a key request needs at least one attribute");

    const ParamsPtr& pp = states[0].mk->v.params();
    const G0Element g = G0Element::generator(pp);
    const int32_t merger = static_cast<int32_t>(states.front().index);

    // phase 1: contributions to the merger, commitments and attribute
    // parts to the user
    std::vector<G0Element> contribs;
    std::vector<G0Element> dcommits;
    std::map<std::string, AttributePart> parts;
    std::vector<Message> mail;
    for (AuthorityState& s : states) {
        const Scalar d_k = random_scalar(pp, rng);
        if (escrow) escrow->d.push_back(d_k);
        const G0Element contrib = s.mk->x.mul(g.exp(s.mk->v)).mul(g.exp(d_k));
        const G0Element dcommit = g.exp(d_k);
        contribs.push_back(contrib);
        dcommits.push_back(dcommit);
        mail.push_back(Message{MsgTag::contrib, static_cast<int32_t>(s.index), merger, 1,
                               g0_payload(contrib)});
        mail.push_back(Message{MsgTag::dcommit, static_cast<int32_t>(s.index), kUserAddr, 1,
                               g0_payload(dcommit)});

        const auto slice = request.attributes.find(s.index);
        if (slice == request.attributes.end()) continue;
        for (const std::string& att : slice->second) {
            const Scalar r_i = random_scalar_nonzero(pp, rng);
            if (escrow) escrow->r.emplace(att, r_i);
            auto [h_r, g_r] = keygen_attribute_part(att, r_i);
            parts.emplace(att, AttributePart{h_r, g_r});
            ByteWriter w;
            w.lp_string(att);
            w.lp_bytes(h_r.to_bytes());
            w.lp_bytes(g_r.to_bytes());
            mail.push_back(Message{MsgTag::attrpart, static_cast<int32_t>(s.index), kUserAddr, 1,
                                   w.take()});
        }
    }
    deliver(states, nullptr, std::move(mail), 0, 0);

    // phase 2: the merger folds D = prod x_k g^{v_k} g^{d_k} and hands it
    // to the user; the x_k cancel without the merger learning any v sum
    G0Element D = contribs[0];
    for (size_t i = 1; i < contribs.size(); ++i) D = D.mul(contribs[i]);
    deliver(states, nullptr, {Message{MsgTag::merged, merger, kUserAddr, 2, g0_payload(D)}}, 0, 0);

    // user-side aggregation: the merged D and the commitment product play
    // the role of single pre-folded contributions
    G0Element d_product = dcommits[0];
    for (size_t i = 1; i < dcommits.size(); ++i) d_product = d_product.mul(dcommits[i]);
    return keygen_merge({D}, {d_product}, parts);
}

CompromiseReport simulate_compromise(const std::vector<AuthorityState>& states,
                                     const std::set<uint32_t>& subset) {
    if (states.empty()) fail(Errc::invalid_argument, "no authorities");
    for (const AuthorityState& s : states)
        if (!s.mk) fail(Errc::invalid_argument, "setup has not completed");
    for (uint32_t k : subset)
        if (k >= states.size())
            fail(Errc::invalid_argument, "subset names authority " + std::to_string(k));

    const ParamsPtr& pp = states[0].mk->v.params();
    const G0Element g = G0Element::generator(pp);

    CompromiseReport report;
    report.partial_master = G0Element::identity(pp);
    G0Element blinder_product = G0Element::identity(pp);
    Scalar v_sum = Scalar::zero(pp);
    for (uint32_t k : subset) {
        const AuthorityState& s = states[k];
        blinder_product = blinder_product.mul(s.mk->x);
        v_sum = v_sum.add(s.mk->v);
        for (const std::string& cat : s.categories) report.mintable_categories.insert(cat);
    }
    report.partial_master = g.exp(v_sum);
    report.blinders_cancel = !subset.empty() && blinder_product.is_identity();
    // the missing v_k exist only inside pairing values Y_k, so the full
    // master is out of reach until every share is revealed
    report.master_assembled = subset.size() == states.size();

    // cluster-local cancellation: all-but-one of a cluster revealed gives
    // away the last member's blinder
    std::map<uint32_t, std::vector<uint32_t>> clusters;
    for (const AuthorityState& s : states) clusters[s.cluster].push_back(s.index);
    for (const auto& [cluster, members] : clusters) {
        std::vector<uint32_t> missing;
        G0Element revealed = G0Element::identity(pp);
        for (uint32_t k : members) {
            if (subset.count(k))
                revealed = revealed.mul(states[k].mk->x);
            else
                missing.push_back(k);
        }
        if (missing.size() == 1)
            report.recovered_blinders.emplace(missing[0], revealed.inverse());
    }
    return report;
}

} // namespace anonyabe
