#include "anonyabe/algebra/group.hpp"

#include <algorithm>
#include <sstream>

#include "anonyabe/algebra/digest.hpp"
#include "anonyabe/errors.hpp"

namespace anonyabe {

namespace {

// ------------------------------------------------------------- F_q helpers

mpz_class modp(const mpz_class& v, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class inv_mod(const mpz_class& v, const mpz_class& m, Errc code, const char* what) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()) == 0) fail(code, what);
    return r;
}

mpz_class pow_mod(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

void put_fixed(Bytes& out, const mpz_class& v, size_t width) {
    size_t off = out.size();
    out.resize(off + width, 0);
    if (v == 0) return;
    size_t need = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (need > width) fail(Errc::internal, "fixed-width encoding overflow");
    size_t count = 0;
    mpz_export(out.data() + off + (width - need), &count, 1, 1, 1, 0, v.get_mpz_t());
}

mpz_class get_fixed(const uint8_t* data, size_t width) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), width, 1, 1, 1, 0, data);
    return r;
}

void require_params(const ParamsPtr& pp, const char* what) {
    if (!pp) fail(Errc::invalid_argument, std::string(what) + ": empty element");
}

void require_same(const ParamsPtr& a, const ParamsPtr& b, const char* what) {
    require_params(a, what);
    require_params(b, what);
    if (a->id() != b->id())
        fail(Errc::invalid_argument, std::string(what) + ": mixed parameter sets");
}

// ---------------------------------------- affine points on y^2 = x^3 + x

struct Pt {
    mpz_class x, y;
    bool inf = true;
};

bool pt_on_curve(const Pt& a, const mpz_class& q) {
    if (a.inf) return true;
    return modp(a.y * a.y, q) == modp(a.x * a.x * a.x + a.x, q);
}

Pt pt_double(const Pt& a, const mpz_class& q) {
    if (a.inf || a.y == 0) return Pt{};
    mpz_class lam = modp((3 * a.x * a.x + 1) *
                             inv_mod(modp(2 * a.y, q), q, Errc::internal, "pt_double"),
                         q);
    mpz_class x3 = modp(lam * lam - 2 * a.x, q);
    mpz_class y3 = modp(lam * (a.x - x3) - a.y, q);
    return Pt{std::move(x3), std::move(y3), false};
}

Pt pt_add(const Pt& a, const Pt& b, const mpz_class& q) {
    if (a.inf) return b;
    if (b.inf) return a;
    if (a.x == b.x) {
        if (a.y == b.y) return pt_double(a, q);
        return Pt{}; // b == -a
    }
    mpz_class lam = modp((b.y - a.y) * inv_mod(modp(b.x - a.x, q), q, Errc::internal, "pt_add"),
                         q);
    mpz_class x3 = modp(lam * lam - a.x - b.x, q);
    mpz_class y3 = modp(lam * (a.x - x3) - a.y, q);
    return Pt{std::move(x3), std::move(y3), false};
}

Pt pt_mul(const Pt& a, const mpz_class& k, const mpz_class& q) {
    Pt r{};
    if (a.inf || k == 0) return r;
    long nbits = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2));
    for (long i = nbits - 1; i >= 0; --i) {
        r = pt_double(r, q);
        if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = pt_add(r, a, q);
    }
    return r;
}

// -------------------------------------- F_{q^2} = F_q[i] / (i^2 + 1)

struct Fp2 {
    mpz_class a, b;
};

Fp2 f2_one() { return Fp2{1, 0}; }

bool f2_is_one(const Fp2& v) { return v.a == 1 && v.b == 0; }

Fp2 f2_mul(const Fp2& u, const Fp2& v, const mpz_class& q) {
    return Fp2{modp(u.a * v.a - u.b * v.b, q), modp(u.a * v.b + u.b * v.a, q)};
}

Fp2 f2_sqr(const Fp2& u, const mpz_class& q) {
    return Fp2{modp((u.a + u.b) * (u.a - u.b), q), modp(2 * u.a * u.b, q)};
}

Fp2 f2_conj(const Fp2& u, const mpz_class& q) { return Fp2{u.a, modp(-u.b, q)}; }

Fp2 f2_inv(const Fp2& u, const mpz_class& q) {
    // 1/(a + bi) = (a - bi)/(a^2 + b^2); the norm never vanishes for
    // nonzero inputs because -1 is a non-residue mod q.
    mpz_class ninv = inv_mod(modp(u.a * u.a + u.b * u.b, q), q, Errc::internal, "f2_inv");
    return Fp2{modp(u.a * ninv, q), modp(-u.b * ninv, q)};
}

Fp2 f2_pow(const Fp2& u, const mpz_class& e, const mpz_class& q) {
    Fp2 r = f2_one();
    if (e == 0) return r;
    long nbits = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
    for (long i = nbits - 1; i >= 0; --i) {
        r = f2_sqr(r, q);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = f2_mul(r, u, q);
    }
    return r;
}

// --------------------------------------------------------------- pairing

// Tate pairing of two order-p points, with the distortion map
// phi(x, y) = (-x, i*y) applied to the second input.  A line
// Y - yT - lam*(X - xT) evaluated at phi(Q) is
//
//     (lam*(xQ + xT) - yT) + i*yQ,
//
// never zero since yQ != 0.  Vertical-line factors take values in F_q^*
// and are erased by the final exponentiation (q^2 - 1)/p = (q - 1)*h, so
// they are dropped throughout -- including the last addition step, where
// T reaches -P and the chord itself degenerates to a vertical.
Fp2 tate_raw(const Pt& P, const Pt& Q, const mpz_class& q, const mpz_class& p,
             const mpz_class& h) {
    Fp2 f = f2_one();
    Pt T = P;
    long nbits = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2));
    for (long i = nbits - 2; i >= 0; --i) {
        mpz_class lam = modp((3 * T.x * T.x + 1) *
                                 inv_mod(modp(2 * T.y, q), q, Errc::internal, "pairing"),
                             q);
        Fp2 line{modp(lam * (Q.x + T.x) - T.y, q), Q.y};
        f = f2_mul(f2_sqr(f, q), line, q);
        T = pt_double(T, q);
        if (T.inf) fail(Errc::internal, "pairing: point of low order");
        if (mpz_tstbit(p.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            if (T.x == P.x) {
                // T == -P (p odd rules out T == P here), so this is the
                // final addition and the factor is a dropped vertical.
                if (i != 0) fail(Errc::internal, "pairing: degenerate addition mid-loop");
                T = Pt{};
            } else {
                lam = modp((P.y - T.y) *
                               inv_mod(modp(P.x - T.x, q), q, Errc::internal, "pairing"),
                           q);
                Fp2 chord{modp(lam * (Q.x + T.x) - T.y, q), Q.y};
                f = f2_mul(f, chord, q);
                T = pt_add(T, P, q);
            }
        }
    }
    // Final exponentiation: f^(q-1) as conj(f)/f, then ^h.
    Fp2 z = f2_mul(f2_conj(f, q), f2_inv(f, q), q);
    return f2_pow(z, h, q);
}

} // namespace

// --------------------------------------------------------- PairingParams

ParamsPtr PairingParams::build(std::string_view name, uint8_t id, const char* q_hex,
                               const char* p_hex, const char* h_hex, const char* gx_hex,
                               const char* gy_hex) {
    auto par = std::shared_ptr<PairingParams>(new PairingParams());
    par->name_ = std::string(name);
    par->id_ = id;
    par->q_ = mpz_class(q_hex, 16);
    par->p_ = mpz_class(p_hex, 16);
    par->h_ = mpz_class(h_hex, 16);
    par->gx_ = mpz_class(gx_hex, 16);
    par->gy_ = mpz_class(gy_hex, 16);
    par->fe_bytes_ = (mpz_sizeinbase(par->q_.get_mpz_t(), 2) + 7) / 8;
    par->scalar_bytes_ = (mpz_sizeinbase(par->p_.get_mpz_t(), 2) + 7) / 8;

    // The constants are compiled in; check them once at first use so that a
    // typo cannot produce a silently broken group.
    if (mpz_probab_prime_p(par->q_.get_mpz_t(), 30) == 0 ||
        mpz_probab_prime_p(par->p_.get_mpz_t(), 30) == 0)
        fail(Errc::internal, "pairing preset: q and p must be prime");
    if (par->q_ % 4 != 3) fail(Errc::internal, "pairing preset: q must be 3 mod 4");
    if (par->q_ + 1 != par->h_ * par->p_) fail(Errc::internal, "pairing preset: q + 1 != h*p");
    Pt g{par->gx_, par->gy_, false};
    if (!pt_on_curve(g, par->q_)) fail(Errc::internal, "pairing preset: generator off curve");
    if (!pt_mul(g, par->p_, par->q_).inf)
        fail(Errc::internal, "pairing preset: generator order is not p");
    Fp2 egg = tate_raw(g, g, par->q_, par->p_, par->h_);
    if (f2_is_one(egg)) fail(Errc::internal, "pairing preset: e(g, g) is degenerate");
    par->egg_a_ = egg.a;
    par->egg_b_ = egg.b;
    return par;
}

ParamsPtr PairingParams::preset(std::string_view name) {
    if (name == "toy") {
        static ParamsPtr par = build("toy", 1,
                                     /* q  */ "58f",
                                     /* p  */ "59",
                                     /* h  */ "10",
                                     /* gx */ "67",
                                     /* gy */ "1b3");
        return par;
    }
    if (name == "demo") {
        static ParamsPtr par = build(
            "demo", 2,
            /* q  */
            "67846f7af437784f15fcdfd6c99e222dc413c93a8052723e572bc6cfe9692c66"
            "c5ba66fd5330fb1ca8b7adb1e82cade989b4f97d42ecb52ffeb5cd759e6f5e0b",
            /* p  */ "85e87961b7ceb41bc078be25076bf32c166e97e7",
            /* h  */
            "c5e67131df7d03a8f4d471a9edf1615e8ff134f214d0d34bb93866c758a3b680"
            "5c62647283e1df9ec4688014",
            /* gx */
            "424c467399601806bc7b72f61267f480eea38eb3f7f940359ec8ce9da88fd34c"
            "7c869b29400d12819e7f935e60d853edde643ec4a9710d6f7f43bc316ba7ea09",
            /* gy */
            "651b4fead71a66b60dca292786894e4179d9686630bcb447180f3304ebaa8de5"
            "d0989592ad2066157991e27eaa11ec3fee8798c261a8dc2a541c441a3ebaf997");
        return par;
    }
    fail(Errc::invalid_argument, "unknown pairing preset: " + std::string(name));
}

ParamsPtr PairingParams::by_id(uint8_t id) {
    if (id == 1) return preset("toy");
    if (id == 2) return preset("demo");
    fail(Errc::format, "unknown pairing preset id " + std::to_string(id));
}

std::string PairingParams::describe() const {
    std::ostringstream os;
    os << "preset:       " << name_ << "\n";
    os << "curve:        y^2 = x^3 + x over F_q, q = 3 (mod 4)\n";
    os << "q (field):    0x" << q_.get_str(16) << " (" << mpz_sizeinbase(q_.get_mpz_t(), 2)
       << " bits)\n";
    os << "p (order):    0x" << p_.get_str(16) << " (" << mpz_sizeinbase(p_.get_mpz_t(), 2)
       << " bits)\n";
    os << "h (cofactor): 0x" << h_.get_str(16) << "\n";
    os << "g:            (0x" << gx_.get_str(16) << ", 0x" << gy_.get_str(16) << ")\n";
    os << "pairing:      Tate with distortion map (x, y) -> (-x, i*y); GT in F_{q^2}\n";
    return os.str();
}

// ----------------------------------------------------------------- Scalar

Scalar Scalar::zero(const ParamsPtr& pp) {
    require_params(pp, "Scalar::zero");
    return Scalar(pp, 0);
}

Scalar Scalar::one(const ParamsPtr& pp) {
    require_params(pp, "Scalar::one");
    return Scalar(pp, 1);
}

Scalar Scalar::from_uint(const ParamsPtr& pp, uint64_t v) {
    require_params(pp, "Scalar::from_uint");
    return Scalar(pp, modp(mpz_class(static_cast<unsigned long>(v)), pp->group_order()));
}

Scalar Scalar::from_mpz(const ParamsPtr& pp, const mpz_class& v) {
    require_params(pp, "Scalar::from_mpz");
    return Scalar(pp, modp(v, pp->group_order()));
}

Scalar Scalar::from_bytes(const ParamsPtr& pp, const Bytes& in) {
    require_params(pp, "Scalar::from_bytes");
    if (in.size() != pp->scalar_bytes()) fail(Errc::format, "scalar: wrong encoded length");
    mpz_class v = get_fixed(in.data(), in.size());
    if (v >= pp->group_order()) fail(Errc::format, "scalar: value out of range");
    return Scalar(pp, std::move(v));
}

Scalar Scalar::add(const Scalar& o) const {
    require_same(pp_, o.pp_, "Scalar::add");
    return Scalar(pp_, modp(v_ + o.v_, pp_->group_order()));
}

Scalar Scalar::sub(const Scalar& o) const {
    require_same(pp_, o.pp_, "Scalar::sub");
    return Scalar(pp_, modp(v_ - o.v_, pp_->group_order()));
}

Scalar Scalar::mul(const Scalar& o) const {
    require_same(pp_, o.pp_, "Scalar::mul");
    return Scalar(pp_, modp(v_ * o.v_, pp_->group_order()));
}

Scalar Scalar::neg() const {
    require_params(pp_, "Scalar::neg");
    return Scalar(pp_, modp(-v_, pp_->group_order()));
}

Scalar Scalar::inverse() const {
    require_params(pp_, "Scalar::inverse");
    if (v_ == 0) fail(Errc::invalid_argument, "Scalar::inverse: zero has no inverse");
    return Scalar(pp_, inv_mod(v_, pp_->group_order(), Errc::internal, "Scalar::inverse"));
}

bool Scalar::is_zero() const {
    require_params(pp_, "Scalar::is_zero");
    return v_ == 0;
}

bool Scalar::operator==(const Scalar& o) const {
    require_same(pp_, o.pp_, "Scalar::compare");
    return v_ == o.v_;
}

Bytes Scalar::to_bytes() const {
    require_params(pp_, "Scalar::to_bytes");
    Bytes out;
    put_fixed(out, v_, pp_->scalar_bytes());
    return out;
}

// -------------------------------------------------------------- G0Element

G0Element G0Element::identity(const ParamsPtr& pp) {
    require_params(pp, "G0Element::identity");
    return G0Element(pp, 0, 0, true);
}

G0Element G0Element::generator(const ParamsPtr& pp) {
    require_params(pp, "G0Element::generator");
    return G0Element(pp, pp->generator_x(), pp->generator_y(), false);
}

G0Element G0Element::mul(const G0Element& o) const {
    require_same(pp_, o.pp_, "G0Element::mul");
    Pt r = pt_add(Pt{x_, y_, inf_}, Pt{o.x_, o.y_, o.inf_}, pp_->field_prime());
    return G0Element(pp_, std::move(r.x), std::move(r.y), r.inf);
}

G0Element G0Element::exp(const Scalar& k) const {
    require_same(pp_, k.params(), "G0Element::exp");
    Pt r = pt_mul(Pt{x_, y_, inf_}, k.value(), pp_->field_prime());
    return G0Element(pp_, std::move(r.x), std::move(r.y), r.inf);
}

G0Element G0Element::inverse() const {
    require_params(pp_, "G0Element::inverse");
    if (inf_) return *this;
    return G0Element(pp_, x_, modp(-y_, pp_->field_prime()), false);
}

bool G0Element::operator==(const G0Element& o) const {
    require_same(pp_, o.pp_, "G0Element::compare");
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return x_ == o.x_ && y_ == o.y_;
}

Bytes G0Element::to_bytes() const {
    require_params(pp_, "G0Element::to_bytes");
    Bytes out;
    if (inf_) {
        out.assign(pp_->fe_bytes(), 0);
        out.push_back(0);
    } else {
        put_fixed(out, x_, pp_->fe_bytes());
        out.push_back(mpz_odd_p(y_.get_mpz_t()) ? 3 : 2);
    }
    return out;
}

G0Element G0Element::from_bytes(const ParamsPtr& pp, const Bytes& in) {
    require_params(pp, "G0Element::from_bytes");
    if (in.size() != pp->g0_bytes()) fail(Errc::format, "G0 element: wrong encoded length");
    uint8_t tag = in.back();
    mpz_class x = get_fixed(in.data(), pp->fe_bytes());
    const mpz_class& q = pp->field_prime();
    if (tag == 0) {
        if (x != 0) fail(Errc::format, "G0 element: identity with nonzero x");
        return identity(pp);
    }
    if (tag != 2 && tag != 3) fail(Errc::format, "G0 element: bad tag byte");
    if (x >= q) fail(Errc::invalid_point, "G0 element: x out of range");
    mpz_class t = modp(x * x * x + x, q);
    mpz_class y = pow_mod(t, (q + 1) / 4, q);
    if (modp(y * y, q) != t) fail(Errc::invalid_point, "G0 element: x not on the curve");
    bool is_odd = mpz_odd_p(y.get_mpz_t()) != 0;
    if (is_odd != (tag == 3)) y = modp(-y, q);
    Pt P{x, y, false};
    if (!pt_mul(P, pp->group_order(), q).inf)
        fail(Errc::invalid_point, "G0 element: not in the order-p subgroup");
    return G0Element(pp, std::move(x), std::move(y), false);
}

// -------------------------------------------------------------- GTElement

GTElement GTElement::one(const ParamsPtr& pp) {
    require_params(pp, "GTElement::one");
    return GTElement(pp, 1, 0);
}

GTElement GTElement::mul(const GTElement& o) const {
    require_same(pp_, o.pp_, "GTElement::mul");
    Fp2 r = f2_mul(Fp2{a_, b_}, Fp2{o.a_, o.b_}, pp_->field_prime());
    return GTElement(pp_, std::move(r.a), std::move(r.b));
}

GTElement GTElement::exp(const Scalar& k) const {
    require_same(pp_, k.params(), "GTElement::exp");
    Fp2 r = f2_pow(Fp2{a_, b_}, k.value(), pp_->field_prime());
    return GTElement(pp_, std::move(r.a), std::move(r.b));
}

GTElement GTElement::inverse() const {
    require_params(pp_, "GTElement::inverse");
    return GTElement(pp_, a_, modp(-b_, pp_->field_prime()));
}

bool GTElement::is_one() const {
    require_params(pp_, "GTElement::is_one");
    return a_ == 1 && b_ == 0;
}

bool GTElement::operator==(const GTElement& o) const {
    require_same(pp_, o.pp_, "GTElement::compare");
    return a_ == o.a_ && b_ == o.b_;
}

Bytes GTElement::to_bytes() const {
    require_params(pp_, "GTElement::to_bytes");
    Bytes out;
    put_fixed(out, a_, pp_->fe_bytes());
    put_fixed(out, b_, pp_->fe_bytes());
    return out;
}

GTElement GTElement::from_bytes(const ParamsPtr& pp, const Bytes& in) {
    require_params(pp, "GTElement::from_bytes");
    if (in.size() != pp->gt_bytes()) fail(Errc::format, "GT element: wrong encoded length");
    const mpz_class& q = pp->field_prime();
    mpz_class a = get_fixed(in.data(), pp->fe_bytes());
    mpz_class b = get_fixed(in.data() + pp->fe_bytes(), pp->fe_bytes());
    if (a >= q || b >= q) fail(Errc::invalid_point, "GT element: coordinate out of range");
    if (a == 0 && b == 0) fail(Errc::invalid_point, "GT element: zero is not a unit");
    if (!f2_is_one(f2_pow(Fp2{a, b}, pp->group_order(), q)))
        fail(Errc::invalid_point, "GT element: not in the order-p subgroup");
    return GTElement(pp, std::move(a), std::move(b));
}

// --------------------------------------------------------- free functions

GTElement pairing(const G0Element& lhs, const G0Element& rhs) {
    require_same(lhs.params(), rhs.params(), "pairing");
    const ParamsPtr& pp = lhs.params();
    if (lhs.inf_ || rhs.inf_) return GTElement::one(pp);
    Fp2 z = tate_raw(Pt{lhs.x_, lhs.y_, false}, Pt{rhs.x_, rhs.y_, false}, pp->field_prime(),
                     pp->group_order(), pp->cofactor());
    return GTElement(pp, std::move(z.a), std::move(z.b));
}

GTElement gt_generator(const ParamsPtr& pp) {
    require_params(pp, "gt_generator");
    return GTElement(pp, pp->egg_a_, pp->egg_b_);
}

G0Element hash_to_group(const ParamsPtr& pp, std::string_view data) {
    require_params(pp, "hash_to_group");
    const mpz_class& q = pp->field_prime();
    const mpz_class sqrt_exp = (q + 1) / 4;
    Bytes msg = to_bytes(data);
    for (uint32_t ctr = 0;; ++ctr) {
        // Expand the input to fe_bytes of digest material for an x candidate.
        Bytes material;
        uint32_t block = 0;
        while (material.size() < pp->fe_bytes()) {
            ByteWriter w;
            w.u32(ctr);
            w.u32(block++);
            Digest32 d = sha256_tagged("anonyabe.hash-to-group", {msg, w.take()});
            material.insert(material.end(), d.begin(), d.end());
        }
        material.resize(pp->fe_bytes());
        mpz_class x = modp(get_fixed(material.data(), material.size()), q);
        mpz_class t = modp(x * x * x + x, q);
        mpz_class y = pow_mod(t, sqrt_exp, q);
        if (modp(y * y, q) != t) continue; // x is not on the curve; try again
        if (mpz_odd_p(y.get_mpz_t())) y = modp(-y, q); // canonical root: even y
        // Clear the cofactor to land in the order-p subgroup.  h is even
        // (q + 1 is even, p odd), so this also flushes the order-2 point.
        Pt P = pt_mul(Pt{x, y, false}, pp->cofactor(), q);
        if (P.inf) continue;
        return G0Element(pp, std::move(P.x), std::move(P.y), false);
    }
}

Scalar random_scalar(const ParamsPtr& pp, RngState& rng) {
    require_params(pp, "random_scalar");
    const mpz_class& p = pp->group_order();
    size_t nbytes = pp->scalar_bytes();
    unsigned shift = static_cast<unsigned>(8 * nbytes - mpz_sizeinbase(p.get_mpz_t(), 2));
    for (;;) {
        Bytes buf = rng.bytes(nbytes);
        buf[0] = static_cast<uint8_t>(buf[0] >> shift); // trim to the bit length of p
        mpz_class v = get_fixed(buf.data(), buf.size());
        if (v < p) return Scalar::from_mpz(pp, v);
    }
}

Scalar random_scalar_nonzero(const ParamsPtr& pp, RngState& rng) {
    for (;;) {
        Scalar s = random_scalar(pp, rng);
        if (!s.is_zero()) return s;
    }
}

Scalar lagrange_coeff(const ParamsPtr& pp, uint64_t i, const std::vector<uint64_t>& S,
                      uint64_t x) {
    require_params(pp, "lagrange_coeff");
    std::vector<uint64_t> sorted(S);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(Errc::invalid_argument, "lagrange_coeff: duplicate index in S");
    const mpz_class& p = pp->group_order();
    mpz_class xi(static_cast<unsigned long>(x)), ii(static_cast<unsigned long>(i));
    mpz_class num = 1, den = 1;
    bool found = false;
    for (uint64_t j : S) {
        if (j == i) {
            found = true;
            continue;
        }
        mpz_class jj(static_cast<unsigned long>(j));
        num = modp(num * (xi - jj), p);
        den = modp(den * (ii - jj), p);
    }
    if (!found) fail(Errc::invalid_argument, "lagrange_coeff: i must be a member of S");
    return Scalar::from_mpz(
        pp, num * inv_mod(den, p, Errc::invalid_argument,
                          "lagrange_coeff: indices collide modulo the group order"));
}

} // namespace anonyabe
