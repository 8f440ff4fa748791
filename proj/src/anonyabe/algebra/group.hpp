#ifndef ANONYABE_ALGEBRA_GROUP_HPP
#define ANONYABE_ALGEBRA_GROUP_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "anonyabe/algebra/bytes.hpp"
#include "anonyabe/algebra/rng.hpp"

namespace anonyabe {

class PairingParams;
class Scalar;
class G0Element;
class GTElement;

using ParamsPtr = std::shared_ptr<const PairingParams>;

/// Parameters of a symmetric pairing built on the supersingular curve
/// y^2 = x^3 + x over F_q with q = 3 (mod 4).  The curve carries
/// q + 1 = h*p points; G0 is the subgroup of prime order p (written
/// multiplicatively throughout) and GT is the order-p subgroup of
/// F_{q^2}^*.  e: G0 x G0 -> GT is the Tate pairing composed with the
/// distortion map (x, y) -> (-x, i*y), which makes it symmetric and
/// non-degenerate on G0 x G0.
///
/// Two built-in presets:
///   "toy"  -- an 89-element group over an 11-bit field.  Small enough for
///             exhaustive cross-checks in tests; offers no security at all.
///   "demo" -- a 160-bit group order over a 511-bit field.
class PairingParams {
public:
    static ParamsPtr preset(std::string_view name);
    /// Lookup by the one-byte tag stored in file headers.
    static ParamsPtr by_id(uint8_t id);

    const std::string& name() const { return name_; }
    uint8_t id() const { return id_; }

    const mpz_class& field_prime() const { return q_; }
    const mpz_class& group_order() const { return p_; }
    const mpz_class& cofactor() const { return h_; }
    const mpz_class& generator_x() const { return gx_; }
    const mpz_class& generator_y() const { return gy_; }

    /// Width of one serialized field element / scalar, in bytes.
    size_t fe_bytes() const { return fe_bytes_; }
    size_t scalar_bytes() const { return scalar_bytes_; }
    /// Width of one serialized G0 point (compressed) / GT element.
    size_t g0_bytes() const { return fe_bytes_ + 1; }
    size_t gt_bytes() const { return 2 * fe_bytes_; }

    /// Multi-line, human-readable summary of the parameter set.
    std::string describe() const;

private:
    PairingParams() = default;

    std::string name_;
    uint8_t id_ = 0;
    mpz_class q_, p_, h_, gx_, gy_;
    size_t fe_bytes_ = 0, scalar_bytes_ = 0;
    mpz_class egg_a_, egg_b_; // cached e(g, g)

    friend GTElement gt_generator(const ParamsPtr& pp);
    static ParamsPtr build(std::string_view name, uint8_t id, const char* q_hex,
                           const char* p_hex, const char* h_hex, const char* gx_hex,
                           const char* gy_hex);
};

/// Integer modulo the group order p.  Immutable; arithmetic returns new
/// values.  Mixing scalars from different parameter sets is an error.
class Scalar {
public:
    Scalar() = default;

    static Scalar zero(const ParamsPtr& pp);
    static Scalar one(const ParamsPtr& pp);
    static Scalar from_uint(const ParamsPtr& pp, uint64_t v);
    /// Reduces v mod p (negative values wrap).
    static Scalar from_mpz(const ParamsPtr& pp, const mpz_class& v);
    /// Big-endian, exactly scalar_bytes() long; rejects values >= p.
    static Scalar from_bytes(const ParamsPtr& pp, const Bytes& in);

    Scalar add(const Scalar& o) const;
    Scalar sub(const Scalar& o) const;
    Scalar mul(const Scalar& o) const;
    Scalar neg() const;
    /// Multiplicative inverse mod p; fails on zero.
    Scalar inverse() const;

    bool is_zero() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Bytes to_bytes() const;
    const mpz_class& value() const { return v_; }
    const ParamsPtr& params() const { return pp_; }

private:
    Scalar(ParamsPtr pp, mpz_class v) : pp_(std::move(pp)), v_(std::move(v)) {}

    ParamsPtr pp_;
    mpz_class v_;
};

/// Element of G0.  mul() is the group operation, exp() exponentiation by a
/// scalar, identity() the neutral element.
class G0Element {
public:
    G0Element() = default;

    static G0Element identity(const ParamsPtr& pp);
    static G0Element generator(const ParamsPtr& pp);
    /// Accepts only points on the curve and inside the order-p subgroup;
    /// anything else fails with Errc::invalid_point.
    static G0Element from_bytes(const ParamsPtr& pp, const Bytes& in);

    G0Element mul(const G0Element& o) const;
    G0Element exp(const Scalar& k) const;
    G0Element inverse() const;

    bool is_identity() const { return inf_; }
    bool operator==(const G0Element& o) const;
    bool operator!=(const G0Element& o) const { return !(*this == o); }

    /// Compressed encoding: x as fe_bytes() big-endian, then one tag byte
    /// (0 = identity, 2 = even y, 3 = odd y).
    Bytes to_bytes() const;

    /// Affine coordinates; only meaningful when not the identity.
    const mpz_class& x() const { return x_; }
    const mpz_class& y() const { return y_; }
    const ParamsPtr& params() const { return pp_; }

private:
    G0Element(ParamsPtr pp, mpz_class x, mpz_class y, bool inf)
        : pp_(std::move(pp)), x_(std::move(x)), y_(std::move(y)), inf_(inf) {}

    ParamsPtr pp_;
    mpz_class x_, y_;
    bool inf_ = true;

    friend GTElement pairing(const G0Element& lhs, const G0Element& rhs);
    friend G0Element hash_to_group(const ParamsPtr& pp, std::string_view data);
};

/// Element of GT, stored as a + b*i in F_{q^2} = F_q[i] / (i^2 + 1).
class GTElement {
public:
    GTElement() = default;

    static GTElement one(const ParamsPtr& pp);
    /// Rejects encodings outside the order-p subgroup (Errc::invalid_point).
    static GTElement from_bytes(const ParamsPtr& pp, const Bytes& in);

    GTElement mul(const GTElement& o) const;
    GTElement div(const GTElement& o) const { return mul(o.inverse()); }
    GTElement exp(const Scalar& k) const;
    /// Conjugation; correct because every element of GT lies in the norm-1
    /// subgroup of F_{q^2}^*.
    GTElement inverse() const;

    bool is_one() const;
    bool operator==(const GTElement& o) const;
    bool operator!=(const GTElement& o) const { return !(*this == o); }

    /// a then b, fe_bytes() big-endian each.
    Bytes to_bytes() const;

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    const ParamsPtr& params() const { return pp_; }

private:
    GTElement(ParamsPtr pp, mpz_class a, mpz_class b)
        : pp_(std::move(pp)), a_(std::move(a)), b_(std::move(b)) {}

    ParamsPtr pp_;
    mpz_class a_, b_;

    friend GTElement pairing(const G0Element& lhs, const G0Element& rhs);
    friend GTElement gt_generator(const ParamsPtr& pp);
};

/// Symmetric bilinear pairing: e(g^a, g^b) = e(g, g)^(a*b).
GTElement pairing(const G0Element& lhs, const G0Element& rhs);

/// Cached e(g, g); never the identity.
GTElement gt_generator(const ParamsPtr& pp);

/// Deterministically maps an arbitrary string onto G0 (hash to an x
/// candidate, try-and-increment, clear the cofactor).
G0Element hash_to_group(const ParamsPtr& pp, std::string_view data);

/// Uniform scalar in [0, p) via rejection sampling.
Scalar random_scalar(const ParamsPtr& pp, RngState& rng);
/// Uniform scalar in [1, p).
Scalar random_scalar_nonzero(const ParamsPtr& pp, RngState& rng);

/// Lagrange basis coefficient Delta_{i,S}(x) over Z_p: the product of
/// (x - j) / (i - j) for j in S, j != i.  i must occur in S, and S must be
/// duplicate-free.  A singleton S yields 1.
Scalar lagrange_coeff(const ParamsPtr& pp, uint64_t i, const std::vector<uint64_t>& S,
                      uint64_t x = 0);

} // namespace anonyabe

#endif
