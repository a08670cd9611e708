#include "isosym/generators.hpp"

#include "isosym/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace isosym {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl64(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t derive_seed(std::uint64_t seed, int attempt) {
    std::uint64_t s = seed ^ (0xA0761D6478BD642Full * static_cast<std::uint64_t>(attempt + 1));
    return splitmix64(s);
}

// Internal signal: a candidate instance failed its own certification and the
// builder should retry with a derived seed.
struct CertFailure {
    std::string what;
};

void certify(std::map<std::string, double>& cert, const std::string& label,
             double residual, double bound) {
    cert[label] = residual;
    if (!(residual <= bound)) throw CertFailure{label};
}

} // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Xoshiro256pp::next() {
    const std::uint64_t result = rotl64(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl64(s_[3], 45);
    return result;
}

double Xoshiro256pp::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Xoshiro256pp::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Xoshiro256pp::gauss() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
}

cd Xoshiro256pp::cgauss() {
    const double inv_sqrt2 = 0.7071067811865475244;
    return cd(gauss() * inv_sqrt2, gauss() * inv_sqrt2);
}

int Xoshiro256pp::uniform_int(int lo, int hi) {
    if (hi <= lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(next() % span);
}

int GenSpec::param(const std::string& key, int fallback) const {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

CMatrix jordan_block(cd lambda, int k) {
    if (k < 1) throw Error("dim-mismatch", "jordan_block needs k >= 1");
    CMatrix j(k);
    for (int i = 0; i < k; ++i) {
        j(i, i) = lambda;
        if (i + 1 < k) j(i, i + 1) = 1.0;
    }
    return j;
}

CMatrix random_unitary(const GenSpec& spec) {
    if (spec.dim < 1 || spec.dim > dim_limits().max_instance)
        throw Error("dim-too-large", "unitary dim cap is " +
                                         std::to_string(dim_limits().max_instance));
    Xoshiro256pp rng(spec.seed);
    const int d = spec.dim;
    CMatrix g(d);
    for (cd& z : g.data()) z = rng.cgauss();
    // Modified Gram-Schmidt on columns, run twice.
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < j; ++k) {
                cd dot{};
                for (int i = 0; i < d; ++i) dot += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < d; ++i) g(i, j) -= dot * g(i, k);
            }
            double nn = 0.0;
            for (int i = 0; i < d; ++i) nn += std::norm(g(i, j));
            nn = std::sqrt(nn);
            if (nn < 1e-12) {  // essentially impossible; restart column
                for (int i = 0; i < d; ++i) g(i, j) = rng.cgauss();
                --j;
                continue;
            }
            for (int i = 0; i < d; ++i) g(i, j) /= nn;
        }
    }
    return g;
}

CMatrix random_selfadjoint(const GenSpec& spec) {
    if (spec.dim < 1 || spec.dim > dim_limits().max_instance)
        throw Error("dim-too-large", "selfadjoint dim cap is " +
                                         std::to_string(dim_limits().max_instance));
    Xoshiro256pp rng(spec.seed);
    const int d = spec.dim;
    CMatrix g(d);
    for (cd& z : g.data()) z = rng.cgauss();
    CMatrix h = cd(0.5, 0.0) * (g + adjoint(g));
    // Exact Hermitian symmetry, not just up to rounding.
    for (int i = 0; i < d; ++i) {
        h(i, i) = cd(h(i, i).real(), 0.0);
        for (int j = i + 1; j < d; ++j) h(j, i) = std::conj(h(i, j));
    }
    return h;
}

std::vector<CMatrix> commuting_family(const GenSpec& spec, int count) {
    if (count < 1 || count > 6)
        throw Error("config-error", "commuting_family count must lie in 1..6");
    const int d = spec.dim;
    if (d < 1 || d > dim_limits().max_instance)
        throw Error("dim-too-large", "family dim cap");
    const bool nilpotent = spec.param("nilpotent", 0) != 0;
    Xoshiro256pp rng(spec.seed);
    CMatrix j(d);
    for (int r = 0; r < d; ++r) {
        if (!nilpotent) j(r, r) = 0.6 * rng.cgauss();
        for (int c = r + 1; c < d; ++c) j(r, c) = 0.45 * rng.cgauss();
    }
    const auto jp = power_table(j, d - 1);
    std::vector<CMatrix> out;
    out.reserve(count);
    const int k0 = nilpotent ? 1 : 0;
    for (int i = 0; i < count; ++i) {
        CMatrix p(d);
        double fade = 1.0;
        for (int k = k0; k <= d - 1; ++k) {
            p += (fade * rng.cgauss()) * jp[k];
            fade *= 0.7;
        }
        out.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Commutative-algebra machinery shared by the structured instance builders.
//
// All operators are of the form  D (I + Q)  where D is a blockwise-scalar
// diagonal (signature or phases) and Q is a blockwise polynomial, with zero
// constant term, in one fixed block nilpotent.  Any two such matrices
// commute exactly, and the defect transforms restricted to block-diagonal
// X are nilpotent with computable orders.
// ---------------------------------------------------------------------------

namespace {

struct Partition {
    std::vector<int> sizes;
    std::vector<int> offsets;
    int dim = 0;

    int blocks() const { return static_cast<int>(sizes.size()); }
    int max_size() const {
        int m = 0;
        for (int s : sizes) m = std::max(m, s);
        return m;
    }
};

Partition make_partition(const std::vector<int>& sizes) {
    Partition p;
    p.sizes = sizes;
    int off = 0;
    for (int s : sizes) {
        p.offsets.push_back(off);
        off += s;
    }
    p.dim = off;
    return p;
}

Partition random_partition(Xoshiro256pp& rng, int dim, int max_block) {
    std::vector<int> sizes;
    int left = dim;
    while (left > 0) {
        const int s = std::min(left, rng.uniform_int(1, std::min(max_block, left)));
        sizes.push_back(s);
        left -= s;
    }
    return make_partition(sizes);
}

// Block-diagonal base nilpotent: per block, the superdiagonal carries
// entries of modulus in [0.7, 1.3] with random phases.
CMatrix base_nilpotent(Xoshiro256pp& rng, const Partition& part) {
    CMatrix n(part.dim);
    for (int b = 0; b < part.blocks(); ++b) {
        const int off = part.offsets[b], s = part.sizes[b];
        for (int i = 0; i + 1 < s; ++i) {
            const double mag = rng.uniform(0.7, 1.3);
            const double th = rng.uniform(0.0, kTwoPi);
            n(off + i, off + i + 1) = cd(mag * std::cos(th), mag * std::sin(th));
        }
    }
    return n;
}

CMatrix signature_diag(Xoshiro256pp& rng, const Partition& part) {
    CMatrix d(part.dim);
    for (int b = 0; b < part.blocks(); ++b) {
        const double v = rng.uniform() < 0.5 ? -1.0 : 1.0;
        for (int i = 0; i < part.sizes[b]; ++i)
            d(part.offsets[b] + i, part.offsets[b] + i) = v;
    }
    return d;
}

CMatrix phase_diag(Xoshiro256pp& rng, const Partition& part) {
    CMatrix d(part.dim);
    for (int b = 0; b < part.blocks(); ++b) {
        const double th = rng.uniform(0.0, kTwoPi);
        const cd v(std::cos(th), std::sin(th));
        for (int i = 0; i < part.sizes[b]; ++i)
            d(part.offsets[b] + i, part.offsets[b] + i) = v;
    }
    return d;
}

CMatrix block_diag_random(Xoshiro256pp& rng, const Partition& part) {
    CMatrix x(part.dim);
    for (int b = 0; b < part.blocks(); ++b) {
        const int off = part.offsets[b], s = part.sizes[b];
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) x(off + i, off + j) = rng.cgauss();
    }
    const double nrm = fro_norm(x);
    if (nrm > 0) x *= cd(std::sqrt(double(part.dim)) / nrm, 0.0);
    return x;
}

/// Exact nilpotency order: smallest k >= 1 with Q^k = 0.  Strictly
/// block-triangular inputs reach structural (exact) zero.
int nilpotency_order(const CMatrix& q) {
    if (fro_norm(q) == 0.0) return 1;
    CMatrix p = q;
    for (int k = 2; k <= q.dim() + 1; ++k) {
        p = p * q;
        if (fro_norm(p) == 0.0) return k;
    }
    return q.dim() + 1;
}

/// Achievable nilpotency orders over this partition (per-block polynomials
/// of minimum degree k have order ceil(s/k) on a block of size s).
std::vector<int> achievable_orders(const Partition& part, int cap) {
    std::vector<int> out = {1};
    for (int s : part.sizes) {
        for (int k = 1; k <= s; ++k) {
            const int nu = (s + k - 1) / k;
            if (nu <= cap && std::find(out.begin(), out.end(), nu) == out.end())
                out.push_back(nu);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Blockwise polynomial in the base nilpotent with nilpotency order exactly
/// `target` (blocks that cannot reach `target` get lower-order or zero
/// contributions).
CMatrix nilpotent_of_order(Xoshiro256pp& rng, const Partition& part,
                           const CMatrix& nj, int target) {
    CMatrix q(part.dim);
    if (target <= 1) return q;
    const auto njp = power_table(nj, std::max(1, part.max_size() - 1));
    bool achieved = false;
    for (int b = 0; b < part.blocks(); ++b) {
        const int off = part.offsets[b], s = part.sizes[b];
        if (s < 2) continue;
        const int k0 = (s + target - 1) / target;          // smallest degree with order <= target
        const int reach = (s + k0 - 1) / k0;               // order that degree attains
        if (reach > target) continue;                      // block cannot participate
        for (int k = k0; k <= s - 1; ++k) {
            double mag = rng.uniform(0.10, 0.90);
            if (k == k0 && reach == target) mag = rng.uniform(0.6, 1.2);
            const double th = rng.uniform(0.0, kTwoPi);
            const cd c(mag * std::cos(th), mag * std::sin(th));
            for (int i = off; i < off + s; ++i)
                for (int j = off; j < off + s; ++j) q(i, j) += c * njp[k](i, j);
        }
        if (reach == target) achieved = true;
    }
    if (!achieved) throw CertFailure{"nilpotent-order-unreachable"};
    return q;
}

CMatrix algebra_op(const CMatrix& diag, const CMatrix& q) {
    return diag * (CMatrix::identity(q.dim()) + q);
}

double comm_scale(const CMatrix& a, const CMatrix& b) {
    return 2.0 * spectral_norm(a) * spectral_norm(b) + 1.0;
}

void certify_commutator(std::map<std::string, double>& cert, const std::string& label,
                        const CMatrix& a, const CMatrix& b) {
    certify(cert, label, fro_norm(commutator(a, b)), 1e-10 * comm_scale(a, b));
}

void certify_pair(std::map<std::string, double>& cert, const std::string& label,
                  const CMatrix& b1, const CMatrix& a1, const CMatrix& b2,
                  const CMatrix& a2, const CMatrix& x, int m, int n,
                  const Tolerance& tol) {
    PairInstance p{b1, a1, b2, a2, x, m, n, {}};
    const ClassReport r = residual_pair_symmetric(p, tol);
    cert[label] = r.residual;
    if (!r.verdict) throw CertFailure{label};
}

template <typename Builder>
auto build_with_retries(const GenSpec& spec, const char* family, Builder&& builder)
    -> decltype(builder(std::declval<Xoshiro256pp&>())) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        Xoshiro256pp rng(derive_seed(spec.seed, attempt));
        try {
            return builder(rng);
        } catch (const CertFailure&) {
            continue;
        }
    }
    throw Error("generation-failed", std::string(family) + " certification failed after 50 seeds");
}

void check_instance_dim(int dim, int lo = 1) {
    if (dim < lo || dim > dim_limits().max_instance)
        throw Error("dim-too-large",
                    "instance dim must lie in " + std::to_string(lo) + ".." +
                        std::to_string(dim_limits().max_instance));
}

} // namespace

OperatorInstance mr_symmetric_instance(const GenSpec& spec) {
    const int n = spec.param("n", 2);
    if (n < 2) throw Error("config-error", "mr instance needs n >= 2");
    const int dim = std::max(spec.dim, n);
    check_instance_dim(dim, n);
    const Tolerance tol;

    return build_with_retries(spec, "mr", [&](Xoshiro256pp& rng) {
        std::vector<int> sizes = {n};
        int left = dim - n;
        while (left > 0) {
            const int s = std::min(left, rng.uniform_int(1, n));
            sizes.push_back(s);
            left -= s;
        }
        const Partition part = make_partition(sizes);

        CMatrix a(dim);
        for (int b = 0; b < part.blocks(); ++b) {
            double v = std::round(rng.uniform(-2.0, 2.0) * 4.0) / 4.0;
            if (std::abs(v) < 0.25) v = 1.0;
            for (int i = 0; i < part.sizes[b]; ++i)
                a(part.offsets[b] + i, part.offsets[b] + i) = v;
        }
        const CMatrix nil = base_nilpotent(rng, part);   // order = max block size = n
        OperatorInstance out;
        out.op = a + nil;
        out.expected_order = 2 * n - 1;

        std::map<std::string, double> cert;
        certify(cert, "[A,N]", fro_norm(commutator(a, nil)), 1e-12 * comm_scale(a, nil));
        if (nilpotency_order(nil) != n) throw CertFailure{"nilpotency"};
        const CMatrix b = adjoint(out.op);
        const CMatrix id = CMatrix::identity(dim);
        const ClassReport r = residual_symmetry(b, out.op, id, out.expected_order, tol);
        if (!r.verdict) throw CertFailure{"symmetry-order"};
        if (!strict_at(OrderKind::Delta, b, out.op, id, out.expected_order, tol))
            throw CertFailure{"strictness"};
        return out;
    });
}

OperatorInstance isometry_plus_nilpotent_instance(const GenSpec& spec) {
    const int n = spec.param("n", 2);
    if (n < 2) throw Error("config-error", "isonil instance needs n >= 2");
    const int dim = std::max(spec.dim, n);
    check_instance_dim(dim, n);
    const Tolerance tol;

    return build_with_retries(spec, "isonil", [&](Xoshiro256pp& rng) {
        std::vector<int> sizes = {n};
        int left = dim - n;
        while (left > 0) {
            const int s = std::min(left, rng.uniform_int(1, n));
            sizes.push_back(s);
            left -= s;
        }
        const Partition part = make_partition(sizes);
        const CMatrix u = phase_diag(rng, part);
        const CMatrix nil = base_nilpotent(rng, part);
        OperatorInstance out;
        out.op = u + nil;
        out.expected_order = 2 * n - 1;

        std::map<std::string, double> cert;
        certify(cert, "[U,N]", fro_norm(commutator(u, nil)), 1e-12 * comm_scale(u, nil));
        if (nilpotency_order(nil) != n) throw CertFailure{"nilpotency"};
        const CMatrix b = adjoint(out.op);
        const CMatrix id = CMatrix::identity(dim);
        const ClassReport r = residual_left_invertible(b, out.op, id, out.expected_order, tol);
        if (!r.verdict) throw CertFailure{"isometry-order"};
        if (!strict_at(OrderKind::Triangle, b, out.op, id, out.expected_order, tol))
            throw CertFailure{"strictness"};
        return out;
    });
}

namespace {

// One D(I+Q) operator together with the hereditary order of its defect
// transforms on block-diagonal arguments (2 nu - 1 where nu is the exact
// nilpotency order of Q).
struct AlgOp {
    CMatrix op;
    int nu = 1;
    int hereditary_order() const { return 2 * nu - 1; }
};

AlgOp make_alg_op(Xoshiro256pp& rng, const Partition& part, const CMatrix& nj,
                  int nu_target, bool signature) {
    AlgOp o;
    const CMatrix d = signature ? signature_diag(rng, part) : phase_diag(rng, part);
    CMatrix q(part.dim);
    if (nu_target > 1) q = nilpotent_of_order(rng, part, nj, nu_target);
    o.nu = nilpotency_order(q);
    o.op = algebra_op(d, q);
    return o;
}

int pick_order(Xoshiro256pp& rng, const std::vector<int>& achievable, int cap) {
    std::vector<int> usable;
    for (int nu : achievable)
        if (2 * nu - 1 <= cap) usable.push_back(nu);
    if (usable.empty()) usable.push_back(1);
    return usable[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(usable.size()) - 1))];
}

} // namespace

Theorem1Instance theorem1_instance(const GenSpec& spec) {
    check_instance_dim(spec.dim, 2);
    const int max_order = std::min(spec.param("maxorder", 3), kMaxOrder);
    const Tolerance tol;

    return build_with_retries(spec, "thm1", [&](Xoshiro256pp& rng) {
        const Partition part = random_partition(rng, spec.dim, std::min(3, spec.dim));
        const CMatrix nj = base_nilpotent(rng, part);
        const auto orders = achievable_orders(part, (max_order + 1) / 2);

        // Triangle-side operators take arbitrary phases; delta-side ones
        // need real signatures.
        const AlgOp a1 = make_alg_op(rng, part, nj, pick_order(rng, orders, max_order), false);
        const AlgOp t1 = make_alg_op(rng, part, nj, pick_order(rng, orders, max_order), false);
        const AlgOp a2 = make_alg_op(rng, part, nj, pick_order(rng, orders, max_order), true);
        const AlgOp t2 = make_alg_op(rng, part, nj, pick_order(rng, orders, max_order), true);

        Theorem1Instance inst;
        inst.a1 = a1.op;
        inst.b1 = adjoint(a1.op);
        inst.a2 = a2.op;
        inst.b2 = adjoint(a2.op);
        inst.t1 = t1.op;
        inst.s1 = adjoint(t1.op);
        inst.t2 = t2.op;
        inst.s2 = adjoint(t2.op);
        inst.x = block_diag_random(rng, part);

        // Each hypothesis is certified either with the triangle factor at
        // its hereditary order (delta order free) or the other way around.
        const auto assign = [&](int tri_hered, int del_hered, int& tri_ord, int& del_ord) {
            if (rng.uniform() < 0.5) {
                tri_ord = tri_hered;
                del_ord = rng.uniform_int(1, 2);
            } else {
                tri_ord = rng.uniform_int(1, 2);
                del_ord = del_hered;
            }
        };
        assign(a1.hereditary_order(), a2.hereditary_order(), inst.m1, inst.n1);
        assign(t1.hereditary_order(), a2.hereditary_order(), inst.r1, inst.n2);
        assign(a1.hereditary_order(), t2.hereditary_order(), inst.m2, inst.s1o);
        assign(t1.hereditary_order(), t2.hereditary_order(), inst.r2, inst.s2o);

        auto& cert = inst.certificates;
        certify_commutator(cert, "[A1,A2]", inst.a1, inst.a2);
        certify_commutator(cert, "[B1,B2]", inst.b1, inst.b2);
        certify_commutator(cert, "[A1,T1]", inst.a1, inst.t1);
        certify_commutator(cert, "[A2,T2]", inst.a2, inst.t2);
        certify_commutator(cert, "[B1,S1]", inst.b1, inst.s1);
        certify_commutator(cert, "[B2,S2]", inst.b2, inst.s2);
        certify_pair(cert, "hyp-ii", inst.b1, inst.a1, inst.b2, inst.a2, inst.x,
                     inst.m1, inst.n1, tol);
        certify_pair(cert, "hyp-iii", inst.s1, inst.t1, inst.b2, inst.a2, inst.x,
                     inst.r1, inst.n2, tol);
        certify_pair(cert, "hyp-iv", inst.b1, inst.a1, inst.s2, inst.t2, inst.x,
                     inst.m2, inst.s1o, tol);
        certify_pair(cert, "hyp-v", inst.s1, inst.t1, inst.s2, inst.t2, inst.x,
                     inst.r2, inst.s2o, tol);
        return inst;
    });
}

Theorem2Instance theorem2_instance(const GenSpec& spec) {
    check_instance_dim(spec.dim, 2);
    const Tolerance tol;
    const int pm1 = spec.param("m1", 2), pn1 = spec.param("n1", 2);
    const int pm2 = spec.param("m2", 2), pn2 = spec.param("n2", 2);
    const int base_cap = spec.param("basemax", 2);

    return build_with_retries(spec, "thm2", [&](Xoshiro256pp& rng) {
        const Partition part = random_partition(rng, spec.dim, std::min(3, spec.dim));
        const CMatrix nj = base_nilpotent(rng, part);
        const auto orders = achievable_orders(part, part.max_size());

        const auto clamp_order = [&](int want) {
            int best = 1;
            for (int nu : orders)
                if (nu <= want) best = std::max(best, nu);
            return best;
        };

        const AlgOp a1 = make_alg_op(rng, part, nj, pick_order(rng, orders, base_cap), false);
        const AlgOp a2 = make_alg_op(rng, part, nj, pick_order(rng, orders, base_cap), true);

        Theorem2Instance inst;
        inst.a1 = a1.op;
        inst.b1 = adjoint(a1.op);
        inst.a2 = a2.op;
        inst.b2 = adjoint(a2.op);
        inst.x = block_diag_random(rng, part);

        inst.m1 = clamp_order(pm1);
        inst.n1 = clamp_order(pn1);
        inst.m2 = clamp_order(pm2);
        inst.n2 = clamp_order(pn2);
        const CMatrix njl = adjoint(nj);
        inst.m1op = nilpotent_of_order(rng, part, nj, inst.m1);
        inst.m2op = nilpotent_of_order(rng, part, nj, inst.m2);
        inst.n1op = adjoint(nilpotent_of_order(rng, part, nj, inst.n1));
        inst.n2op = adjoint(nilpotent_of_order(rng, part, nj, inst.n2));

        // Base pair orders: hereditary on the triangle side or delta side.
        if (rng.uniform() < 0.5) {
            inst.m = a1.hereditary_order();
            inst.n = rng.uniform_int(1, base_cap);
        } else {
            inst.m = rng.uniform_int(1, base_cap);
            inst.n = a2.hereditary_order();
        }

        auto& cert = inst.certificates;
        if (nilpotency_order(inst.m1op) != inst.m1) throw CertFailure{"nil-m1"};
        if (nilpotency_order(inst.m2op) != inst.m2) throw CertFailure{"nil-m2"};
        if (nilpotency_order(inst.n1op) != inst.n1) throw CertFailure{"nil-n1"};
        if (nilpotency_order(inst.n2op) != inst.n2) throw CertFailure{"nil-n2"};
        cert["nil-m1-order"] = inst.m1;
        cert["nil-n1-order"] = inst.n1;
        cert["nil-m2-order"] = inst.m2;
        cert["nil-n2-order"] = inst.n2;
        certify_commutator(cert, "[A1,A2]", inst.a1, inst.a2);
        certify_commutator(cert, "[B1,B2]", inst.b1, inst.b2);
        certify_commutator(cert, "[M1,M2]", inst.m1op, inst.m2op);
        certify_commutator(cert, "[N1,N2]", inst.n1op, inst.n2op);
        certify_commutator(cert, "[A1,M1]", inst.a1, inst.m1op);
        certify_commutator(cert, "[A2,M2]", inst.a2, inst.m2op);
        certify_commutator(cert, "[B1,N1]", inst.b1, inst.n1op);
        certify_commutator(cert, "[B2,N2]", inst.b2, inst.n2op);
        certify_pair(cert, "hyp-iii", inst.b1, inst.a1, inst.b2, inst.a2, inst.x,
                     inst.m, inst.n, tol);
        return inst;
    });
}

Theorem2Instance theorem2_partial_instance(const GenSpec& spec) {
    // Two unrelated algebras must coexist with nontrivial nilpotents; that
    // takes at least a 2-block next to a nonscalar diagonal.
    check_instance_dim(spec.dim, 3);
    const Tolerance tol;

    return build_with_retries(spec, "thm2-partial", [&](Xoshiro256pp& rng) {
        const Partition part1 = random_partition(rng, spec.dim, std::min(3, spec.dim));
        const Partition part2 = random_partition(rng, spec.dim, std::min(3, spec.dim));
        const CMatrix nj1 = base_nilpotent(rng, part1);
        const CMatrix nj2 = base_nilpotent(rng, part2);
        const auto orders1 = achievable_orders(part1, part1.max_size());
        const auto orders2 = achievable_orders(part2, part2.max_size());

        // Pair 1 is a triangle root for X; pair 2 lives in an unrelated
        // algebra, so the cross commutators are genuinely nonzero.
        const AlgOp a1 = make_alg_op(rng, part1, nj1, pick_order(rng, orders1, 3), false);
        const AlgOp a2 = make_alg_op(rng, part2, nj2, pick_order(rng, orders2, 3), true);

        Theorem2Instance inst;
        inst.partial_commutation = true;
        inst.a1 = a1.op;
        inst.b1 = adjoint(a1.op);
        inst.a2 = a2.op;
        inst.b2 = adjoint(a2.op);
        inst.x = block_diag_random(rng, part1);
        inst.m = a1.hereditary_order();
        inst.n = rng.uniform_int(1, 2);
        const auto clamp2 = [](const std::vector<int>& achievable) {
            int best = 1;
            for (int nu : achievable)
                if (nu <= 2) best = std::max(best, nu);
            return best;
        };
        inst.m1 = clamp2(orders1);
        inst.n1 = clamp2(orders1);
        inst.m2 = clamp2(orders2);
        inst.n2 = clamp2(orders2);
        inst.m1op = inst.m1 > 1 ? nilpotent_of_order(rng, part1, nj1, inst.m1)
                                : CMatrix(spec.dim);
        inst.n1op = inst.n1 > 1 ? adjoint(nilpotent_of_order(rng, part1, nj1, inst.n1))
                                : CMatrix(spec.dim);
        inst.m2op = inst.m2 > 1 ? nilpotent_of_order(rng, part2, nj2, inst.m2)
                                : CMatrix(spec.dim);
        inst.n2op = inst.n2 > 1 ? adjoint(nilpotent_of_order(rng, part2, nj2, inst.n2))
                                : CMatrix(spec.dim);

        auto& cert = inst.certificates;
        certify_commutator(cert, "[A1,M1]", inst.a1, inst.m1op);
        certify_commutator(cert, "[A2,M2]", inst.a2, inst.m2op);
        certify_commutator(cert, "[B1,N1]", inst.b1, inst.n1op);
        certify_commutator(cert, "[B2,N2]", inst.b2, inst.n2op);
        // The dropped hypotheses must be sizably violated.
        const double cross = fro_norm(commutator(inst.a1, inst.a2));
        cert["[A1,A2]"] = cross;
        if (cross < 1e-2) throw CertFailure{"cross-commutator-too-small"};
        // delta-outside hypothesis: the inner triangle root vanishes.
        const double tri_root = fro_norm(triangle_power(inst.b1, inst.a1, inst.x, inst.m));
        certify(cert, "triangle-root", tri_root,
                tol.threshold(triangle_scale(inst.b1, inst.a1, inst.m, fro_norm(inst.x))));
        return inst;
    });
}

Theorem3Instance theorem3_instance(const GenSpec& spec) {
    const int p = spec.param("p", 2);
    if (p < 1 || p > 8) throw Error("config-error", "thm3 index p must lie in 1..8");
    const int dim = std::max(spec.dim, p + 1);
    check_instance_dim(dim, p + 1);
    const bool strict = spec.param("strict", 0) != 0;
    const Tolerance tol;

    return build_with_retries(spec, "thm3", [&](Xoshiro256pp& rng) {
        const int d1 = dim - p;
        Theorem3Instance inst;
        inst.p = p;
        inst.core_dim = d1;
        inst.strict_core = strict;

        const Partition cpart = random_partition(rng, d1, strict ? std::min(2, d1) : 1);
        CMatrix t1;
        int nu = 1;
        if (strict && d1 >= 2) {
            const CMatrix njc = base_nilpotent(rng, cpart);
            const AlgOp core = make_alg_op(rng, cpart, njc, 2, true);
            t1 = core.op;
            nu = core.nu;
            if (nu != 2) throw CertFailure{"strict-core-order"};
        } else {
            t1 = signature_diag(rng, cpart);
        }

        // Orders: one side carries the hereditary order 2 nu - 1, the other
        // is free; overridable through params.
        const int hered = 2 * nu - 1;
        if (rng.uniform() < 0.5) {
            inst.m = spec.param("m", hered);
            inst.n = spec.param("n", rng.uniform_int(1, 2));
            if (inst.m < hered) inst.m = hered;
        } else {
            inst.m = spec.param("m", rng.uniform_int(1, 2));
            inst.n = spec.param("n", hered);
            if (inst.n < hered) inst.n = hered;
        }

        CMatrix t2(p);
        for (int i = 0; i + 1 < p; ++i) {
            const double mag = rng.uniform(0.7, 1.3);
            t2(i, i + 1) = mag;
        }
        inst.a = direct_sum(t1, t2);

        const CMatrix x11 = block_diag_random(rng, cpart);
        CMatrix x22(p);
        const bool zero_corner = spec.param("x22", (spec.seed % 2 == 0) ? 1 : 0) == 0;
        if (!zero_corner) x22(p - 1, p - 1) = cd(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5));
        inst.x = direct_sum(x11, x22);

        auto& cert = inst.certificates;
        // X22 sits in the kernel of the nilpotent-block delta and is killed
        // from the right by T2.
        cert["x22-delta-kernel"] = fro_norm(delta_apply(adjoint(t2), t2, x22));
        cert["x22-right-annihilated"] = fro_norm(x22 * t2);
        if (cert["x22-delta-kernel"] > 1e-12 || cert["x22-right-annihilated"] > 1e-12)
            throw CertFailure{"x22"};

        const CMatrix astar = adjoint(inst.a);
        const double xn = fro_norm(inst.x);
        const double hyp1 = fro_norm(compose_mn(astar, inst.a, astar, inst.a, inst.x,
                                                inst.m, inst.n,
                                                ComposeOrder::TriangleFirstOutside));
        certify(cert, "hyp-isosymmetry", hyp1,
                tol.threshold(compose_scale(astar, inst.a, astar, inst.a, inst.m, inst.n, xn)));

        if (nilpotency_order(t2) != p) throw CertFailure{"t2-order"};
        return inst;
    });
}

Prop1Instance prop1_instance(const GenSpec& spec) {
    check_instance_dim(spec.dim, 2);
    const Tolerance tol;
    const int cap = spec.param("maxorder", 3);

    return build_with_retries(spec, "prop1", [&](Xoshiro256pp& rng) {
        const Partition part = random_partition(rng, spec.dim, std::min(3, spec.dim));
        const CMatrix nj = base_nilpotent(rng, part);
        const auto orders = achievable_orders(part, (cap + 1) / 2);

        const AlgOp a1 = make_alg_op(rng, part, nj, pick_order(rng, orders, cap), false);
        const AlgOp a2 = make_alg_op(rng, part, nj, pick_order(rng, orders, cap), true);
        const AlgOp st = make_alg_op(rng, part, nj, pick_order(rng, orders, cap), true);

        Prop1Instance inst;
        inst.a1 = a1.op;
        inst.b1 = adjoint(a1.op);
        inst.a2 = a2.op;
        inst.b2 = adjoint(a2.op);
        inst.t = st.op;
        inst.s = adjoint(st.op);
        inst.x = block_diag_random(rng, part);
        inst.m = a1.hereditary_order();
        inst.n = a2.hereditary_order();
        inst.tord = st.hereditary_order();

        auto& cert = inst.certificates;
        certify_commutator(cert, "[A1,A2]", inst.a1, inst.a2);
        certify_commutator(cert, "[B1,B2]", inst.b1, inst.b2);
        certify_commutator(cert, "[A1,T]", inst.a1, inst.t);
        certify_commutator(cert, "[A2,T]", inst.a2, inst.t);
        certify_commutator(cert, "[B1,S]", inst.b1, inst.s);
        certify_commutator(cert, "[B2,S]", inst.b2, inst.s);
        const double xn = fro_norm(inst.x);
        certify(cert, "hyp-b", fro_norm(triangle_power(inst.b1, inst.a1, inst.x, inst.m)),
                tol.threshold(triangle_scale(inst.b1, inst.a1, inst.m, xn)));
        certify(cert, "hyp-c", fro_norm(delta_power(inst.b2, inst.a2, inst.x, inst.n)),
                tol.threshold(delta_scale(inst.b2, inst.a2, inst.n, xn)));
        certify(cert, "hyp-d", fro_norm(triangle_power(inst.s, inst.t, inst.x, inst.tord)),
                tol.threshold(triangle_scale(inst.s, inst.t, inst.tord, xn)));
        certify(cert, "hyp-e", fro_norm(delta_power(inst.s, inst.t, inst.x, inst.tord)),
                tol.threshold(delta_scale(inst.s, inst.t, inst.tord, xn)));
        certify_pair(cert, "hyp-a", inst.b1, inst.a1, inst.b2, inst.a2, inst.x,
                     inst.m, inst.n, tol);
        return inst;
    });
}

LemmaBundle lemma_bundle(const GenSpec& spec) {
    check_instance_dim(spec.dim, 2);
    const Tolerance tol;

    return build_with_retries(spec, "lemmas", [&](Xoshiro256pp& rng) {
        const Partition part = random_partition(rng, spec.dim, std::min(3, spec.dim));
        const CMatrix nj = base_nilpotent(rng, part);
        const auto orders = achievable_orders(part, 2);

        const AlgOp a1 = make_alg_op(rng, part, nj, pick_order(rng, orders, 3), false);
        const AlgOp a2 = make_alg_op(rng, part, nj, pick_order(rng, orders, 3), true);

        LemmaBundle b;
        b.pair.a1 = a1.op;
        b.pair.b1 = adjoint(a1.op);
        b.pair.a2 = a2.op;
        b.pair.b2 = adjoint(a2.op);
        b.pair.x = block_diag_random(rng, part);
        if (rng.uniform() < 0.5) {
            b.pair.m = a1.hereditary_order();
            b.pair.n = rng.uniform_int(1, 2);
        } else {
            b.pair.m = rng.uniform_int(1, 2);
            b.pair.n = a2.hereditary_order();
        }
        b.pair.refresh_commutators();

        std::map<std::string, double> cert;
        certify_pair(cert, "pair", b.pair.b1, b.pair.a1, b.pair.b2, b.pair.a2,
                     b.pair.x, b.pair.m, b.pair.n, tol);

        b.tri_b = b.pair.b1;
        b.tri_a = b.pair.a1;
        b.tri_x = b.pair.x;
        b.tri_m = a1.hereditary_order();
        b.del_b = b.pair.b2;
        b.del_a = b.pair.a2;
        b.del_x = b.pair.x;
        b.del_n = a2.hereditary_order();
        const double xn = fro_norm(b.pair.x);
        certify(cert, "tri-root", fro_norm(triangle_power(b.tri_b, b.tri_a, b.tri_x, b.tri_m)),
                tol.threshold(triangle_scale(b.tri_b, b.tri_a, b.tri_m, xn)));
        certify(cert, "del-root", fro_norm(delta_power(b.del_b, b.del_a, b.del_x, b.del_n)),
                tol.threshold(delta_scale(b.del_b, b.del_a, b.del_n, xn)));
        return b;
    });
}

namespace {

// Split the partition's blocks into two disjoint sectors; operators with
// nilpotent parts supported in different sectors commute together with
// their adjoints.
std::pair<std::vector<bool>, std::vector<bool>> sector_split(Xoshiro256pp& rng,
                                                             const Partition& part) {
    const int nb = part.blocks();
    std::vector<bool> in_a(nb, false), in_b(nb, false);
    for (int i = 0; i < nb; ++i) {
        if (rng.uniform() < 0.5)
            in_a[i] = true;
        else
            in_b[i] = true;
    }
    // Guarantee both sectors are nonempty when possible.
    if (nb >= 2) {
        bool any_a = false, any_b = false;
        for (int i = 0; i < nb; ++i) {
            any_a = any_a || in_a[i];
            any_b = any_b || in_b[i];
        }
        if (!any_a) in_a[0] = true, in_b[0] = false;
        if (!any_b) in_b[nb - 1] = true, in_a[nb - 1] = false;
    }
    return {in_a, in_b};
}

CMatrix mask_blocks(const CMatrix& q, const Partition& part, const std::vector<bool>& keep) {
    CMatrix out(q.dim());
    for (int b = 0; b < part.blocks(); ++b) {
        if (!keep[b]) continue;
        const int off = part.offsets[b], s = part.sizes[b];
        for (int i = off; i < off + s; ++i)
            for (int j = off; j < off + s; ++j) out(i, j) = q(i, j);
    }
    return out;
}

AlgOp sector_op(Xoshiro256pp& rng, const Partition& part, const CMatrix& nj,
                const std::vector<bool>& sector, int nu_target, bool signature) {
    const CMatrix d = signature ? signature_diag(rng, part) : phase_diag(rng, part);
    CMatrix q(part.dim);
    if (nu_target > 1) {
        // Build at the requested order, pruned to the sector; the measured
        // order is whatever the sector supports.
        try {
            q = mask_blocks(nilpotent_of_order(rng, part, nj, nu_target), part, sector);
        } catch (const CertFailure&) {
            q = CMatrix(part.dim);
        }
    }
    AlgOp o;
    o.nu = nilpotency_order(q);
    o.op = algebra_op(d, q);
    return o;
}

} // namespace

Cor01Instance cor01_instance(const GenSpec& spec) {
    check_instance_dim(spec.dim, 2);
    const Tolerance tol;

    return build_with_retries(spec, "cor01", [&](Xoshiro256pp& rng) {
        const Partition part = random_partition(rng, spec.dim, std::min(3, spec.dim));
        const CMatrix nj = base_nilpotent(rng, part);
        const auto [sec_a, sec_b] = sector_split(rng, part);

        const AlgOp a = sector_op(rng, part, nj, sec_a, 2, true);
        const AlgOp b = sector_op(rng, part, nj, sec_b, 2, true);

        Cor01Instance inst;
        inst.a = a.op;
        inst.b = b.op;
        inst.m = inst.n = a.hereditary_order();
        inst.r = inst.s = b.hereditary_order();

        auto& cert = inst.certificates;
        certify_commutator(cert, "[A,B]", inst.a, inst.b);
        certify_commutator(cert, "[A,B*]", inst.a, adjoint(inst.b));
        const CMatrix id = CMatrix::identity(spec.dim);
        const CMatrix astar = adjoint(inst.a);
        const CMatrix bstar = adjoint(inst.b);
        certify_pair(cert, "a-isosymmetric", astar, inst.a, astar, inst.a, id,
                     inst.m, inst.n, tol);
        certify(cert, "b-left-invertible",
                fro_norm(triangle_power(bstar, inst.b, id, inst.r)),
                tol.threshold(triangle_scale(bstar, inst.b, inst.r, std::sqrt(double(spec.dim)))));
        certify(cert, "b-symmetric", fro_norm(delta_power(bstar, inst.b, id, inst.s)),
                tol.threshold(delta_scale(bstar, inst.b, inst.s, std::sqrt(double(spec.dim)))));
        return inst;
    });
}

Cor02Instance cor02_instance(const GenSpec& spec) {
    check_instance_dim(spec.dim, 2);
    const Tolerance tol;

    return build_with_retries(spec, "cor02", [&](Xoshiro256pp& rng) {
        const Partition part = random_partition(rng, spec.dim, std::min(3, spec.dim));
        const CMatrix nj = base_nilpotent(rng, part);
        const auto [sec_a, sec_b] = sector_split(rng, part);

        const AlgOp a1 = sector_op(rng, part, nj, sec_a, 2, false);
        const AlgOp a2 = sector_op(rng, part, nj, sec_a, 2, true);
        const AlgOp t1 = sector_op(rng, part, nj, sec_b, 2, true);
        const AlgOp t2 = sector_op(rng, part, nj, sec_b, 2, true);

        Cor02Instance inst;
        inst.a1 = a1.op;
        inst.b1 = adjoint(a1.op);
        inst.a2 = a2.op;
        inst.b2 = adjoint(a2.op);
        inst.t1 = t1.op;
        inst.s1 = adjoint(t1.op);
        inst.t2 = t2.op;
        inst.s2 = adjoint(t2.op);
        inst.x = block_diag_random(rng, part);
        if (rng.uniform() < 0.5) {
            inst.m = a1.hereditary_order();
            inst.n = rng.uniform_int(1, 2);
        } else {
            inst.m = rng.uniform_int(1, 2);
            inst.n = a2.hereditary_order();
        }
        inst.r = t1.hereditary_order();
        inst.s = t2.hereditary_order();

        auto& cert = inst.certificates;
        certify_commutator(cert, "[A1,A2]", inst.a1, inst.a2);
        certify_commutator(cert, "[B1,B2]", inst.b1, inst.b2);
        certify_commutator(cert, "[S1,S2]", inst.s1, inst.s2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const CMatrix& ai = i == 0 ? inst.a1 : inst.a2;
                const CMatrix& tj = j == 0 ? inst.t1 : inst.t2;
                const CMatrix& bi = i == 0 ? inst.b1 : inst.b2;
                const CMatrix& sj = j == 0 ? inst.s1 : inst.s2;
                certify_commutator(cert, "[A" + std::to_string(i + 1) + ",T" +
                                             std::to_string(j + 1) + "]", ai, tj);
                certify_commutator(cert, "[B" + std::to_string(i + 1) + ",S" +
                                             std::to_string(j + 1) + "]", bi, sj);
            }
        certify_pair(cert, "hyp-i", inst.b1, inst.a1, inst.b2, inst.a2, inst.x,
                     inst.m, inst.n, tol);
        const double xn = fro_norm(inst.x);
        certify(cert, "hyp-ii", fro_norm(triangle_power(inst.s1, inst.t1, inst.x, inst.r)),
                tol.threshold(triangle_scale(inst.s1, inst.t1, inst.r, xn)));
        certify(cert, "hyp-iii", fro_norm(delta_power(inst.s2, inst.t2, inst.x, inst.s)),
                tol.threshold(delta_scale(inst.s2, inst.t2, inst.s, xn)));
        return inst;
    });
}

Cor03Instance cor03_instance(const GenSpec& spec) {
    const int dim = std::min(spec.dim, 4);
    check_instance_dim(dim, 2);
    const Tolerance tol;

    return build_with_retries(spec, "cor03", [&](Xoshiro256pp& rng) {
        // Two unrelated algebras on the same base space: they feed the two
        // tensor slots, so no commutation is needed across families.
        const Partition part1 = random_partition(rng, dim, std::min(2, dim));
        const Partition part2 = random_partition(rng, dim, std::min(2, dim));
        const CMatrix nj1 = base_nilpotent(rng, part1);
        const CMatrix nj2 = base_nilpotent(rng, part2);
        const auto o1 = achievable_orders(part1, 2);
        const auto o2 = achievable_orders(part2, 2);

        const AlgOp f1 = make_alg_op(rng, part1, nj1, pick_order(rng, o1, 3), false);
        const AlgOp f2 = make_alg_op(rng, part1, nj1, pick_order(rng, o1, 3), true);
        const AlgOp q1 = make_alg_op(rng, part2, nj2, pick_order(rng, o2, 3), false);
        const AlgOp q2 = make_alg_op(rng, part2, nj2, pick_order(rng, o2, 3), true);

        Cor03Instance inst;
        inst.f1 = f1.op;
        inst.e1 = adjoint(f1.op);
        inst.f2 = f2.op;
        inst.e2 = adjoint(f2.op);
        inst.q1 = q1.op;
        inst.p1 = adjoint(q1.op);
        inst.q2 = q2.op;
        inst.p2 = adjoint(q2.op);
        // X must be block diagonal for both partitions; scalar blocks of the
        // refinement always work, so use a diagonal X.
        CMatrix x(dim);
        for (int i = 0; i < dim; ++i)
            x(i, i) = cd(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5));
        inst.x = x;
        inst.m = f1.hereditary_order();
        inst.n = f2.hereditary_order();
        inst.r = q1.hereditary_order();
        inst.s = q2.hereditary_order();

        auto& cert = inst.certificates;
        certify_commutator(cert, "[E1,E2]", inst.e1, inst.e2);
        certify_commutator(cert, "[F1,F2]", inst.f1, inst.f2);
        certify_commutator(cert, "[P1,P2]", inst.p1, inst.p2);
        certify_commutator(cert, "[Q1,Q2]", inst.q1, inst.q2);
        const double xn = fro_norm(inst.x);
        // Stated hypotheses (pairs) plus the single-factor roots that carry
        // the tensor argument.
        certify_pair(cert, "hyp-11", inst.e1, inst.f1, inst.e2, inst.f2, inst.x,
                     inst.m, inst.n, tol);
        certify_pair(cert, "hyp-12", inst.p1, inst.q1, inst.e2, inst.f2, inst.x,
                     inst.r, inst.n, tol);
        certify_pair(cert, "hyp-21", inst.e1, inst.f1, inst.p2, inst.q2, inst.x,
                     inst.m, inst.s, tol);
        certify_pair(cert, "hyp-22", inst.p1, inst.q1, inst.p2, inst.q2, inst.x,
                     inst.r, inst.s, tol);
        certify(cert, "delta-root-f2", fro_norm(delta_power(inst.e2, inst.f2, inst.x, inst.n)),
                tol.threshold(delta_scale(inst.e2, inst.f2, inst.n, xn)));
        certify(cert, "delta-root-q2", fro_norm(delta_power(inst.p2, inst.q2, inst.x, inst.s)),
                tol.threshold(delta_scale(inst.p2, inst.q2, inst.s, xn)));
        certify(cert, "tri-root-f1", fro_norm(triangle_power(inst.e1, inst.f1, inst.x, inst.m)),
                tol.threshold(triangle_scale(inst.e1, inst.f1, inst.m, xn)));
        certify(cert, "tri-root-q1", fro_norm(triangle_power(inst.p1, inst.q1, inst.x, inst.r)),
                tol.threshold(triangle_scale(inst.p1, inst.q1, inst.r, xn)));
        return inst;
    });
}

Cor04Instance cor04_instance(const GenSpec& spec) {
    const int dim = std::min(spec.dim, 4);
    check_instance_dim(dim, 2);
    const Tolerance tol;

    return build_with_retries(spec, "cor04", [&](Xoshiro256pp& rng) {
        const Partition part = random_partition(rng, dim, std::min(3, dim));
        const CMatrix nj = base_nilpotent(rng, part);
        const auto orders = achievable_orders(part, 3);
        const int nu = pick_order(rng, orders, 5);

        const AlgOp s = make_alg_op(rng, part, nj, nu, true);
        const AlgOp t = make_alg_op(rng, part, nj, nu, true);

        Cor04Instance inst;
        inst.s = s.op;
        inst.t = t.op;
        inst.n = std::max(s.hereditary_order(), t.hereditary_order());

        auto& cert = inst.certificates;
        certify_commutator(cert, "[S,T]", inst.s, inst.t);
        const CMatrix id = CMatrix::identity(dim);
        const CMatrix ss = adjoint(inst.s), ts = adjoint(inst.t);
        const double sq = std::sqrt(double(dim));
        certify(cert, "s-isometry", fro_norm(triangle_power(ss, inst.s, id, inst.n)),
                tol.threshold(triangle_scale(ss, inst.s, inst.n, sq)));
        certify(cert, "t-isometry", fro_norm(triangle_power(ts, inst.t, id, inst.n)),
                tol.threshold(triangle_scale(ts, inst.t, inst.n, sq)));
        certify_pair(cert, "cond-ss", ss, inst.s, ss, inst.s, id, inst.n, inst.n, tol);
        certify_pair(cert, "cond-tt", ts, inst.t, ts, inst.t, id, inst.n, inst.n, tol);
        certify_pair(cert, "cond-ts", ts, inst.t, ss, inst.s, id, inst.n, inst.n, tol);
        certify_pair(cert, "cond-st", ss, inst.s, ts, inst.t, id, inst.n, inst.n, tol);
        return inst;
    });
}

Cor05Instance cor05_instance(const GenSpec& spec) {
    check_instance_dim(spec.dim, 2);
    const Tolerance tol;
    const int n1 = spec.param("n1", 2);

    return build_with_retries(spec, "cor05", [&](Xoshiro256pp& rng) {
        const Partition part = random_partition(rng, spec.dim, std::min(3, spec.dim));
        const CMatrix nj = base_nilpotent(rng, part);
        const auto orders = achievable_orders(part, part.max_size());

        const AlgOp a = make_alg_op(rng, part, nj, pick_order(rng, orders, 3), true);

        Cor05Instance inst;
        inst.a = a.op;
        int want = n1;
        while (want > 1 &&
               std::find(orders.begin(), orders.end(), want) == orders.end())
            --want;
        inst.n1 = want;
        inst.nil = want > 1 ? nilpotent_of_order(rng, part, nj, want) : CMatrix(spec.dim);
        inst.x = block_diag_random(rng, part);
        if (rng.uniform() < 0.5) {
            inst.m = a.hereditary_order();
            inst.n = rng.uniform_int(1, 2);
        } else {
            inst.m = rng.uniform_int(1, 2);
            inst.n = a.hereditary_order();
        }

        auto& cert = inst.certificates;
        if (nilpotency_order(inst.nil) != inst.n1) throw CertFailure{"nilpotency"};
        certify_commutator(cert, "[A,N]", inst.a, inst.nil);
        const CMatrix astar = adjoint(inst.a);
        certify_pair(cert, "a-isosymmetric", astar, inst.a, astar, inst.a, inst.x,
                     inst.m, inst.n, tol);
        return inst;
    });
}

} // namespace isosym
