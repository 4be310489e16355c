#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "config.hpp"
#include "exppoly.hpp"
#include "fields.hpp"
#include "interval.hpp"
#include "laurent.hpp"
#include "zlinalg.hpp"

namespace hroot {

// Least s with x^s = 1, or nothing.  An algebraic number has finite order
// exactly when its minimal polynomial is cyclotomic; the order is then the
// cyclotomic index, confirmed by exact exponentiation.
inline std::optional<long> is_root_of_unity(const NFElement& x) {
    if (x.is_zero()) raise(errc::invalid_argument, "order of zero");
    if (x.is_rational()) {
        BigRat q = x.to_rational();
        if (q == 1) return 1;
        if (q == -1) return 2;
        return std::nullopt;
    }
    RatPoly m = minpoly_of_element(x);
    long dm = zp::deg(m);
    // phi(s) = dm forces s <= 2*dm^2 + 2
    for (long s = 2; s <= 2 * dm * dm + 2; ++s) {
        if (euler_phi(s) != dm) continue;
        if (zp::cyclotomic(s) == m) {
            if (!x.pow(s).is_one()) raise(errc::verification_failed, "cyclotomic order check failed");
            return s;
        }
    }
    return std::nullopt;
}

// N killing all torsion in the group generated by the betas: the order of
// the unit group's torsion part.  Any x = y^N with x of finite order forces
// y of finite order, so y^N = 1; the power group is torsion-free.
inline long torsion_exponent(const std::vector<NFElement>& betas) {
    if (betas.empty()) raise(errc::invalid_argument, "empty base list");
    const FieldPtr& F = betas[0].field();
    for (const auto& b : betas) {
        check_same_field(F, b.field());
        if (b.is_zero()) raise(errc::invalid_argument, "zero base");
    }
    return F->torsion_order();
}

// Exact product of powers; exponents must fit in machine words.
inline NFElement eval_relation(const std::vector<NFElement>& g, const IVec& e) {
    if (e.size() != g.size()) raise(errc::invalid_argument, "relation length mismatch");
    FieldPtr F = g.empty() ? NumberField::rationals() : g[0].field();
    NFElement acc = NFElement::one(std::move(F));
    for (size_t i = 0; i < g.size(); ++i) {
        if (e[i] == 0) continue;
        if (!fits_long(e[i])) raise(errc::bound_exceeded, "relation exponent too large");
        acc = acc * g[i].pow(to_long(e[i]));
    }
    return acc;
}

struct RelationLattice {
    IMat basis; // rows e with prod g_i^{e_i} = 1, row-reduced
};

namespace mg {

// valuation vectors of rational values over the union of their prime
// supports; incomplete trial division fails loudly
inline IMat valuation_matrix(const std::vector<BigRat>& vals, long long bound) {
    std::vector<std::map<BigInt, long>> fs;
    for (const auto& q : vals) {
        auto fn = trial_factor(BigInt(q.get_num()), bound);
        auto fd = trial_factor(BigInt(q.get_den()), bound);
        if (!fn || !fd)
            raise(errc::bound_exceeded, "factorization exceeded the trial division bound");
        std::map<BigInt, long> m = *fn;
        for (const auto& [p, e] : *fd) m[p] -= e;
        fs.push_back(std::move(m));
    }
    std::set<BigInt> primes;
    for (const auto& m : fs)
        for (const auto& [p, e] : m)
            if (e != 0) primes.insert(p);
    IMat M(vals.size(), IVec(primes.size()));
    size_t j = 0;
    for (const BigInt& p : primes) {
        for (size_t i = 0; i < fs.size(); ++i) {
            auto it = fs[i].find(p);
            if (it != fs[i].end()) M[i][j] = it->second;
        }
        ++j;
    }
    return M;
}

// Q* = {+-1} x free on the primes, so valuation kernel + sign character
// is the complete answer
inline IMat rational_relations(const std::vector<NFElement>& g, const Budgets& budgets) {
    std::vector<BigRat> vals;
    for (const auto& x : g) vals.push_back(x.to_rational());
    IMat basis = la::left_kernel(valuation_matrix(vals, budgets.factor_bound));
    IVec chi(basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < vals.size(); ++i)
            if (vals[i] < 0) chi[j] += basis[j][i];
    return la::mat_mul(la::kernel_of_character(chi, BigInt(2)), basis);
}

inline int real_place_sign(const NFElement& x, size_t place, const Budgets& budgets) {
    for (long prec = 64; prec <= budgets.max_precision_bits; prec *= 2) {
        auto E = EmbeddingAccess::get(x.field(), prec);
        CBox b = eval_box(x, E->places[place], prec);
        if (b.re.positive()) return 1;
        if (b.re.negative()) return -1;
    }
    raise(errc::bound_exceeded, "sign refinement exceeded the precision budget");
}

struct ArchData {
    std::vector<std::vector<RIv>> logs; // per element, all places
    std::vector<std::vector<RIv>> args; // per element, complex places
    RIv wrap;                           // 2*pi / torsion order
    int nreal = 0, ncomplex = 0;
};

inline std::optional<ArchData> arch_enclosures(const std::vector<NFElement>& g, long prec,
                                               long w) {
    const FieldPtr& F = g[0].field();
    auto E = EmbeddingAccess::get(F, prec);
    ArchData out;
    out.nreal = E->r;
    out.ncomplex = E->s;
    for (const auto& x : g) {
        std::vector<RIv> lg, ag;
        for (size_t p = 0; p < E->places.size(); ++p) {
            CBox b = eval_box(x, E->places[p], prec);
            if (E->places[p].is_real) {
                if (b.re.positive()) lg.push_back(iv::ln_iv(b.re, prec));
                else if (b.re.negative()) lg.push_back(iv::ln_iv(-b.re, prec));
                else return std::nullopt;
            } else {
                auto la_ = iv::log_abs_box(b, prec);
                auto ar = iv::arg_box(b, prec);
                if (!la_ || !ar) return std::nullopt;
                lg.push_back(*la_);
                ag.push_back(*ar);
            }
        }
        out.logs.push_back(std::move(lg));
        out.args.push_back(std::move(ag));
    }
    out.wrap = iv::pi_interval(prec) * rat(BigInt(2), BigInt(w));
    return out;
}

// lower bound on the real rank, by fraction-free elimination with pivots
// certified away from zero
inline int certified_rank(std::vector<std::vector<RIv>> M) {
    int rank = 0;
    size_t rows = M.size();
    size_t cols = rows ? M[0].size() : 0;
    size_t rr = 0;
    for (size_t c = 0; c < cols && rr < rows; ++c) {
        size_t pick = rows;
        BigRat best(0);
        for (size_t i = rr; i < rows; ++i) {
            const RIv& e = M[i][c];
            BigRat m = e.lo > 0 ? e.lo : (e.hi < 0 ? -e.hi : BigRat(0));
            if (m > best) {
                best = m;
                pick = i;
            }
        }
        if (pick == rows) continue;
        std::swap(M[rr], M[pick]);
        for (size_t i = rr + 1; i < rows; ++i) {
            RIv f = M[i][c];
            for (size_t j = 0; j < cols; ++j)
                M[i][j] = M[rr][c] * M[i][j] - f * M[rr][j];
            M[i][c] = RIv::point(0); // exactly zero after the update
        }
        ++rank;
        ++rr;
    }
    return rank;
}

// Relations over a genuine number field.  Exact necessary constraints
// (norm valuations, real-embedding signs) cut the search space; the
// residual is resolved with rigorous archimedean enclosures: a certified
// rank bound caps how many independent relations can exist, lattice
// reduction proposes candidates, and exact exponentiation confirms them.
// Torsion is quotiented out through a character into Z/w.
inline IMat general_relations(const std::vector<NFElement>& g, const Budgets& budgets) {
    const FieldPtr& F = g[0].field();
    long w = F->torsion_order();
    std::vector<BigRat> nrms;
    for (const auto& x : g) nrms.push_back(norm(x));
    IMat basis = la::left_kernel(valuation_matrix(nrms, budgets.factor_bound));
    if (basis.empty()) return {};

    auto E0 = EmbeddingAccess::get(F, 64);
    int nreal = E0->r;
    std::vector<int> sgn(g.size(), 1);
    for (int p = 0; p < nreal && !basis.empty(); ++p) {
        for (size_t i = 0; i < g.size(); ++i) sgn[i] = real_place_sign(g[i], p, budgets);
        IVec chi(basis.size());
        for (size_t j = 0; j < basis.size(); ++j)
            for (size_t i = 0; i < g.size(); ++i)
                if (sgn[i] < 0) chi[j] += basis[j][i];
        basis = la::mat_mul(la::kernel_of_character(chi, BigInt(2)), basis);
    }
    if (basis.empty()) return {};
    size_t t = basis.size();

    IMat found; // verified torsion relations, coordinates in `basis`
    for (long prec = 64; prec <= budgets.max_precision_bits; prec *= 2) {
        auto ad = arch_enclosures(g, prec, w);
        if (!ad) continue;
        size_t L = ad->nreal + ad->ncomplex;
        size_t A = ad->ncomplex;

        // interval matrix over the kernel basis, plus branch rows for the
        // argument columns (roots of unity contribute multiples of 2pi/w)
        std::vector<std::vector<RIv>> M(t + A,
                                            std::vector<RIv>(L + A, RIv::point(0)));
        for (size_t j = 0; j < t; ++j)
            for (size_t i = 0; i < g.size(); ++i) {
                if (basis[j][i] == 0) continue;
                BigRat c{basis[j][i]};
                for (size_t l = 0; l < L; ++l) M[j][l] = M[j][l] + ad->logs[i][l] * c;
                for (size_t a = 0; a < A; ++a)
                    M[j][L + a] = M[j][L + a] + ad->args[i][a] * c;
            }
        for (size_t a = 0; a < A; ++a) M[t + a][L + a] = ad->wrap;
        int r0 = certified_rank(M);
        size_t smax = t + A - static_cast<size_t>(r0);

        // candidate finder: scaled integer image, reduced
        BigInt C = BigInt(1) << (prec / 2);
        auto scaled = [&](const RIv& v) {
            return la::round_nearest(BigRat(C) * (v.lo + v.hi) / 2);
        };
        IMat lat(t + A, IVec(t + L + A));
        for (size_t j = 0; j < t; ++j) {
            lat[j][j] = 1;
            for (size_t c = 0; c < L + A; ++c) lat[j][t + c] = scaled(M[j][c]);
        }
        for (size_t a = 0; a < A; ++a) lat[t + a][t + L + a] = scaled(ad->wrap);
        la::lll_reduce(lat);
        BigInt rb(static_cast<long>(budgets.relation_bound));
        for (const auto& row : lat) {
            IVec x(row.begin(), row.begin() + t);
            bool zero = true, inbound = true;
            for (const auto& v : x) {
                if (v != 0) zero = false;
                if (v > rb || -v > rb) inbound = false;
            }
            if (zero || !inbound) continue;
            NFElement val = eval_relation(g, la::vec_mat(x, basis));
            if (is_root_of_unity(val)) found.push_back(std::move(x));
        }
        auto [Hf, Uf] = la::row_hnf(found);
        IMat X;
        for (const auto& row : Hf) {
            bool zero = true;
            for (const auto& v : row)
                if (v != 0) zero = false;
            if (!zero) X.push_back(row);
        }
        if (X.size() < smax) continue;
        if (X.size() > smax)
            raise(errc::verification_failed, "relation rank exceeds the certified bound");

        // saturate: the torsion-relation lattice is saturated, so equal rank
        // plus saturation gives the whole lattice
        IMat sat;
        if (!X.empty()) {
            la::SmithForm sf = la::smith_form(X);
            auto [HV, Vinv] = la::row_hnf(sf.V);
            for (size_t i = 0; i < HV.size(); ++i)
                for (size_t j = 0; j < HV[i].size(); ++j)
                    if (HV[i][j] != (i == j ? 1 : 0))
                        raise(errc::verification_failed, "basis change not unimodular");
            for (size_t i = 0; i < X.size(); ++i) sat.push_back(Vinv[i]);
        }
        std::vector<long> orders;
        std::vector<NFElement> vals;
        for (const auto& row : sat) {
            NFElement v = eval_relation(g, la::vec_mat(row, basis));
            auto ord = is_root_of_unity(v);
            if (!ord) raise(errc::verification_failed, "saturated relation is not torsion");
            orders.push_back(*ord);
            vals.push_back(std::move(v));
        }

        // character into Z/w indexed by a fixed primitive torsion root
        std::optional<NFElement> zeta;
        IVec chi(sat.size());
        for (size_t i = 0; i < sat.size(); ++i) {
            if (orders[i] == 1) continue;
            if (!zeta) {
                auto rts = roots_in_field(UniPoly::from_rat(F, zp::cyclotomic(w)));
                if (rts.empty())
                    raise(errc::verification_failed, "primitive torsion root missing");
                NFElement best = rts[0].first;
                for (const auto& [rt, mu] : rts)
                    if (NFElement::cmp(rt, best) < 0) best = rt;
                zeta = best;
            }
            NFElement p = NFElement::one(F);
            long dl = -1;
            for (long k = 0; k < w; ++k) {
                if (p == vals[i]) {
                    dl = k;
                    break;
                }
                p = p * *zeta;
            }
            if (dl < 0) raise(errc::verification_failed, "torsion discrete log failed");
            chi[i] = dl;
        }
        IMat Z = la::kernel_of_character(chi, BigInt(w));
        return la::mat_mul(la::mat_mul(Z, sat), basis);
    }
    raise(errc::bound_exceeded, "relation search exceeded the precision budget");
}

} // namespace mg

// Basis of {e : prod gammas^e = 1}, every row confirmed by exact
// exponentiation, complete up to the configured coordinate bound.
inline RelationLattice relation_lattice(const std::vector<NFElement>& gammas,
                                        const Budgets& budgets = Budgets{}) {
    if (gammas.empty()) return {};
    const FieldPtr& F = gammas[0].field();
    bool allq = true;
    for (const auto& x : gammas) {
        check_same_field(F, x.field());
        if (x.is_zero()) raise(errc::invalid_argument, "zero element in relation search");
        if (is_root_of_unity(x))
            raise(errc::invalid_argument, "root of unity in relation search");
        if (!x.is_rational()) allq = false;
    }
    IMat raw = allq ? mg::rational_relations(gammas, budgets)
                    : mg::general_relations(gammas, budgets);
    for (const auto& e : raw)
        if (!eval_relation(gammas, e).is_one())
            raise(errc::verification_failed, "relation failed exact verification");
    auto [H, U] = la::row_hnf(raw);
    IMat basis;
    for (auto& row : H) {
        bool zero = true;
        for (const auto& v : row)
            if (v != 0) zero = false;
        if (!zero) basis.push_back(std::move(row));
    }
    return {std::move(basis)};
}

// Free generators for the group generated by the N-th powers of the betas.
struct GroupPresentation {
    FieldPtr F;
    long N = 1;
    std::vector<NFElement> gammas; // multiplicatively independent
    IMat E;                        // betas[i]^N = prod gammas[j]^E[i][j]
};

inline GroupPresentation free_presentation(const std::vector<NFElement>& betas,
                                           const Budgets& budgets = Budgets{}) {
    if (betas.empty()) raise(errc::invalid_argument, "empty base list");
    const FieldPtr& F = betas[0].field();
    long N = torsion_exponent(betas);
    size_t h = betas.size();
    std::vector<NFElement> delta;
    delta.reserve(h);
    for (const auto& b : betas) delta.push_back(b.pow(N));

    // non-torsion powers, in a canonical processing order
    std::vector<size_t> act;
    for (size_t i = 0; i < h; ++i)
        if (!delta[i].is_one()) act.push_back(i);
    std::sort(act.begin(), act.end(), [&](size_t a, size_t b) {
        int c = NFElement::cmp(delta[a], delta[b]);
        return c != 0 ? c < 0 : a < b;
    });
    std::vector<NFElement> ds;
    for (size_t i : act) ds.push_back(delta[i]);
    size_t m = ds.size();

    bool positive_rational = true;
    for (const auto& d : ds)
        if (!d.is_rational() || d.to_rational() < 0) positive_rational = false;

    std::vector<NFElement> gam;
    IMat Eact(m);
    if (positive_rational && m > 0) {
        // the prime supports are already a free basis
        std::vector<std::map<BigInt, long>> fs;
        std::set<BigInt> primes;
        for (const auto& d : ds) {
            BigRat q = d.to_rational();
            auto fn = trial_factor(BigInt(q.get_num()), budgets.factor_bound);
            auto fd = trial_factor(BigInt(q.get_den()), budgets.factor_bound);
            if (!fn || !fd)
                raise(errc::bound_exceeded, "factorization exceeded the trial division bound");
            std::map<BigInt, long> mp = *fn;
            for (const auto& [p, e] : *fd) mp[p] -= e;
            for (const auto& [p, e] : mp)
                if (e != 0) primes.insert(p);
            fs.push_back(std::move(mp));
        }
        for (const BigInt& p : primes) gam.push_back(NFElement::of(F, BigRat(p)));
        for (size_t i = 0; i < m; ++i) {
            IVec row;
            for (const BigInt& p : primes) {
                auto it = fs[i].find(p);
                row.push_back(it == fs[i].end() ? BigInt(0) : BigInt(it->second));
            }
            Eact[i] = std::move(row);
        }
    } else if (m > 0) {
        // quotient by the relation lattice; torsion-freeness makes the
        // lattice saturated, so the normal form has unit diagonal
        RelationLattice lat = relation_lattice(ds, budgets);
        la::SmithForm sf = la::smith_form(lat.basis);
        size_t k = 0;
        for (size_t i = 0; i < sf.D.size() && i < (sf.D.empty() ? 0 : sf.D[0].size()); ++i)
            if (sf.D[i][i] != 0) {
                if (sf.D[i][i] != 1 && sf.D[i][i] != -1)
                    raise(errc::verification_failed, "relation lattice is not saturated");
                ++k;
            }
        IMat V = sf.V;
        if (V.empty()) {
            V.assign(m, IVec(m));
            for (size_t i = 0; i < m; ++i) V[i][i] = 1;
        }
        auto [HV, Vinv] = la::row_hnf(V);
        for (size_t i = 0; i < HV.size(); ++i)
            for (size_t j = 0; j < HV[i].size(); ++j)
                if (HV[i][j] != (i == j ? 1 : 0))
                    raise(errc::verification_failed, "basis change not unimodular");
        size_t r = m - k;
        for (size_t j = 0; j < r; ++j) gam.push_back(eval_relation(ds, Vinv[k + j]));
        for (size_t i = 0; i < m; ++i) {
            IVec row(r);
            for (size_t j = 0; j < r; ++j) row[j] = V[i][k + j];
            Eact[i] = std::move(row);
        }
    }

    for (size_t i = 0; i < m; ++i)
        if (!(eval_relation(gam, Eact[i]) == ds[i]))
            raise(errc::verification_failed, "presentation row failed exact verification");

    IMat E(h, IVec(gam.size()));
    for (size_t a = 0; a < m; ++a) E[act[a]] = Eact[a];
    return {F, N, std::move(gam), std::move(E)};
}

// f(X0, X1..Xr) with f(n, gamma1^n, ..., gammar^n) = e(n): each base is
// matched to its expression row and each coefficient power of n becomes an
// X0 power.  Negative exponents on the group variables are permitted.
inline Laurent encode_laurent(const ExpPoly& e, const GroupPresentation& P) {
    check_same_field(e.F, P.F);
    if (!e.corrections.empty())
        raise(errc::invalid_argument, "progression slice must have no corrections");
    size_t r = P.gammas.size();
    size_t h = P.E.size();
    std::vector<NFElement> delta;
    delta.reserve(h);
    for (size_t i = 0; i < h; ++i) delta.push_back(eval_relation(P.gammas, P.E[i]));
    Laurent f = lp::zero(e.F, 1 + r);
    for (const auto& t : e.terms) {
        size_t row = h;
        for (size_t i = 0; i < h; ++i)
            if (delta[i] == t.base) {
                row = i;
                break;
            }
        if (row == h) raise(errc::base_mismatch, "base not generated by the presentation");
        for (long k = 0; k <= t.poly.deg(); ++k) {
            if (t.poly.at(k).is_zero()) continue;
            std::vector<long long> ex(1 + r, 0);
            ex[0] = k;
            for (size_t j = 0; j < r; ++j) {
                if (!fits_long(P.E[row][j]))
                    raise(errc::bound_exceeded, "expression exponent too large");
                ex[1 + j] = to_long(P.E[row][j]);
            }
            lp::insert_add(f, ex, t.poly.at(k));
        }
    }
    return f;
}

} // namespace hroot
