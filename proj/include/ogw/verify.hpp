#pragma once

// Exact property verifiers for operator stores.
//
// Each verifier sweeps the relevant signatures (class exponents, interior
// multisets, basis tuples) and checks one structural property of the store
// on the nose, returning a report with a human-readable witness for every
// violation:
//
//   verify_a_infinity : the quadratic composition relations, coefficientwise
//                       per (class, multiset) with multinomial split weights
//   verify_unit       : degree-zero boundary inputs act only through the
//                       structural energy-zero operations
//   verify_cyclic     : the pairing intertwines cyclic rotation of inputs
//   verify_degree     : output degrees match the index bookkeeping
//   verify_symmetry   : interior degrees even, multiset storage canonical
//   verify_fundamental: unit interior class inserts only at the one special
//                       signature
//   verify_energy_zero: the structural operations match their formulas and
//                       nothing at energy zero is stored
//   verify_divisor    : divisor insertions rescale by the class pairing, in
//                       both directions within the cutoff
//   verify_top_degree : stored values have no top-degree component
//   verify_real_signs : input reversal symmetry and its two vanishing
//                       corollaries
//
// The A-infinity residual used by the first verifier is shared with the
// store generator, which solves the same relations level by level.

#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ogw/qops.hpp"

namespace ogw {

struct CheckFailure {
    std::string property;
    std::string witness;
};

struct Report {
    std::string subject;
    long checks = 0;
    long failure_count = 0;
    std::vector<CheckFailure> failures = {};

    bool passed() const { return failure_count == 0; }
    void fail(const std::string& property, const std::string& witness) {
        ++failure_count;
        if (failures.size() < 64) failures.push_back({property, witness});
    }
    void merge(const Report& other) {
        checks += other.checks;
        failure_count += other.failure_count;
        for (const auto& f : other.failures)
            if (failures.size() < 64) failures.push_back(f);
    }
};

using ClassVector = std::vector<int>;
using CountVector = std::vector<int>;

inline CountVector multiset_to_counts(std::size_t nclasses,
                                      const std::vector<int>& multiset) {
    CountVector counts(nclasses, 0);
    for (int j : multiset) ++counts[j];
    return counts;
}

inline std::vector<int> counts_to_multiset(const CountVector& counts) {
    std::vector<int> out;
    for (std::size_t j = 0; j < counts.size(); ++j)
        for (int i = 0; i < counts[j]; ++i) out.push_back(static_cast<int>(j));
    return out;
}

inline Rational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Rational out = 1;
    for (int i = 0; i < k; ++i) out *= Rational(n - i, i + 1);
    return out;
}

// Advance v through all vectors with 0 <= v <= limit componentwise; returns
// false once v wraps back to zero.
inline bool next_bounded_vector(std::vector<int>& v,
                                const std::vector<int>& limit) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < limit[i]) {
            ++v[i];
            return true;
        }
        v[i] = 0;
    }
    return false;
}

// Advance a basis tuple through all dim^k values; returns false at wrap.
inline bool next_tuple(std::vector<int>& tuple, std::size_t dim) {
    for (std::size_t i = tuple.size(); i-- > 0;) {
        if (tuple[i] + 1 < static_cast<int>(dim)) {
            ++tuple[i];
            return true;
        }
        tuple[i] = 0;
    }
    return false;
}

// ---- formatting -----------------------------------------------------------

namespace detail {

inline std::string format_class(const NovikovRing& ring, const ClassVector& b) {
    Monomial m = ring.make(0, std::vector<int>(ring.interior().size(), 0), b);
    return ring.to_string(m);
}

inline std::string format_counts(const NovikovRing& ring,
                                 const CountVector& r) {
    std::string out;
    for (std::size_t j = 0; j < r.size(); ++j)
        for (int i = 0; i < r[j]; ++i) {
            if (!out.empty()) out += ",";
            out += ring.interior()[j].id;
        }
    return out.empty() ? "-" : out;
}

inline std::string format_tuple(const CochainModel& model,
                                const std::vector<int>& tuple) {
    std::string out;
    for (int i : tuple) {
        if (!out.empty()) out += ",";
        out += model.basis()[i].label;
    }
    return out.empty() ? "-" : out;
}

inline std::string format_signature(const QOperators& q, const ClassVector& b,
                                    const std::vector<int>& inputs,
                                    const CountVector& r) {
    return "class=" + format_class(q.ring(), b) + " inputs=(" +
           format_tuple(q.model(), inputs) + ") interior=(" +
           format_counts(q.ring(), r) + ")";
}

}  // namespace detail

// ---- signature index ------------------------------------------------------

// Which (class, interior multiset) signatures carry entries, and at which
// arities.  Used to skip vanishing terms when sweeping relations, and to
// enumerate the candidate relations worth checking at all.
class SignatureIndex {
public:
    using Signature = std::pair<ClassVector, CountVector>;

    static SignatureIndex build(const QOperators& q) {
        SignatureIndex index;
        std::size_t nint = q.ring().interior().size();
        for (const auto& [key, value] : q.disk_entries())
            index.add(key.beta, multiset_to_counts(nint, key.interior),
                      key.inputs.size());
        return index;
    }

    void add(const ClassVector& beta, const CountVector& counts,
             std::size_t arity) {
        arities_[{beta, counts}].insert(arity);
    }

    const std::map<Signature, std::set<std::size_t>>& signatures() const {
        return arities_;
    }

    // Can q^{beta}_{arity, |counts|} be nonzero: either a structural
    // energy-zero signature or a stored one.
    bool possible(const ClassVector& beta,
                  const CountVector& counts, std::size_t arity) const {
        bool zero_class = std::all_of(beta.begin(), beta.end(),
                                      [](int e) { return e == 0; });
        long insertions = 0;
        for (int c : counts) insertions += c;
        if (zero_class) {
            if (arity == 1 && insertions == 0) return true;
            if (arity == 2 && insertions == 0) return true;
            if (arity == 0 && insertions == 1) return true;
            return false;
        }
        auto it = arities_.find({beta, counts});
        return it != arities_.end() && it->second.count(arity) > 0;
    }

private:
    std::map<Signature, std::set<std::size_t>> arities_;
};

// ---- the composition residual ---------------------------------------------

// The left-hand side of the quadratic relation at a fixed class, interior
// count vector, and basis tuple: summing over class splits, interior splits
// weighted by the product of binomials, composition positions, and the sign
// (-1)^{sum of (deg + 1) over the inputs before the insertion}.
inline RealCochain a_infinity_residual(const QOperators& q,
                                       const SignatureIndex& index,
                                       const ClassVector& beta,
                                       const CountVector& counts,
                                       const std::vector<int>& tuple) {
    const CochainModel& model = q.model();
    const std::size_t k = tuple.size();
    RealCochain res = model.zero_real();

    ClassVector beta2(beta.size(), 0);
    do {
        ClassVector beta1(beta.size());
        for (std::size_t i = 0; i < beta.size(); ++i)
            beta1[i] = beta[i] - beta2[i];
        CountVector r2(counts.size(), 0);
        do {
            CountVector r1(counts.size());
            Rational weight = 1;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                r1[i] = counts[i] - r2[i];
                weight *= binomial(counts[i], r2[i]);
            }
            std::vector<int> inner_multiset = counts_to_multiset(r2);
            std::vector<int> outer_multiset = counts_to_multiset(r1);
            for (std::size_t k2 = 0; k2 <= k; ++k2) {
                std::size_t k1 = k + 1 - k2;
                if (!index.possible(beta2, r2, k2)) continue;
                if (!index.possible(beta1, r1, k1)) continue;
                int sign = 1;
                for (std::size_t i = 0; i + k2 <= k; ++i) {
                    // sign for insertion after the first i inputs
                    if (i > 0 &&
                        (model.basis()[tuple[i - 1]].degree + 1) % 2 != 0)
                        sign = -sign;
                    std::vector<int> inner_inputs(tuple.begin() + i,
                                                  tuple.begin() + i + k2);
                    RealCochain inner =
                        q.eval_disk(beta2, inner_inputs, inner_multiset);
                    if (inner.is_zero()) continue;
                    std::vector<int> outer_inputs;
                    outer_inputs.reserve(k1);
                    outer_inputs.insert(outer_inputs.end(), tuple.begin(),
                                        tuple.begin() + i);
                    outer_inputs.push_back(0);
                    outer_inputs.insert(outer_inputs.end(),
                                        tuple.begin() + i + k2, tuple.end());
                    for (std::size_t c = 0; c < model.dim(); ++c) {
                        if (inner.coords[c] == 0) continue;
                        outer_inputs[i] = static_cast<int>(c);
                        RealCochain outer =
                            q.eval_disk(beta1, outer_inputs, outer_multiset);
                        if (outer.is_zero()) continue;
                        res = model.add(
                            res, model.scale(weight * sign * inner.coords[c],
                                             outer));
                    }
                }
            }
        } while (next_bounded_vector(r2, counts));
    } while (next_bounded_vector(beta2, beta));
    return res;
}

// Candidate (class, multiset) pairs at which the relation could have any
// nonzero term: pairwise sums of participating signatures, filtered to the
// store cutoff and the given interior support.
inline std::vector<std::pair<ClassVector, CountVector>>
relation_candidates(const QOperators& q, const SignatureIndex& index,
                    const InteriorForm& gamma) {
    const NovikovRing& ring = q.ring();
    std::size_t ncls = ring.classes().size();
    std::size_t nint = ring.interior().size();

    std::vector<std::pair<ClassVector, CountVector>> sigs;
    sigs.emplace_back(ClassVector(ncls, 0), CountVector(nint, 0));
    for (int j : gamma.support) {
        CountVector r(nint, 0);
        r[j] = 1;
        sigs.emplace_back(ClassVector(ncls, 0), r);
    }
    for (const auto& [sig, arities] : index.signatures()) sigs.push_back(sig);

    std::set<std::pair<ClassVector, CountVector>> out;
    for (const auto& [b1, r1] : sigs)
        for (const auto& [b2, r2] : sigs) {
            ClassVector beta(ncls);
            CountVector counts(nint);
            Rational nu = 0;
            bool ok = true;
            for (std::size_t i = 0; i < ncls; ++i) {
                beta[i] = b1[i] + b2[i];
                nu += ring.classes()[i].energy * beta[i];
            }
            for (std::size_t j = 0; j < nint; ++j) {
                counts[j] = r1[j] + r2[j];
                nu += counts[j];
                if (counts[j] > 0 &&
                    !std::binary_search(gamma.support.begin(),
                                        gamma.support.end(),
                                        static_cast<int>(j)))
                    ok = false;
            }
            if (ok && nu <= q.cutoff()) out.insert({beta, counts});
        }
    return {out.begin(), out.end()};
}

// ---- verifiers ------------------------------------------------------------

inline Report verify_a_infinity(const QOperators& q, const InteriorForm& gamma,
                                int k_max) {
    q.check_interior_form(gamma);
    Report rep{"a_infinity"};
    SignatureIndex index = SignatureIndex::build(q);
    const CochainModel& model = q.model();
    for (const auto& [beta, counts] : relation_candidates(q, index, gamma)) {
        for (int k = 0; k <= k_max; ++k) {
            std::vector<int> tuple(k, 0);
            do {
                RealCochain res =
                    a_infinity_residual(q, index, beta, counts, tuple);
                ++rep.checks;
                if (!res.is_zero())
                    rep.fail("a_infinity",
                             detail::format_signature(q, beta, tuple, counts) +
                                 " residual=" + model.to_string(res));
            } while (next_tuple(tuple, model.dim()));
        }
    }
    return rep;
}

inline Report verify_unit(const QOperators& q, const InteriorForm&) {
    Report rep{"unit"};
    const CochainModel& model = q.model();
    const NovikovRing& ring = q.ring();
    // Stored entries may not consume degree-zero boundary inputs at all.
    for (const auto& [key, value] : q.disk_entries()) {
        ++rep.checks;
        for (int i : key.inputs)
            if (model.basis()[i].degree == 0) {
                rep.fail("unit",
                         detail::format_signature(
                             q, key.beta, key.inputs,
                             multiset_to_counts(ring.interior().size(),
                                                key.interior)) +
                             " consumes a degree-0 input");
                break;
            }
    }
    // The structural operations act on degree-zero inputs by the quoted
    // formulas: differential at arity one, multiplication at arity two.
    ClassVector zero(ring.classes().size(), 0);
    for (std::size_t f = 0; f < model.dim(); ++f) {
        if (model.basis()[f].degree != 0) continue;
        RealCochain vf = model.basis_vector(f);
        ++rep.checks;
        if (q.eval_disk(zero, {static_cast<int>(f)}, {}) != model.d(vf))
            rep.fail("unit", "arity-1 action on " + model.basis()[f].label +
                                 " is not the differential");
        for (std::size_t a = 0; a < model.dim(); ++a) {
            RealCochain va = model.basis_vector(a);
            RealCochain left =
                q.eval_disk(zero, {static_cast<int>(f), static_cast<int>(a)},
                            {});
            RealCochain right =
                q.eval_disk(zero, {static_cast<int>(a), static_cast<int>(f)},
                            {});
            int sign = model.basis()[a].degree % 2 != 0 ? -1 : 1;
            ++rep.checks;
            if (left != model.wedge(vf, va) ||
                right != model.scale(sign, model.wedge(va, vf)))
                rep.fail("unit", "arity-2 action on (" +
                                     model.basis()[f].label + "," +
                                     model.basis()[a].label +
                                     ") is not multiplication");
        }
    }
    return rep;
}

inline Report verify_cyclic(const QOperators& q, const InteriorForm& gamma) {
    q.check_interior_form(gamma);
    Report rep{"cyclic"};
    const CochainModel& model = q.model();
    const NovikovRing& ring = q.ring();
    SignatureIndex index = SignatureIndex::build(q);

    std::vector<std::tuple<ClassVector, CountVector, std::size_t>> sweeps;
    ClassVector zero(ring.classes().size(), 0);
    CountVector none(ring.interior().size(), 0);
    sweeps.emplace_back(zero, none, 1);
    sweeps.emplace_back(zero, none, 2);
    for (const auto& [sig, arities] : index.signatures())
        for (std::size_t arity : arities)
            if (arity >= 1) sweeps.emplace_back(sig.first, sig.second, arity);

    for (const auto& [beta, counts, k] : sweeps) {
        std::vector<int> multiset = counts_to_multiset(counts);
        if (!multiset_in_support(multiset, gamma.support)) continue;
        std::vector<int> tuple(k + 1, 0);
        do {
            // <q(a_1..a_k), a_{k+1}> vs the rotation moving a_{k+1} in front.
            std::vector<int> head(tuple.begin(), tuple.end() - 1);
            RealCochain lhs_val = q.eval_disk(beta, head, multiset);
            Rational lhs =
                model.pairing(lhs_val, model.basis_vector(tuple[k]));
            std::vector<int> rotated;
            rotated.push_back(tuple[k]);
            rotated.insert(rotated.end(), tuple.begin(), tuple.end() - 2);
            RealCochain rhs_val = q.eval_disk(beta, rotated, multiset);
            Rational rhs =
                model.pairing(rhs_val, model.basis_vector(tuple[k - 1]));
            long exponent = 0;
            for (std::size_t j = 0; j + 1 < tuple.size(); ++j)
                exponent += model.basis()[tuple[j]].degree + 1;
            exponent *= model.basis()[tuple[k]].degree + 1;
            if (exponent % 2 != 0) rhs = -rhs;
            ++rep.checks;
            if (lhs != rhs)
                rep.fail("cyclic",
                         detail::format_signature(q, beta, tuple, counts) +
                             " lhs=" + rational_to_string(lhs) +
                             " rhs=" + rational_to_string(rhs));
        } while (next_tuple(tuple, model.dim()));
    }
    return rep;
}

inline Report verify_degree(const QOperators& q, const InteriorForm&) {
    Report rep{"degree"};
    const CochainModel& model = q.model();
    const NovikovRing& ring = q.ring();
    for (const auto& [key, value] : q.disk_entries()) {
        Monomial m = ring.make(0, std::vector<int>(ring.interior().size(), 0),
                               key.beta);
        long expected = 2 - static_cast<long>(key.inputs.size()) -
                        2 * static_cast<long>(key.interior.size()) -
                        ring.maslov(m);
        for (int i : key.inputs) expected += model.basis()[i].degree;
        for (int j : key.interior) expected += ring.interior()[j].degree;
        for (std::size_t c = 0; c < model.dim(); ++c) {
            if (value.coords[c] == 0) continue;
            ++rep.checks;
            if (model.basis()[c].degree != expected)
                rep.fail(
                    "degree",
                    detail::format_signature(
                        q, key.beta, key.inputs,
                        multiset_to_counts(ring.interior().size(),
                                           key.interior)) +
                        " output " + model.basis()[c].label + " has degree " +
                        std::to_string(model.basis()[c].degree) +
                        ", bookkeeping requires " + std::to_string(expected));
        }
    }
    for (const auto& [key, value] : q.point_entries()) {
        Monomial m = ring.make(0, std::vector<int>(ring.interior().size(), 0),
                               key.beta);
        long total = 0;
        for (int j : key.interior) total += ring.interior()[j].degree;
        long required = model.n() - 3 + ring.maslov(m) +
                        2 * static_cast<long>(key.interior.size());
        ++rep.checks;
        if (total != required)
            rep.fail("degree",
                     "point class=" + detail::format_class(ring, key.beta) +
                         " interior=(" +
                         detail::format_counts(
                             ring, multiset_to_counts(ring.interior().size(),
                                                      key.interior)) +
                         ") total interior degree " + std::to_string(total) +
                         ", bookkeeping requires " + std::to_string(required));
    }
    return rep;
}

inline Report verify_symmetry(const QOperators& q, const InteriorForm&) {
    Report rep{"symmetry"};
    const NovikovRing& ring = q.ring();
    for (const auto& g : ring.interior()) {
        ++rep.checks;
        if (g.degree % 2 != 0)
            rep.fail("symmetry", "interior class " + g.id +
                                     " has odd degree; permutation signs "
                                     "would be nontrivial");
    }
    for (const auto& [key, value] : q.disk_entries()) {
        ++rep.checks;
        if (!std::is_sorted(key.interior.begin(), key.interior.end()))
            rep.fail("symmetry", "entry stored with non-canonical multiset");
        std::vector<int> reversed(key.interior.rbegin(), key.interior.rend());
        if (!(q.eval_disk(key.beta, key.inputs, reversed) == value))
            rep.fail("symmetry", "evaluation depends on multiset order");
    }
    return rep;
}

inline Report verify_fundamental(const QOperators& q,
                                 const InteriorForm&) {
    Report rep{"fundamental"};
    const NovikovRing& ring = q.ring();
    const CochainModel& model = q.model();
    std::optional<int> unit = ring.unit_interior_index();
    if (unit) {
        ClassVector zero(ring.classes().size(), 0);
        ++rep.checks;
        if (!(q.eval_disk(zero, {}, {*unit}) ==
              model.scale(-1, model.unit_real())))
            rep.fail("fundamental",
                     "energy-zero insertion of the unit class is not -1");
        for (const auto& [key, value] : q.disk_entries()) {
            ++rep.checks;
            if (std::count(key.interior.begin(), key.interior.end(), *unit))
                rep.fail(
                    "fundamental",
                    detail::format_signature(
                        q, key.beta, key.inputs,
                        multiset_to_counts(ring.interior().size(),
                                           key.interior)) +
                        " inserts the unit interior class");
        }
        for (const auto& [key, value] : q.point_entries()) {
            ++rep.checks;
            if (std::count(key.interior.begin(), key.interior.end(), *unit))
                rep.fail("fundamental",
                         "point class=" +
                             detail::format_class(ring, key.beta) +
                             " inserts the unit interior class");
        }
    }
    return rep;
}

inline Report verify_energy_zero(const QOperators& q,
                                 const InteriorForm&) {
    Report rep{"energy_zero"};
    const NovikovRing& ring = q.ring();
    const CochainModel& model = q.model();
    ClassVector zero(ring.classes().size(), 0);
    for (std::size_t i = 0; i < model.dim(); ++i) {
        ++rep.checks;
        if (!(q.eval_disk(zero, {static_cast<int>(i)}, {}) ==
              model.d(model.basis_vector(i))))
            rep.fail("energy_zero", "arity-1 structural operation at " +
                                        model.basis()[i].label +
                                        " is not the differential");
        for (std::size_t j = 0; j < model.dim(); ++j) {
            int sign = model.basis()[i].degree % 2 != 0 ? -1 : 1;
            ++rep.checks;
            if (!(q.eval_disk(zero,
                              {static_cast<int>(i), static_cast<int>(j)},
                              {}) ==
                  model.scale(sign, model.wedge(model.basis_vector(i),
                                                model.basis_vector(j)))))
                rep.fail("energy_zero",
                         "arity-2 structural operation at (" +
                             model.basis()[i].label + "," +
                             model.basis()[j].label +
                             ") is not the signed product");
        }
    }
    for (std::size_t j = 0; j < ring.interior().size(); ++j) {
        RealCochain expected = model.scale(
            ring.interior()[j].degree % 2 != 0 ? 1 : -1,
            q.relative().restriction(static_cast<int>(j)));
        ++rep.checks;
        if (!(q.eval_disk(zero, {}, {static_cast<int>(j)}) == expected))
            rep.fail("energy_zero", "interior restriction of " +
                                        ring.interior()[j].id +
                                        " does not match the quoted formula");
    }
    ++rep.checks;
    if (!q.eval_disk(zero, {}, {}).is_zero() ||
        !q.eval_disk(zero, {0, 0, 0}, {}).is_zero())
        rep.fail("energy_zero", "an unlisted energy-zero signature is nonzero");
    return rep;
}

inline Report verify_divisor(const QOperators& q, const InteriorForm&) {
    Report rep{"divisor"};
    const NovikovRing& ring = q.ring();
    const CochainModel& model = q.model();
    std::size_t nint = ring.interior().size();

    auto pairing_of = [&](const ClassVector& beta, int j) {
        Monomial m = ring.make(0, std::vector<int>(nint, 0), beta);
        return ring.class_pairing(m, j);
    };
    auto entry_nu = [&](const ClassVector& beta, std::size_t insertions) {
        Monomial m = ring.make(0, std::vector<int>(nint, 0), beta);
        return ring.energy(m) + Rational(insertions);
    };

    for (const auto& [key, value] : q.disk_entries()) {
        for (std::size_t j = 0; j < nint; ++j) {
            if (!ring.interior()[j].divisor) continue;
            std::string sig = detail::format_signature(
                q, key.beta, key.inputs,
                multiset_to_counts(nint, key.interior));
            // Removal: each divisor insertion rescales the base entry.
            if (std::count(key.interior.begin(), key.interior.end(),
                           static_cast<int>(j))) {
                std::vector<int> base = key.interior;
                base.erase(std::find(base.begin(), base.end(),
                                     static_cast<int>(j)));
                RealCochain expected =
                    model.scale(pairing_of(key.beta, static_cast<int>(j)),
                                q.eval_disk(key.beta, key.inputs, base));
                ++rep.checks;
                if (!(value == expected))
                    rep.fail("divisor", sig + " is not the pairing multiple " +
                                            "of its " +
                                            ring.interior()[j].id +
                                            "-removal");
            }
            // Extension: within the cutoff the rescaled entry must be stored.
            if (entry_nu(key.beta, key.interior.size() + 1) <= q.cutoff()) {
                std::vector<int> extended = key.interior;
                extended.push_back(static_cast<int>(j));
                RealCochain expected = model.scale(
                    pairing_of(key.beta, static_cast<int>(j)), value);
                ++rep.checks;
                if (!(q.eval_disk(key.beta, key.inputs, extended) == expected))
                    rep.fail("divisor",
                             sig + " lacks its " + ring.interior()[j].id +
                                 "-extension within the cutoff");
            }
        }
    }
    for (const auto& [key, value] : q.point_entries()) {
        for (std::size_t j = 0; j < nint; ++j) {
            if (!ring.interior()[j].divisor) continue;
            std::string sig =
                "point class=" + detail::format_class(ring, key.beta) +
                " interior=(" +
                detail::format_counts(ring,
                                      multiset_to_counts(nint, key.interior)) +
                ")";
            if (std::count(key.interior.begin(), key.interior.end(),
                           static_cast<int>(j))) {
                std::vector<int> base = key.interior;
                base.erase(std::find(base.begin(), base.end(),
                                     static_cast<int>(j)));
                ++rep.checks;
                if (value != pairing_of(key.beta, static_cast<int>(j)) *
                                 q.eval_point(key.beta, base))
                    rep.fail("divisor", sig + " is not the pairing multiple " +
                                            "of its " +
                                            ring.interior()[j].id +
                                            "-removal");
            }
            if (entry_nu(key.beta, key.interior.size() + 1) <= q.cutoff()) {
                std::vector<int> extended = key.interior;
                extended.push_back(static_cast<int>(j));
                ++rep.checks;
                if (q.eval_point(key.beta, extended) !=
                    pairing_of(key.beta, static_cast<int>(j)) * value)
                    rep.fail("divisor",
                             sig + " lacks its " + ring.interior()[j].id +
                                 "-extension within the cutoff");
            }
        }
    }
    return rep;
}

inline Report verify_top_degree(const QOperators& q,
                                const InteriorForm&) {
    Report rep{"top_degree"};
    const CochainModel& model = q.model();
    for (const auto& [key, value] : q.disk_entries()) {
        ++rep.checks;
        for (std::size_t c = 0; c < model.dim(); ++c)
            if (value.coords[c] != 0 &&
                model.basis()[c].degree == model.n()) {
                rep.fail("top_degree",
                         detail::format_signature(
                             q, key.beta, key.inputs,
                             multiset_to_counts(q.ring().interior().size(),
                                                key.interior)) +
                             " has a top-degree component " +
                             model.basis()[c].label);
                break;
            }
    }
    return rep;
}

// Sign of input reversal: exponent mu/2 + l + 1 + s_sigma + |alpha| + sum m_j
// with s_sigma the full inversion count plus (k-1)|alpha| + k(k-1)/2.
inline int reversal_sign(const QOperators& q, const DiskKey& key) {
    const NovikovRing& ring = q.ring();
    const CochainModel& model = q.model();
    Monomial m = ring.make(0, std::vector<int>(ring.interior().size(), 0),
                           key.beta);
    long k = static_cast<long>(key.inputs.size());
    long total = 0;
    long pairs = 0;
    for (std::size_t i = 0; i < key.inputs.size(); ++i) {
        long di = model.basis()[key.inputs[i]].degree;
        for (std::size_t j = i + 1; j < key.inputs.size(); ++j)
            pairs += di * model.basis()[key.inputs[j]].degree;
        total += di;
    }
    long s_sigma = pairs + (k - 1) * total + k * (k - 1) / 2;
    long exponent = ring.maslov(m) / 2 +
                    static_cast<long>(key.interior.size()) + 1 + s_sigma +
                    total;
    for (int j : key.interior) exponent += ring.interior()[j].degree / 2;
    return exponent % 2 == 0 ? 1 : -1;
}

inline Report verify_real_signs(const QOperators& q,
                                const InteriorForm&) {
    Report rep{"real_signs"};
    const NovikovRing& ring = q.ring();
    const CochainModel& model = q.model();
    for (const auto& [key, value] : q.disk_entries()) {
        std::string sig = detail::format_signature(
            q, key.beta, key.inputs,
            multiset_to_counts(ring.interior().size(), key.interior));
        Monomial m = ring.make(0, std::vector<int>(ring.interior().size(), 0),
                               key.beta);
        // Reversal identity.
        std::vector<int> reversed(key.inputs.rbegin(), key.inputs.rend());
        int sign = reversal_sign(q, key);
        RealCochain expected = model.scale(
            sign, q.eval_disk(key.beta, reversed, key.interior));
        ++rep.checks;
        if (!(value == expected))
            rep.fail("reversal", sig + " does not match " +
                                     (sign > 0 ? "+" : "-") +
                                     "(reversed entry)");
        // Parity vanishing: inputs in degrees 3 mod 4, output 2 mod 4 forces
        // antisymmetry under reversal.
        bool typical = model.n() % 4 == 3;
        for (int i : key.inputs)
            typical = typical && model.basis()[i].degree % 4 == 3;
        if (typical) {
            RealCochain rev = q.eval_disk(key.beta, reversed, key.interior);
            for (std::size_t c = 0; c < model.dim(); ++c) {
                if (value.coords[c] == 0 ||
                    model.basis()[c].degree % 4 != 2)
                    continue;
                ++rep.checks;
                if (value.coords[c] != -rev.coords[c])
                    rep.fail("parity",
                             sig + " output " + model.basis()[c].label +
                                 " is not antisymmetric under reversal");
            }
        }
        // Even vanishing: no boundary inputs, Maslov divisible by four, all
        // interior classes of odd half-degree.
        if (key.inputs.empty() && ring.maslov(m) % 4 == 0) {
            bool all_odd = !key.interior.empty();
            for (int j : key.interior)
                all_odd = all_odd && (ring.interior()[j].degree / 2) % 2 == 1;
            if (all_odd) {
                ++rep.checks;
                rep.fail("even_vanishing",
                         sig + " must vanish: Maslov index divisible by 4 "
                               "and all interior half-degrees odd");
            }
        }
    }
    return rep;
}

// ---- aggregation ----------------------------------------------------------

inline std::vector<Report> verify_all(const QOperators& q,
                                      const InteriorForm& gamma, int k_max) {
    return {
        verify_a_infinity(q, gamma, k_max), verify_unit(q, gamma),
        verify_cyclic(q, gamma),            verify_degree(q, gamma),
        verify_symmetry(q, gamma),          verify_fundamental(q, gamma),
        verify_energy_zero(q, gamma),       verify_divisor(q, gamma),
        verify_top_degree(q, gamma),
    };
}

}  // namespace ogw
