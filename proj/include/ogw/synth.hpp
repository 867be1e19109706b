#pragma once

// Deterministic generator of operator stores.
//
// The generator enumerates every tensor signature allowed by the degree
// bookkeeping, then solves for values satisfying all verifier constraints.
// The energy filtration makes this tractable: a composition relation at
// class beta only involves classes beta' <= beta, and both factors of a
// genuine split carry strictly smaller energy.  Solving level by level in
// energy therefore meets an affine system at each step — the top-level
// unknowns enter linearly, paired against the structural operations, while
// lower levels contribute known constants.
//
// Per energy level:
//   unknowns  coordinates of admissible tensors (divisor-free insertions;
//             divisor insertions are determined afterwards by the pairing
//             rule, and relations at divisor-bearing signatures follow from
//             the divisor-free ones by the binomial theorem)
//   rows      composition relations at every signature and input tuple where
//             a term can be nonzero, cyclic-pairing rows, and, when real
//             symmetry is requested, input-reversal rows
//   solve     reduced row echelon form; free directions are filled with
//             seeded pseudo-random rationals, so equal seeds give
//             bit-identical stores
//
// Point data carries no relation rows: values are drawn freely on the
// dimension-admissible signatures and extended over divisors.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ogw/errors.hpp"
#include "ogw/linalg.hpp"
#include "ogw/verify.hpp"

namespace ogw {

struct SynthOptions {
    int max_arity = 2;       // boundary inputs per generated tensor
    int max_insertions = 2;  // divisor-free interior insertions per tensor
    bool real_signs = false; // impose input-reversal symmetry rows
    std::uint64_t seed = 0;
};

namespace detail {

inline Rational class_energy(const NovikovRing& ring,
                             const ClassVector& beta) {
    Rational e = 0;
    for (std::size_t i = 0; i < beta.size(); ++i)
        e += Rational(beta[i]) * ring.classes()[i].energy;
    return e;
}

inline long class_maslov(const NovikovRing& ring, const ClassVector& beta) {
    long mu = 0;
    for (std::size_t i = 0; i < beta.size(); ++i)
        mu += static_cast<long>(beta[i]) * ring.classes()[i].maslov;
    return mu;
}

inline Rational divisor_pairing(const NovikovRing& ring,
                                const ClassVector& beta, std::size_t j) {
    Monomial m = ring.make(0, std::vector<int>(ring.interior().size(), 0),
                           std::vector<int>(beta));
    return ring.class_pairing(m, static_cast<int>(j));
}

// All nonzero class-exponent vectors with energy at most the cutoff.
inline std::vector<ClassVector> positive_classes(const NovikovRing& ring,
                                                 const Rational& cutoff) {
    std::set<ClassVector> found;
    std::set<ClassVector> visited;
    std::vector<ClassVector> frontier{
        ClassVector(ring.classes().size(), 0)};
    visited.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<ClassVector> next;
        for (const auto& beta : frontier)
            for (std::size_t i = 0; i < ring.classes().size(); ++i) {
                ClassVector b2 = beta;
                ++b2[i];
                if (class_energy(ring, b2) > cutoff) continue;
                if (!visited.insert(b2).second) continue;
                found.insert(b2);
                next.push_back(b2);
            }
        frontier = std::move(next);
    }
    return {found.begin(), found.end()};
}

// Count vectors over the non-unit, non-divisor interior classes with at
// most `cap` insertions in total, in lexicographic order.
inline std::vector<CountVector> free_count_vectors(const NovikovRing& ring,
                                                   int cap) {
    std::vector<std::size_t> eligible;
    for (std::size_t j = 0; j < ring.interior().size(); ++j)
        if (!ring.interior()[j].unit && !ring.interior()[j].divisor)
            eligible.push_back(j);
    std::vector<CountVector> out;
    CountVector counts(ring.interior().size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos,
                                                    int left) {
        if (pos == eligible.size()) {
            out.push_back(counts);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[eligible[pos]] = c;
            rec(pos + 1, left - c);
        }
        counts[eligible[pos]] = 0;
    };
    rec(0, cap);
    return out;
}

inline long interior_degree_sum(const NovikovRing& ring,
                                const CountVector& counts) {
    long sum = 0;
    for (std::size_t j = 0; j < counts.size(); ++j)
        sum += static_cast<long>(counts[j]) * ring.interior()[j].degree;
    return sum;
}

// Output degree dictated by the index bookkeeping, or -1 when no cochain
// degree can carry the tensor (negative, or the excluded top degree).
inline long synth_output_degree(const NovikovRing& ring,
                                const CochainModel& model,
                                const ClassVector& beta,
                                const CountVector& counts,
                                const std::vector<int>& inputs) {
    long deg = 2 - static_cast<long>(inputs.size()) -
               2 * static_cast<long>(counts_to_multiset(counts).size()) -
               class_maslov(ring, beta) + interior_degree_sum(ring, counts);
    for (int i : inputs) deg += model.basis()[i].degree;
    if (deg < 0 || deg >= model.n()) return -1;
    return deg;
}

// The constraint rows of one energy level, evaluated against a candidate
// store.  Relation rows are flattened over output coordinates.
struct LevelRows {
    struct Instance {
        ClassVector beta;
        CountVector counts;
        std::vector<int> tuple;
    };
    std::vector<Instance> relations;
    std::vector<Instance> cyclic;  // tuple has arity + 1 entries
    struct Reversal {
        DiskKey key;
        DiskKey reversed;
        int sign;
    };
    std::vector<Reversal> reversals;

    std::vector<Rational> evaluate(const QOperators& q) const {
        const CochainModel& model = q.model();
        SignatureIndex index = SignatureIndex::build(q);
        std::vector<Rational> out;
        for (const auto& inst : relations) {
            RealCochain res = a_infinity_residual(q, index, inst.beta,
                                                  inst.counts, inst.tuple);
            out.insert(out.end(), res.coords.begin(), res.coords.end());
        }
        for (const auto& inst : cyclic) {
            std::size_t k = inst.tuple.size() - 1;
            std::vector<int> multiset = counts_to_multiset(inst.counts);
            std::vector<int> head(inst.tuple.begin(), inst.tuple.end() - 1);
            Rational lhs =
                model.pairing(q.eval_disk(inst.beta, head, multiset),
                              model.basis_vector(inst.tuple[k]));
            std::vector<int> rotated;
            rotated.push_back(inst.tuple[k]);
            rotated.insert(rotated.end(), inst.tuple.begin(),
                           inst.tuple.end() - 2);
            Rational rhs =
                model.pairing(q.eval_disk(inst.beta, rotated, multiset),
                              model.basis_vector(inst.tuple[k - 1]));
            long exponent = 0;
            for (std::size_t j = 0; j + 1 < inst.tuple.size(); ++j)
                exponent += model.basis()[inst.tuple[j]].degree + 1;
            exponent *= model.basis()[inst.tuple[k]].degree + 1;
            if (exponent % 2 != 0) rhs = -rhs;
            out.push_back(lhs - rhs);
        }
        for (const auto& rev : reversals) {
            RealCochain v =
                q.eval_disk(rev.key.beta, rev.key.inputs, rev.key.interior);
            RealCochain w = q.eval_disk(rev.reversed.beta,
                                        rev.reversed.inputs,
                                        rev.reversed.interior);
            for (std::size_t c = 0; c < v.coords.size(); ++c)
                out.push_back(v.coords[c] - Rational(rev.sign) * w.coords[c]);
        }
        return out;
    }
};

}  // namespace detail

inline QOperators synth_qdata(const NovikovRing& ring,
                              const CochainModel& model,
                              const Rational& cutoff,
                              const SynthOptions& opt) {
    QOperators q(ring, model, cutoff);
    std::mt19937_64 rng(opt.seed);
    auto small_rational = [&rng]() {
        long num = static_cast<long>(rng() % 13) - 6;
        long den = static_cast<long>(rng() % 3) + 1;
        return Rational(num, den);
    };
    auto nonzero_rational = [&rng]() {
        long num = static_cast<long>(rng() % 12) - 6;
        if (num >= 0) ++num;
        long den = static_cast<long>(rng() % 3) + 1;
        return Rational(num, den);
    };

    std::vector<std::size_t> divisor_indices;
    for (std::size_t j = 0; j < ring.interior().size(); ++j)
        if (ring.interior()[j].divisor) divisor_indices.push_back(j);

    // Write an entry together with every divisor insertion that stays within
    // the cutoff, each rescaled by the corresponding pairing power.
    auto place_disk = [&](const DiskKey& key, const RealCochain& value) {
        if (value.is_zero()) return;
        q.set_disk(key, value);
        Rational nu = detail::class_energy(ring, key.beta) +
                      Rational(static_cast<long>(key.interior.size()));
        std::function<void(std::size_t, DiskKey, RealCochain, Rational)> rec =
            [&](std::size_t pos, DiskKey cur, RealCochain val, Rational used) {
                if (pos == divisor_indices.size()) return;
                rec(pos + 1, cur, val, used);
                std::size_t j = divisor_indices[pos];
                Rational pairing = detail::divisor_pairing(ring, key.beta, j);
                while (nu + used + 1 <= cutoff) {
                    used += 1;
                    cur.interior.push_back(static_cast<int>(j));
                    val = model.scale(pairing, val);
                    q.set_disk(cur, val);
                    rec(pos + 1, cur, val, used);
                }
            };
        rec(0, key, value, Rational(0));
    };
    auto place_point = [&](const PointKey& key, const Rational& value) {
        if (value == 0) return;
        q.set_point(key, value);
        Rational nu = detail::class_energy(ring, key.beta) +
                      Rational(static_cast<long>(key.interior.size()));
        std::function<void(std::size_t, PointKey, Rational, Rational)> rec =
            [&](std::size_t pos, PointKey cur, Rational val, Rational used) {
                if (pos == divisor_indices.size()) return;
                rec(pos + 1, cur, val, used);
                std::size_t j = divisor_indices[pos];
                Rational pairing = detail::divisor_pairing(ring, key.beta, j);
                while (nu + used + 1 <= cutoff) {
                    used += 1;
                    cur.interior.push_back(static_cast<int>(j));
                    val = val * pairing;
                    q.set_point(cur, val);
                    rec(pos + 1, cur, val, used);
                }
            };
        rec(0, key, value, Rational(0));
    };

    std::vector<int> positive_basis;
    for (std::size_t i = 0; i < model.dim(); ++i)
        if (model.basis()[i].degree > 0)
            positive_basis.push_back(static_cast<int>(i));

    // Group the classes by energy and walk the levels in order.
    std::vector<ClassVector> classes = detail::positive_classes(ring, cutoff);
    std::map<Rational, std::vector<ClassVector>> levels;
    for (const auto& beta : classes)
        levels[detail::class_energy(ring, beta)].push_back(beta);

    int row_arity = std::max(2 * opt.max_arity - 1, opt.max_arity + 1);
    std::vector<CountVector> key_counts =
        detail::free_count_vectors(ring, opt.max_insertions);
    std::vector<CountVector> row_counts =
        detail::free_count_vectors(ring, 2 * opt.max_insertions);

    for (const auto& [energy, level_classes] : levels) {
        // Unknown columns: one per admissible signature and output
        // coordinate of the matching degree.
        std::vector<std::pair<DiskKey, int>> columns;
        for (const auto& beta : level_classes) {
            long mu = detail::class_maslov(ring, beta);
            for (const auto& counts : key_counts) {
                std::vector<int> multiset = counts_to_multiset(counts);
                if (energy + Rational(static_cast<long>(multiset.size())) >
                    cutoff)
                    continue;
                bool half_degrees_odd = !multiset.empty();
                for (int j : multiset)
                    if ((ring.interior()[j].degree / 2) % 2 == 0)
                        half_degrees_odd = false;
                for (int k = 0; k <= opt.max_arity; ++k) {
                    if (opt.real_signs && k == 0 && mu % 4 == 0 &&
                        half_degrees_odd)
                        continue;  // forced to vanish; no columns
                    if (k > 0 && positive_basis.empty()) continue;
                    std::vector<int> tuple(k, 0);
                    bool more = true;
                    while (more) {
                        std::vector<int> inputs;
                        for (int idx : tuple)
                            inputs.push_back(positive_basis[idx]);
                        long deg = detail::synth_output_degree(
                            ring, model, beta, counts, inputs);
                        if (deg >= 0)
                            for (std::size_t c = 0; c < model.dim(); ++c)
                                if (model.basis()[c].degree == deg)
                                    columns.push_back(
                                        {DiskKey{beta, inputs, multiset},
                                         static_cast<int>(c)});
                        more = k > 0 &&
                               next_tuple(tuple, positive_basis.size());
                        if (k == 0) more = false;
                    }
                }
            }
        }

        // Constraint rows at this level.
        detail::LevelRows rows;
        for (const auto& beta : level_classes) {
            for (const auto& counts : row_counts) {
                std::vector<int> multiset = counts_to_multiset(counts);
                if (energy + Rational(static_cast<long>(multiset.size())) >
                    cutoff)
                    continue;
                for (int k = 0; k <= row_arity; ++k) {
                    std::vector<int> tuple(k, 0);
                    bool more = true;
                    while (more) {
                        rows.relations.push_back({beta, counts, tuple});
                        more = k > 0 && next_tuple(tuple, model.dim());
                        if (k == 0) more = false;
                    }
                }
            }
        }
        std::set<std::pair<ClassVector, CountVector>> cyclic_sigs;
        std::set<DiskKey> seen_keys;
        for (const auto& [key, coord] : columns) {
            if (!seen_keys.insert(key).second) continue;
            if (!key.inputs.empty())
                cyclic_sigs.insert(
                    {key.beta, multiset_to_counts(ring.interior().size(),
                                                  key.interior)});
            if (opt.real_signs && !key.inputs.empty()) {
                DiskKey reversed = key;
                std::reverse(reversed.inputs.begin(), reversed.inputs.end());
                if (!(reversed < key))
                    rows.reversals.push_back(
                        {key, reversed, reversal_sign(q, key)});
            }
        }
        for (const auto& [beta, counts] : cyclic_sigs)
            for (int k = 1; k <= opt.max_arity; ++k) {
                std::vector<int> tuple(k + 1, 0);
                do {
                    rows.cyclic.push_back({beta, counts, tuple});
                } while (next_tuple(tuple, model.dim()));
            }

        // Assemble the affine system by indicator evaluation: the residuals
        // are affine in the level's unknowns because a genuine energy split
        // cannot place both factors at the current level.
        std::vector<Rational> constant = rows.evaluate(q);
        std::size_t nrows = constant.size();
        Mat matrix(nrows, Vec(columns.size(), Rational(0)));
        for (std::size_t u = 0; u < columns.size(); ++u) {
            QOperators probe = q;
            RealCochain indicator = model.zero_real();
            indicator.coords[columns[u].second] = 1;
            probe.set_disk(columns[u].first, indicator);
            std::vector<Rational> shifted = rows.evaluate(probe);
            for (std::size_t r = 0; r < nrows; ++r)
                matrix[r][u] = shifted[r] - constant[r];
        }

        // Drop identically-zero rows, then solve.
        Mat reduced;
        Vec rhs;
        for (std::size_t r = 0; r < nrows; ++r) {
            bool all_zero = constant[r] == 0;
            for (std::size_t u = 0; all_zero && u < columns.size(); ++u)
                all_zero = matrix[r][u] == 0;
            if (all_zero) continue;
            reduced.push_back(matrix[r]);
            rhs.push_back(-constant[r]);
        }
        Vec solution(columns.size(), Rational(0));
        if (!reduced.empty()) {
            std::optional<Vec> particular = solve_linear(reduced, rhs);
            if (!particular)
                throw ConfigError("infeasible at level " +
                                  rational_to_string(energy));
            solution = *particular;
        }
        Mat kernel = reduced.empty()
                         ? Mat()
                         : kernel_basis(reduced);
        if (reduced.empty())
            for (std::size_t u = 0; u < columns.size(); ++u) {
                Vec e(columns.size(), Rational(0));
                e[u] = 1;
                kernel.push_back(e);
            }
        for (const auto& direction : kernel) {
            Rational c = small_rational();
            if (c == 0) continue;
            for (std::size_t u = 0; u < columns.size(); ++u)
                solution[u] += c * direction[u];
        }

        // Install the level and its divisor extensions.
        std::map<DiskKey, RealCochain> assembled;
        for (std::size_t u = 0; u < columns.size(); ++u) {
            if (solution[u] == 0) continue;
            auto it = assembled.find(columns[u].first);
            if (it == assembled.end())
                it = assembled.emplace(columns[u].first, model.zero_real())
                         .first;
            it->second.coords[columns[u].second] += solution[u];
        }
        for (const auto& [key, value] : assembled) place_disk(key, value);
    }

    // Point data: free values on the dimension-admissible signatures.
    for (const auto& beta : classes) {
        Rational energy = detail::class_energy(ring, beta);
        long mu = detail::class_maslov(ring, beta);
        for (const auto& counts : key_counts) {
            std::vector<int> multiset = counts_to_multiset(counts);
            long l = static_cast<long>(multiset.size());
            if (energy + Rational(l) > cutoff) continue;
            if (detail::interior_degree_sum(ring, counts) !=
                ring.n() - 3 + mu + 2 * l)
                continue;
            place_point(PointKey{beta, multiset}, nonzero_rational());
        }
    }
    return q;
}

inline QOperators synth_qdata(const NovikovRing& ring,
                              const CochainModel& model,
                              const Rational& cutoff, std::uint64_t seed) {
    SynthOptions opt;
    opt.seed = seed;
    return synth_qdata(ring, model, cutoff, opt);
}

}  // namespace ogw
