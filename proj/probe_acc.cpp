// Probe for acceptance test design: C10 ring, C5 counting, C6 timing.
#include <chrono>
#include <iostream>

#include "ogw/bounding.hpp"
#include "ogw/superpotential.hpp"
#include "ogw/synth.hpp"
#include "ogw/verify.hpp"

using namespace ogw;

static Series seed_s(const NovikovRing& ring, const Rational& cutoff) {
    return ring.monomial_series(ring.make(1, std::vector<int>(ring.interior().size(), 0), std::vector<int>(ring.classes().size(), 0)), Rational(1), cutoff);
}

int main() {
    using Clock = std::chrono::steady_clock;

    // --- C10 ring: mu=4 class, deg-2 interior, real store -------------------
    {
        NovikovRing ring(3, {{"g0", 0, true, false}, {"g1", 2, false, false}},
                         {{"b1", Rational(1), 4, false, {Rational(0), Rational(0)}}});
        CochainModel model = minimal_sphere_model(3);
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            SynthOptions opt;
            opt.real_signs = true;
            opt.seed = seed;
            QOperators q = synth_qdata(ring, model, Rational(3), opt);
            InteriorForm gamma = q.full_interior();
            Report rs = verify_real_signs(q, gamma);
            std::cout << "C10 seed " << seed << " real_signs " << (rs.passed() ? "PASS" : "FAIL")
                      << " disk_entries=" << q.disk_entries().size() << "\n";
            // count k=0 entries (all-interior odd m) -- should be none
            int zero_arity = 0;
            for (const auto& [key, val] : q.disk_entries())
                if (key.inputs.empty()) ++zero_arity;
            std::cout << "  zero-arity disk entries: " << zero_arity << "\n";
            for (const char* pol : {"real_even", "real_three_typical"}) {
                try {
                    SolverPolicy sp;
                    sp.variant = policy_from_string(pol);
                    sp.gauge = make_gauge("pivot");
                    Series a = seed_s(ring, Rational(3));
                    SolveResult res = solve_bounding(q, gamma, a, sp, Rational(3));
                    BoundingCheck chk = verify_bounding(q, res.pair);
                    bool nonzero = false;
                    for (const auto& s : res.pair.b.coords)
                        if (!s.is_zero()) nonzero = true;
                    std::cout << "  " << pol << ": solved, verify=" << (chk.report.passed() ? "ok" : "FAIL")
                              << " b_nonzero=" << nonzero << "\n";
                } catch (const std::exception& e) {
                    std::cout << "  " << pol << ": THREW " << e.what() << "\n";
                }
            }
        }
    }

    // --- C5 ring: 4 classes energy 1/2, empty store, cutoff 8 ---------------
    {
        auto t0 = Clock::now();
        NovikovRing ring(3, {{"g0", 0, true, false}},
                         {{"b1", Rational(1, 2), 2, false, {Rational(0)}},
                          {"b2", Rational(1, 2), 4, false, {Rational(0)}},
                          {"b3", Rational(1, 2), 6, false, {Rational(0)}},
                          {"b4", Rational(1, 2), 8, false, {Rational(0)}}});
        CochainModel model = minimal_sphere_model(3);
        QOperators q(ring, model, Rational(8));
        InteriorForm gamma = q.full_interior();
        SolverPolicy sp;
        sp.gauge = make_gauge("pivot");
        Series a = seed_s(ring, Rational(8));
        SolveResult res = solve_bounding(q, gamma, a, sp, Rational(8));
        Superpotential omega = compute_omega(q, res.pair);
        auto t1 = Clock::now();
        std::cout << "C5 solve+omega ms="
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                  << " omega_terms=" << omega.omega.terms.size() << "\n";
        // count admissible query box
        long queries = 0, admissible = 0;
        auto t2 = Clock::now();
        for (int b1 = 0; b1 * 1 <= 16; ++b1)
            for (int b2 = 0; (b1 + b2) <= 16; ++b2)
                for (int b3 = 0; (b1 + b2 + b3) <= 16; ++b3)
                    for (int b4 = 0; (b1 + b2 + b3 + b4) <= 16; ++b4)
                        for (int k = 0; k <= 4; ++k)
                            for (int r0 = 0; r0 <= 3; ++r0) {
                                Rational nu = Rational(b1 + b2 + b3 + b4, 2) + k + r0;
                                if (nu > Rational(8)) continue;
                                ++queries;
                                ClassVector beta = {b1, b2, b3, b4};
                                CountVector r = {r0};
                                bool adm = ogw_degree_admissible(ring, beta, k, r);
                                Rational v = extract_ogw(ring, omega, beta, k, r);
                                if (adm) ++admissible;
                                if (!adm && v != 0) {
                                    std::cout << "C5 MISMATCH\n";
                                    return 1;
                                }
                            }
        auto t3 = Clock::now();
        std::cout << "C5 queries=" << queries << " admissible=" << admissible << " query_ms="
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t3 - t2).count() << "\n";
    }

    // --- C6 ring: divisor ring cutoff 9/2, verify_all k_max=4, 3 seeds ------
    {
        NovikovRing ring(3, {{"g0", 0, true, false}, {"g1", 2, false, true}},
                         {{"b1", Rational(5, 2), 2, false, {Rational(0), Rational(3)}}});
        CochainModel model = extended_s3_model();
        auto t0 = Clock::now();
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            QOperators q = synth_qdata(ring, model, Rational(9, 2), seed);
            // count distinct energy levels of stored entries
            std::set<Rational> levels;
            for (const auto& [key, val] : q.disk_entries()) {
                Rational e = 0;
                for (std::size_t i = 0; i < key.beta.size(); ++i)
                    e += Rational(key.beta[i]) * ring.classes()[i].energy;
                for (int id : key.interior) e += 1;  // interior count adds energy
                levels.insert(e);
            }
            InteriorForm gamma = q.full_interior();
            auto reports = verify_all(q, gamma, 4);
            int passed = 0;
            for (const auto& r : reports) passed += r.passed();
            std::cout << "C6 seed " << seed << " levels=" << levels.size() << " passed=" << passed
                      << "/" << reports.size() << "\n";
        }
        auto t1 = Clock::now();
        std::cout << "C6 verify ms="
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";
    }
    return 0;
}
