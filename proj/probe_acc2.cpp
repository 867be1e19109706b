// Second probe: spherical seeds, n3_direct seeds, gauge independence,
// cutoff-7 empty-store solve timing.
#include <chrono>
#include <iostream>

#include "ogw/bounding.hpp"
#include "ogw/superpotential.hpp"
#include "ogw/synth.hpp"
#include "ogw/verify.hpp"

using namespace ogw;
using Clock = std::chrono::steady_clock;

static Series seed_s(const NovikovRing& ring, const Rational& cutoff) {
    return ring.monomial_series(
        ring.make(1, std::vector<int>(ring.interior().size(), 0),
                  std::vector<int>(ring.classes().size(), 0)),
        Rational(1), cutoff);
}

static long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

int main() {
    // spherical ring seeds 1..5
    {
        NovikovRing ring(3, {{"g0", 0, true, false}, {"g2", 4, false, false}},
                         {{"bs", Rational(2), 2, true, {Rational(0), Rational(0)}}});
        CochainModel model = extended_s3_model();
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            try {
                QOperators q = synth_qdata(ring, model, Rational(3), seed);
                SolveResult res = solve_bounding(q, q.full_interior(), seed_s(ring, Rational(3)),
                                                 SolverPolicy{}, Rational(3));
                BoundingCheck chk = verify_bounding(q, res.pair);
                Superpotential om = compute_omega(q, res.pair);
                std::cout << "spherical seed " << seed << " verify=" << chk.report.passed()
                          << " omega_terms=" << om.omega.terms.size() << "\n";
            } catch (const std::exception& e) {
                std::cout << "spherical seed " << seed << " THREW " << e.what() << "\n";
            }
        }
    }
    // n3_direct ring seeds 1..3 (energy-3 class, real store, cutoff 5)
    {
        NovikovRing ring(3, {{"g0", 0, true, false}},
                         {{"b1", Rational(3), 4, false, {Rational(0)}}});
        CochainModel model = extended_s3_model();
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            try {
                SynthOptions opt;
                opt.real_signs = true;
                opt.seed = seed;
                QOperators q = synth_qdata(ring, model, Rational(5), opt);
                Report rs = verify_real_signs(q, q.full_interior());
                SolverPolicy pol{PolicyVariant::n3_direct, make_gauge("pivot")};
                SolveResult res = solve_bounding(q, q.full_interior(), seed_s(ring, Rational(5)),
                                                 pol, Rational(5));
                BoundingCheck chk = verify_bounding(q, res.pair);
                Cochain expected = model.tensor(ring, model.vol_real(), seed_s(ring, Rational(5)));
                bool eq = model.sub(ring, res.pair.b, expected).is_zero();
                std::cout << "n3 seed " << seed << " signs=" << rs.passed()
                          << " verify=" << chk.report.passed() << " b==s*vol=" << eq
                          << " entries=" << q.disk_entries().size() << "\n";
            } catch (const std::exception& e) {
                std::cout << "n3 seed " << seed << " THREW " << e.what() << "\n";
            }
        }
    }
    // Config A gauge independence seeds 1..5 + chain difference
    {
        NovikovRing ring(3, {{"g0", 0, true, false}},
                         {{"b1", Rational(2), 2, false, {Rational(0)}}});
        CochainModel model = extended_s3_model();
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            QOperators q = synth_qdata(ring, model, Rational(3), seed);
            Series a = seed_s(ring, Rational(3));
            Report rep = gauge_independence_check(q, q.full_interior(), a, PolicyVariant::plain,
                                                  make_gauge("pivot"), make_gauge("shifted"),
                                                  Rational(3));
            SolverPolicy p1{PolicyVariant::plain, make_gauge("pivot")};
            SolverPolicy p2{PolicyVariant::plain, make_gauge("shifted")};
            SolveResult r1 = solve_bounding(q, q.full_interior(), a, p1, Rational(3));
            SolveResult r2 = solve_bounding(q, q.full_interior(), a, p2, Rational(3));
            bool differ = !model.sub(ring, r1.pair.b, r2.pair.b).is_zero();
            long prim = 0;
            for (const auto& lv : r1.levels) prim += lv.primitives;
            std::cout << "gauge seed " << seed << " indep=" << rep.passed()
                      << " checks=" << rep.checks << " chains_differ=" << differ
                      << " primitives=" << prim << "\n";
        }
    }
    // classical cutoff-7 empty solve + multi-interior cutoff-7 empty solve
    {
        auto t0 = Clock::now();
        NovikovRing ring(3, {{"g0", 0, true, false}},
                         {{"b1", Rational(1), 4, false, {Rational(0)}}});
        CochainModel model = minimal_sphere_model(3);
        QOperators q(ring, model, Rational(7));
        SolveResult res = solve_bounding(q, q.full_interior(), seed_s(ring, Rational(7)),
                                         SolverPolicy{}, Rational(7));
        Superpotential om = compute_omega(q, res.pair);
        std::cout << "classical7 ms=" << ms_since(t0) << " terms=" << om.omega.terms.size() << "\n";

        auto t1 = Clock::now();
        NovikovRing ring3(3,
                          {{"g0", 0, true, false},
                           {"g1", 2, false, false},
                           {"g2", 2, false, false}},
                          {{"b1", Rational(1), 2, false, {Rational(0), Rational(0), Rational(0)}}});
        QOperators q3(ring3, model, Rational(7));
        SolveResult res3 = solve_bounding(q3, q3.full_interior(), seed_s(ring3, Rational(7)),
                                          SolverPolicy{}, Rational(7));
        Superpotential om3 = compute_omega(q3, res3.pair);
        std::cout << "multi7 ms=" << ms_since(t1) << " terms=" << om3.omega.terms.size() << "\n";
    }
    return 0;
}
