// Third probe: find a nonempty real-sign store on extended_s3 where
// n3_direct still applies.
#include <iostream>

#include "ogw/bounding.hpp"
#include "ogw/synth.hpp"
#include "ogw/verify.hpp"

using namespace ogw;

static Series seed_s(const NovikovRing& ring, const Rational& cutoff) {
    return ring.monomial_series(
        ring.make(1, std::vector<int>(ring.interior().size(), 0),
                  std::vector<int>(ring.classes().size(), 0)),
        Rational(1), cutoff);
}

static void try_ring(const char* tag, const NovikovRing& ring,
                     const CochainModel& model, const Rational& cutoff,
                     uint64_t seed) {
    try {
        SynthOptions opt;
        opt.real_signs = true;
        opt.seed = seed;
        QOperators q = synth_qdata(ring, model, cutoff, opt);
        Report rs = verify_real_signs(q, q.full_interior());
        SolverPolicy pol{PolicyVariant::n3_direct, make_gauge("pivot")};
        SolveResult res = solve_bounding(q, q.full_interior(),
                                         seed_s(ring, cutoff), pol, cutoff);
        BoundingCheck chk = verify_bounding(q, res.pair);
        Cochain expected =
            model.tensor(ring, model.vol_real(), seed_s(ring, cutoff));
        bool eq = model.sub(ring, res.pair.b, expected).is_zero();
        std::cout << tag << " seed " << seed << ": entries="
                  << q.disk_entries().size() << " points="
                  << q.point_entries().size() << " signs=" << rs.passed()
                  << " verify=" << chk.report.passed() << " b==s*vol=" << eq
                  << "\n";
    } catch (const std::exception& e) {
        std::cout << tag << " seed " << seed << ": THREW " << e.what() << "\n";
    }
}

int main() {
    CochainModel ext = extended_s3_model();
    CochainModel mini = minimal_sphere_model(3);

    // parity-style ring on extended model
    NovikovRing r1(3, {{"g0", 0, true, false}, {"g1", 2, false, false}},
                   {{"b1", Rational(1), 4, false, {Rational(0), Rational(0)}}});
    for (uint64_t s = 1; s <= 4; ++s) try_ring("ext-par", r1, ext, Rational(3), s);

    // parity ring on minimal model
    for (uint64_t s = 1; s <= 4; ++s) try_ring("min-par", r1, mini, Rational(3), s);

    // mu=4 energy-1 single-interior on extended
    NovikovRing r2(3, {{"g0", 0, true, false}},
                   {{"b1", Rational(1), 4, false, {Rational(0)}}});
    for (uint64_t s = 1; s <= 4; ++s) try_ring("ext-cls", r2, ext, Rational(3), s);
    return 0;
}
