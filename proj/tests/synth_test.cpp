// Tests for the store generator: every generated store passes the full
// verifier battery, generation is deterministic per seed, the supported
// signatures match a brute-force enumeration of the degree-admissible ones,
// and divisor/point data are materialized with the pairing multiples.

#include <gtest/gtest.h>

#include <set>

#include "ogw/synth.hpp"

namespace {

using namespace ogw;

NovikovRing one_class_ring(int maslov) {
    std::vector<InteriorClass> interior{{"g0", 0, true, false}};
    std::vector<ClassGenerator> classes{
        {"b1", Rational(1), maslov, false, {Rational(0)}},
    };
    return NovikovRing(3, interior, classes);
}

NovikovRing divisor_ring() {
    std::vector<InteriorClass> interior{
        {"g0", 0, true, false},
        {"g1", 2, false, true},
        {"g2", 4, false, false},
    };
    std::vector<ClassGenerator> classes{
        {"b1", Rational(1), 4, false, {Rational(0), Rational(3), Rational(0)}},
        {"b2", Rational(3, 2), 2, false,
         {Rational(0), Rational(-2), Rational(0)}},
    };
    return NovikovRing(3, interior, classes);
}

// The single-class extended-model configuration used for gauge comparisons:
// Maslov 4 and energy 3 keep the doubled class above the cutoff, so level
// one is the only genuine solve.
NovikovRing gauge_ring() {
    std::vector<InteriorClass> interior{{"g0", 0, true, false}};
    std::vector<ClassGenerator> classes{
        {"b1", Rational(3), 4, false, {Rational(0)}},
    };
    return NovikovRing(3, interior, classes);
}

void expect_verified(const QOperators& q, bool real_signs) {
    for (const auto& r : verify_all(q, q.full_interior(), 4))
        EXPECT_TRUE(r.passed())
            << r.subject << ": "
            << (r.failures.empty() ? std::string("?")
                                   : r.failures[0].witness);
    if (real_signs) {
        Report rep = verify_real_signs(q, q.full_interior());
        EXPECT_TRUE(rep.passed())
            << (rep.failures.empty() ? std::string("?")
                                     : rep.failures[0].witness);
    }
}

TEST(Generator, CutoffBelowLeastEnergyIsClassical) {
    NovikovRing ring = one_class_ring(4);
    CochainModel model = minimal_sphere_model(3);
    QOperators q = synth_qdata(ring, model, Rational(1, 2), 7u);
    EXPECT_TRUE(q.disk_entries().empty());
    EXPECT_TRUE(q.point_entries().empty());
}

TEST(Generator, MinimalModelSupportMatchesBruteForce) {
    NovikovRing ring = one_class_ring(4);
    CochainModel model = minimal_sphere_model(3);
    QOperators q = synth_qdata(ring, model, Rational(2), 11u);
    expect_verified(q, false);

    // Brute force: on H*(S^3) with mu = 4 the only admissible signatures at
    // energy <= 2 are (b1, (vol)) in degree 0 and (2 b1, (vol, vol)) needing
    // Maslov 6 -- absent -- so exactly one disk signature may appear.
    std::set<DiskKey> expected_keys;
    int vol = static_cast<int>(model.index_of("vol"));
    expected_keys.insert(DiskKey{{1}, {vol}, {}});
    for (const auto& [key, value] : q.disk_entries()) {
        EXPECT_TRUE(expected_keys.count(key))
            << "unexpected signature stored";
        EXPECT_EQ(value.coords[model.index_of("vol")], Rational(0));
    }
    EXPECT_EQ(q.disk_entries().size(), 1u);
    EXPECT_TRUE(q.point_entries().empty());
}

TEST(Generator, SameSeedBitIdentical) {
    NovikovRing ring = divisor_ring();
    CochainModel model = minimal_sphere_model(3);
    QOperators a = synth_qdata(ring, model, Rational(3), 42u);
    QOperators b = synth_qdata(ring, model, Rational(3), 42u);
    EXPECT_EQ(save_store_text(a), save_store_text(b));

    QOperators c = synth_qdata(ring, model, Rational(3), 43u);
    EXPECT_NE(save_store_text(a), save_store_text(c));
}

TEST(Generator, DivisorRingFullyVerified) {
    NovikovRing ring = divisor_ring();
    CochainModel model = minimal_sphere_model(3);
    QOperators q = synth_qdata(ring, model, Rational(3), 42u);
    expect_verified(q, false);
    EXPECT_FALSE(q.disk_entries().empty());

    // Divisor insertions appear and are exact pairing multiples.
    bool saw_divisor_insertion = false;
    for (const auto& [key, value] : q.disk_entries())
        for (int j : key.interior)
            if (ring.interior()[j].divisor) saw_divisor_insertion = true;
    EXPECT_TRUE(saw_divisor_insertion);
}

TEST(Generator, PointDataOnMaslovZeroClass) {
    // A Maslov-0 class admits point data with divisor insertions only; the
    // degree count pins total interior degree to 2l.
    std::vector<InteriorClass> interior{
        {"g0", 0, true, false},
        {"g1", 2, false, true},
        {"g3", 6, false, false},
    };
    std::vector<ClassGenerator> classes{
        {"p1", Rational(1), 0, false,
         {Rational(0), Rational(5), Rational(0)}},
    };
    NovikovRing ring(3, interior, classes);
    CochainModel model = minimal_sphere_model(3);
    QOperators q = synth_qdata(ring, model, Rational(3), 5u);
    expect_verified(q, false);

    // The bare signature (p1, no insertions) is admissible: 0 = n-3+mu.
    Rational base = q.eval_point({1}, {});
    ASSERT_NE(base, Rational(0));
    EXPECT_EQ(q.eval_point({1}, {1}), Rational(5) * base);
    EXPECT_EQ(q.eval_point({1}, {1, 1}), Rational(25) * base);
}

TEST(Generator, ExtendedModelGenuineSolve) {
    NovikovRing ring = gauge_ring();
    CochainModel model = extended_s3_model();
    SynthOptions opt;
    opt.seed = 3;
    QOperators q = synth_qdata(ring, model, Rational(5), opt);
    expect_verified(q, false);
    EXPECT_FALSE(q.disk_entries().empty());

    // The composition relations genuinely constrain this configuration:
    // perturbing one stored tensor must break them.
    QOperators broken = q;
    auto it = broken.disk_entries().begin();
    DiskKey key = it->first;
    RealCochain value = it->second;
    value.coords[0] += 1;
    broken.set_disk(key, value);
    bool some_failure = false;
    for (const auto& r : verify_all(broken, broken.full_interior(), 4))
        some_failure |= !r.passed();
    EXPECT_TRUE(some_failure);
}

TEST(Generator, RealSignsImposed) {
    NovikovRing ring = gauge_ring();
    CochainModel model = extended_s3_model();
    SynthOptions opt;
    opt.seed = 9;
    opt.real_signs = true;
    QOperators q = synth_qdata(ring, model, Rational(5), opt);
    expect_verified(q, true);
}

TEST(Generator, EvenLemmaSupportExcluded) {
    // Maslov divisible by 4 with an odd-half-degree interior class: with
    // real signs requested, the closed-tensor signatures carrying only that
    // class must be absent.
    std::vector<InteriorClass> interior{
        {"g0", 0, true, false},
        {"g3", 6, false, false},
    };
    std::vector<ClassGenerator> classes{
        {"b1", Rational(1), 4, false, {Rational(0), Rational(0)}},
    };
    NovikovRing ring(3, interior, classes);
    CochainModel model = extended_s3_model();
    SynthOptions opt;
    opt.seed = 12;
    opt.real_signs = true;
    QOperators q = synth_qdata(ring, model, Rational(4), opt);
    expect_verified(q, true);
    for (const auto& [key, value] : q.disk_entries())
        if (key.inputs.empty()) {
            bool all_odd = !key.interior.empty();
            for (int j : key.interior)
                if ((ring.interior()[j].degree / 2) % 2 == 0) all_odd = false;
            EXPECT_FALSE(all_odd) << "even-lemma signature stored";
        }
}

}  // namespace
