// Tests for the property verifiers: clean stores pass every check, and a
// battery of deliberately corrupted stores is caught by the verifier that
// owns the violated property, with a witness naming the offending entry.

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "ogw/verify.hpp"

namespace {

using namespace ogw;

NovikovRing simple_ring() {
    std::vector<InteriorClass> interior{{"g0", 0, true, false}};
    std::vector<ClassGenerator> classes{
        {"b1", Rational(1), 4, false, {Rational(0)}},
    };
    return NovikovRing(3, interior, classes);
}

// Unit and divisor interior classes, one class of Maslov 4 pairing 3 with
// the divisor.
NovikovRing divisor_ring() {
    std::vector<InteriorClass> interior{
        {"g0", 0, true, false},
        {"g1", 2, false, true},
    };
    std::vector<ClassGenerator> classes{
        {"b1", Rational(1), 4, false, {Rational(0), Rational(3)}},
    };
    return NovikovRing(3, interior, classes);
}

// A degree-6 interior class (odd half-degree) next to a Maslov-4 class, for
// the even-vanishing lemma.
NovikovRing even_lemma_ring() {
    std::vector<InteriorClass> interior{
        {"g0", 0, true, false},
        {"g6", 6, false, false},
    };
    std::vector<ClassGenerator> classes{
        {"b1", Rational(1), 4, false, {Rational(0), Rational(0)}},
    };
    return NovikovRing(3, interior, classes);
}

// Maslov-2 class for arity-one tensors on the extended model.
NovikovRing maslov2_ring() {
    std::vector<InteriorClass> interior{{"g0", 0, true, false}};
    std::vector<ClassGenerator> classes{
        {"b1", Rational(1), 2, false, {Rational(0)}},
    };
    return NovikovRing(3, interior, classes);
}

// Maslov 4 and 6 side by side: the volume tensors at arity one and two both
// land in degree zero.
NovikovRing two_class_ring() {
    std::vector<InteriorClass> interior{{"g0", 0, true, false}};
    std::vector<ClassGenerator> classes{
        {"b1", Rational(1), 4, false, {Rational(0)}},
        {"b2", Rational(1), 6, false, {Rational(0)}},
    };
    return NovikovRing(3, interior, classes);
}

// A Maslov-0 class: the dimension count for point data then admits divisor
// insertions at every length.
NovikovRing point_ring() {
    std::vector<InteriorClass> interior{
        {"g0", 0, true, false},
        {"g1", 2, false, true},
    };
    std::vector<ClassGenerator> classes{
        {"p1", Rational(1), 0, false, {Rational(0), Rational(3)}},
    };
    return NovikovRing(3, interior, classes);
}

// Degree-4 interior class: even half-degree, so the vanishing lemma for
// divisible Maslov index does not apply.
NovikovRing even_control_ring() {
    std::vector<InteriorClass> interior{
        {"g0", 0, true, false},
        {"g4", 4, false, false},
    };
    std::vector<ClassGenerator> classes{
        {"b1", Rational(1), 4, false, {Rational(0), Rational(0)}},
    };
    return NovikovRing(3, interior, classes);
}

void expect_all_pass(const std::vector<Report>& reports) {
    for (const auto& r : reports) {
        EXPECT_TRUE(r.passed()) << r.subject << ": "
                                << (r.failures.empty()
                                        ? std::string("?")
                                        : r.failures[0].witness);
    }
}

bool any_failure_mentions(const Report& rep, const std::string& needle) {
    for (const auto& f : rep.failures)
        if (f.witness.find(needle) != std::string::npos) return true;
    return false;
}

TEST(CleanStores, ClassicalMinimalModel) {
    NovikovRing ring = simple_ring();
    CochainModel model = minimal_sphere_model(3);
    QOperators q(ring, model, Rational(3));
    expect_all_pass(verify_all(q, q.full_interior(), 4));
    EXPECT_TRUE(verify_real_signs(q, q.full_interior()).passed());
}

// The empty store on the richer model exercises the structural relations:
// d^2 = 0, the Leibniz rule, and associativity all appear as instances of
// the composition relation at energy zero.
TEST(CleanStores, ClassicalExtendedModel) {
    NovikovRing ring = simple_ring();
    CochainModel model = extended_s3_model();
    QOperators q(ring, model, Rational(3));
    expect_all_pass(verify_all(q, q.full_interior(), 4));
}

// Volume tensors landing on unit multiples: all properties hold for any
// coefficient choice on the minimal model (the two product insertions of a
// unit multiple cancel, and units cannot be consumed as inputs).
TEST(CleanStores, MinimalModelUnitOutputs) {
    NovikovRing ring = two_class_ring();
    CochainModel model = minimal_sphere_model(3);
    QOperators q(ring, model, Rational(2));

    int vol = static_cast<int>(model.index_of("vol"));
    RealCochain value = model.zero_real();
    value.coords[model.index_of("one")] = Rational(5);
    q.set_disk(DiskKey{{1, 0}, {vol}, {}}, value);
    RealCochain value2 = model.zero_real();
    value2.coords[model.index_of("one")] = Rational(-7, 2);
    q.set_disk(DiskKey{{0, 1}, {vol, vol}, {}}, value2);

    expect_all_pass(verify_all(q, q.full_interior(), 4));
    EXPECT_TRUE(verify_real_signs(q, q.full_interior()).passed());
}

// Stores whose divisor insertions are materialized with the correct pairing
// multiples pass, including the extension-existence direction; insertions
// beyond the cutoff are not required.
TEST(CleanStores, DivisorExtensions) {
    CochainModel model = minimal_sphere_model(3);

    NovikovRing ring = divisor_ring();
    QOperators q(ring, model, Rational(3));
    int vol = static_cast<int>(model.index_of("vol"));
    RealCochain base = model.zero_real();
    base.coords[model.index_of("one")] = Rational(2);
    q.set_disk(DiskKey{{1}, {vol}, {}}, base);
    q.set_disk(DiskKey{{1}, {vol}, {1}}, model.scale(3, base));
    q.set_disk(DiskKey{{1}, {vol}, {1, 1}}, model.scale(9, base));
    expect_all_pass(verify_all(q, q.full_interior(), 3));

    NovikovRing pring = point_ring();
    QOperators qp(pring, model, Rational(3));
    qp.set_point(PointKey{{1}, {}}, Rational(1, 2));
    qp.set_point(PointKey{{1}, {1}}, Rational(3, 2));
    qp.set_point(PointKey{{1}, {1, 1}}, Rational(9, 2));
    expect_all_pass(verify_all(qp, qp.full_interior(), 2));
}

TEST(FaultInjection, CompositionRelation) {
    NovikovRing ring = maslov2_ring();
    CochainModel model = extended_s3_model();
    QOperators q(ring, model, Rational(2));

    // d(q(x)) + q(dx) = q(y) has residual d(u) = z when q(x) = u alone.
    RealCochain value = model.zero_real();
    value.coords[model.index_of("u")] = 1;
    q.set_disk(DiskKey{{1}, {static_cast<int>(model.index_of("x"))}, {}},
               value);

    Report rep = verify_a_infinity(q, q.full_interior(), 2);
    ASSERT_FALSE(rep.passed());
    EXPECT_EQ(rep.failures[0].property, "a_infinity");
    EXPECT_NE(rep.failures[0].witness.find("T(b1)"), std::string::npos);
    EXPECT_NE(rep.failures[0].witness.find("residual"), std::string::npos);
}

TEST(FaultInjection, CompositionAtCompositeClass) {
    NovikovRing ring = maslov2_ring();
    CochainModel model = extended_s3_model();
    QOperators q(ring, model, Rational(2));

    // An entry stored directly at the doubled class: the relation there reads
    // d(q(x)) + q(dx) = 0 and leaves the residual d(u) = z.
    RealCochain value = model.zero_real();
    value.coords[model.index_of("u")] = 1;
    q.set_disk(DiskKey{{2}, {static_cast<int>(model.index_of("x"))}, {}},
               value);

    Report rep = verify_a_infinity(q, q.full_interior(), 2);
    ASSERT_FALSE(rep.passed());
    EXPECT_NE(rep.failures[0].witness.find("T(b1)^2"), std::string::npos);
}

TEST(FaultInjection, UnitInput) {
    NovikovRing ring = simple_ring();
    CochainModel model = extended_s3_model();
    QOperators q(ring, model, Rational(2));

    RealCochain value = model.zero_real();
    value.coords[model.index_of("one")] = 1;
    q.set_disk(DiskKey{{1}, {static_cast<int>(model.index_of("u")),
                             static_cast<int>(model.index_of("y"))},
                       {}},
               value);

    Report rep = verify_unit(q, q.full_interior());
    ASSERT_FALSE(rep.passed());
    EXPECT_EQ(rep.failures[0].property, "unit");
    EXPECT_NE(rep.failures[0].witness.find("degree-0 input"),
              std::string::npos);
}

TEST(FaultInjection, CyclicPairing) {
    NovikovRing ring = maslov2_ring();
    CochainModel model = extended_s3_model();
    QOperators q(ring, model, Rational(2));

    // q(x) = 5 * one pairs nontrivially with v, but the rotated partner
    // q(v) is absent, so the rotation identity fails at the tuple (x, v).
    RealCochain value = model.zero_real();
    value.coords[model.index_of("one")] = 5;
    q.set_disk(DiskKey{{1}, {static_cast<int>(model.index_of("x"))}, {}},
               value);

    Report rep = verify_cyclic(q, q.full_interior());
    ASSERT_FALSE(rep.passed());
    EXPECT_EQ(rep.failures[0].property, "cyclic");
    EXPECT_NE(rep.failures[0].witness.find("lhs="), std::string::npos);
}

TEST(FaultInjection, DegreeBookkeeping) {
    NovikovRing ring = simple_ring();
    CochainModel model = minimal_sphere_model(3);
    QOperators q(ring, model, Rational(2));

    // Output should sit in degree 0, not degree 3.
    RealCochain value = model.zero_real();
    value.coords[model.index_of("vol")] = 1;
    int vol = static_cast<int>(model.index_of("vol"));
    q.set_disk(DiskKey{{1}, {vol}, {}}, value);

    Report rep = verify_degree(q, q.full_interior());
    ASSERT_FALSE(rep.passed());
    EXPECT_NE(rep.failures[0].witness.find("bookkeeping requires 0"),
              std::string::npos);

    // Point data obeys its own dimension count.
    QOperators q2(ring, model, Rational(2));
    q2.set_point(PointKey{{1}, {}}, Rational(1));
    Report rep2 = verify_degree(q2, q2.full_interior());
    ASSERT_FALSE(rep2.passed());
    EXPECT_EQ(rep2.failures[0].property, "degree");
    EXPECT_NE(rep2.failures[0].witness.find("point"), std::string::npos);
}

TEST(FaultInjection, FundamentalClassInsertions) {
    NovikovRing ring = divisor_ring();
    CochainModel model = minimal_sphere_model(3);
    QOperators q(ring, model, Rational(3));

    RealCochain value = model.zero_real();
    value.coords[model.index_of("one")] = 1;
    int vol = static_cast<int>(model.index_of("vol"));
    q.set_disk(DiskKey{{1}, {vol}, {0}}, value);
    q.set_point(PointKey{{1}, {0, 1}}, Rational(2));

    Report rep = verify_fundamental(q, q.full_interior());
    ASSERT_FALSE(rep.passed());
    EXPECT_GE(rep.failure_count, 2);
    EXPECT_EQ(rep.failures[0].property, "fundamental");
}

TEST(FaultInjection, DivisorScalingAndExtensions) {
    NovikovRing ring = divisor_ring();
    CochainModel model = minimal_sphere_model(3);
    int vol = static_cast<int>(model.index_of("vol"));
    RealCochain base = model.zero_real();
    base.coords[model.index_of("one")] = Rational(2);

    // Wrong multiple: insertion scaled by 4 instead of the pairing 3.
    {
        QOperators q(ring, model, Rational(2));
        q.set_disk(DiskKey{{1}, {vol}, {}}, base);
        q.set_disk(DiskKey{{1}, {vol}, {1}}, model.scale(4, base));
        Report rep = verify_divisor(q, q.full_interior());
        ASSERT_FALSE(rep.passed());
        EXPECT_TRUE(any_failure_mentions(rep, "pairing multiple"));
    }
    // Missing extension within the cutoff.
    {
        QOperators q(ring, model, Rational(2));
        q.set_disk(DiskKey{{1}, {vol}, {}}, base);
        Report rep = verify_divisor(q, q.full_interior());
        ASSERT_FALSE(rep.passed());
        EXPECT_TRUE(any_failure_mentions(rep, "lacks its g1-extension"));
    }
    // Point data: wrong multiple on the divisor insertion.
    {
        QOperators q(ring, model, Rational(3));
        q.set_point(PointKey{{1}, {1, 1}}, Rational(1));
        Report rep = verify_divisor(q, q.full_interior());
        ASSERT_FALSE(rep.passed());
        EXPECT_TRUE(any_failure_mentions(rep, "point"));
    }
}

TEST(FaultInjection, TopDegreeComponent) {
    NovikovRing ring = simple_ring();
    CochainModel model = extended_s3_model();
    QOperators q(ring, model, Rational(2));

    RealCochain value = model.zero_real();
    value.coords[model.index_of("v2")] = 1;
    q.set_disk(DiskKey{{1}, {static_cast<int>(model.index_of("y"))}, {}},
               value);

    Report rep = verify_top_degree(q, q.full_interior());
    ASSERT_FALSE(rep.passed());
    EXPECT_NE(rep.failures[0].witness.find("top-degree component v2"),
              std::string::npos);
}

TEST(RealSigns, FrozenReversalSigns) {
    NovikovRing ring2 = maslov2_ring();
    CochainModel model = extended_s3_model();
    QOperators q2(ring2, model, Rational(2));
    int x = static_cast<int>(model.index_of("x"));
    int y = static_cast<int>(model.index_of("y"));
    int v = static_cast<int>(model.index_of("v"));

    // mu=2, inputs (x,y): exponent 1 + 0 + 1 + (2+3+1) + 3 = 11, sign -1.
    EXPECT_EQ(reversal_sign(q2, DiskKey{{1}, {x, y}, {}}), -1);

    NovikovRing ring4 = simple_ring();
    QOperators q4(ring4, model, Rational(2));
    // mu=4, inputs (v,v): exponent 2 + 0 + 1 + (9+6+1) + 6 = 25, sign -1.
    EXPECT_EQ(reversal_sign(q4, DiskKey{{1}, {v, v}, {}}), -1);
    // mu=4, single input v: exponent 2 + 0 + 1 + (0+0+0) + 3 = 6, sign +1.
    EXPECT_EQ(reversal_sign(q4, DiskKey{{1}, {v}, {}}), 1);
}

TEST(RealSigns, ReversalViolation) {
    NovikovRing ring = maslov2_ring();
    CochainModel model = extended_s3_model();
    QOperators q(ring, model, Rational(2));
    int x = static_cast<int>(model.index_of("x"));
    int y = static_cast<int>(model.index_of("y"));

    // Sign is -1, so q(x,y) = 1 and q(y,x) = 2 violates the identity.
    RealCochain one_val = model.zero_real();
    one_val.coords[model.index_of("z")] = 1;
    RealCochain two_val = model.scale(2, one_val);
    q.set_disk(DiskKey{{1}, {x, y}, {}}, one_val);
    q.set_disk(DiskKey{{1}, {y, x}, {}}, two_val);

    Report rep = verify_real_signs(q, q.full_interior());
    ASSERT_FALSE(rep.passed());
    EXPECT_EQ(rep.failures[0].property, "reversal");
}

TEST(RealSigns, PalindromeParityVanishing) {
    NovikovRing ring = simple_ring();
    CochainModel model = extended_s3_model();
    QOperators q(ring, model, Rational(2));
    int v = static_cast<int>(model.index_of("v"));

    // Degree-3 inputs, degree-2 output, palindromic tuple: the entry must be
    // antisymmetric under reversal, hence zero; storing y breaks it.
    RealCochain value = model.zero_real();
    value.coords[model.index_of("y")] = 1;
    q.set_disk(DiskKey{{1}, {v, v}, {}}, value);

    Report rep = verify_real_signs(q, q.full_interior());
    ASSERT_FALSE(rep.passed());
    bool saw_parity = false;
    for (const auto& f : rep.failures) saw_parity |= f.property == "parity";
    EXPECT_TRUE(saw_parity);
}

TEST(RealSigns, EvenVanishingLemma) {
    NovikovRing ring = even_lemma_ring();
    CochainModel model = extended_s3_model();
    QOperators q(ring, model, Rational(2));

    // Maslov 4, single degree-6 interior class (half-degree 3, odd), no
    // boundary inputs: the lemma forces zero, so any stored value violates.
    RealCochain value = model.zero_real();
    value.coords[model.index_of("y")] = 1;
    q.set_disk(DiskKey{{1}, {}, {1}}, value);

    Report rep = verify_real_signs(q, q.full_interior());
    ASSERT_FALSE(rep.passed());
    bool saw_even = false;
    for (const auto& f : rep.failures)
        saw_even |= f.property == "even_vanishing";
    EXPECT_TRUE(saw_even);

    // The same signature with an even half-degree class is unconstrained.
    NovikovRing ring2 = even_control_ring();
    QOperators q2(ring2, model, Rational(2));
    q2.set_disk(DiskKey{{1}, {}, {1}}, value);
    Report rep2 = verify_real_signs(q2, q2.full_interior());
    for (const auto& f : rep2.failures)
        EXPECT_NE(f.property, "even_vanishing") << f.witness;
}

TEST(Reports, MergeAndCaps) {
    Report a{"x"};
    a.checks = 3;
    a.fail("p", "w1");
    Report b{"x"};
    b.checks = 2;
    b.fail("p", "w2");
    a.merge(b);
    EXPECT_EQ(a.checks, 5);
    EXPECT_EQ(a.failure_count, 2);
    EXPECT_EQ(a.failures.size(), 2u);
}

}  // namespace
