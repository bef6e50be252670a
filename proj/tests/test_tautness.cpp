#include "generators.hpp"

#include <gtest/gtest.h>

using namespace taut;

namespace {

const PresentedGroup Z = PresentedGroup::free(1);
PresentedGroup cyc(long long n) { return PresentedGroup::cyclic(n); }
GroupMap times(const PresentedGroup& a, const PresentedGroup& b, long long k) { return {a, b, IntMatrix{{k}}}; }

// One neighborhood with H_1 = Z, H_1(A) = Z, comparison x k.
NeighborhoodTower single_stage(long long k)
{
    NeighborhoodTower t;
    t.name = "single";
    t.homology[1] = Tower({Z}, {});
    t.cohomology[1] = Telescope({Z}, {});
    t.a[1] = ComparisonData{Z, {times(Z, Z, k)}, std::nullopt};
    return t;
}

// The first k stages of the dyadic solenoid tower in degree 1.
NeighborhoodTower solenoid_prefix(std::size_t k)
{
    NeighborhoodTower t;
    t.name = "solenoid prefix";
    std::vector<PresentedGroup> groups(k, Z);
    std::vector<GroupMap> down, up;
    for (std::size_t i = 1; i < k; ++i) {
        down.push_back(times(Z, Z, 2));
        up.push_back(times(Z, Z, 2));
    }
    t.homology[1] = Tower(groups, down);
    t.cohomology[1] = Telescope(groups, up);
    return t;
}

} // namespace

TEST(BuildIn, IsomorphismDoublingAndZero)
{
    const InducedMap iso = build_i_n(single_stage(1), 1);
    EXPECT_TRUE(iso.kernel.is_trivial());
    EXPECT_TRUE(iso.cokernel.is_trivial());

    const InducedMap two = build_i_n(single_stage(2), 1);
    EXPECT_TRUE(two.kernel.is_trivial());
    EXPECT_EQ(two.cokernel, cyc(2));

    const InducedMap zero = build_i_n(single_stage(0), 1);
    EXPECT_EQ(zero.kernel, Z);
    EXPECT_EQ(zero.cokernel, Z);
}

TEST(BuildIn, Errors)
{
    EXPECT_THROW(build_i_n(single_stage(1), 0), InputError);

    NeighborhoodTower bad = single_stage(1);
    bad.a[1].to_stage.push_back(times(Z, Z, 1));
    EXPECT_THROW(build_i_n(bad, 1), InputError);

    NeighborhoodTower unknown;
    const PresentedGroup z2 = PresentedGroup::free(2);
    unknown.homology[1] = Tower::periodic(z2, GroupMap(z2, z2, IntMatrix{{2, 1}, {0, 2}}));
    unknown.a[1] = ComparisonData{Z, {}, GroupMap(Z, z2, IntMatrix{{0}, {0}})};
    EXPECT_THROW(build_i_n(unknown, 1), LimNotExact);

    NeighborhoodTower incompatible;
    incompatible.homology[1] = Tower({Z, Z}, {times(Z, Z, 1)});
    incompatible.a[1] = ComparisonData{Z, {times(Z, Z, 1), times(Z, Z, 3)}, std::nullopt};
    EXPECT_THROW(build_i_n(incompatible, 1), InconsistentData);
}

TEST(TautnessSequence, FinitePresetsCollapseToAnIsomorphism)
{
    for (const std::string name : {"taut-circle", "taut-rp2", "finite-torsion"}) {
        const NeighborhoodTower t = presets::neighborhood_by_name(name);
        for (const auto& [n, data] : t.a) {
            const SequenceReport r = theorem2_sequence(t, n, Z);
            EXPECT_EQ(r.verdict, Verdict::Verified) << name << " degree " << n;
            ASSERT_TRUE(r.i_n) << name;
            EXPECT_TRUE(is_isomorphism(r.i_n->map)) << name << " degree " << n;
            ASSERT_EQ(r.candidates.size(), 1u);
            EXPECT_EQ(r.candidates.front(), data.group);
            for (const auto& j : r.outer) EXPECT_EQ(j.verdict, Verdict::NotCheckable);
            EXPECT_EQ(r.outer.size(), 3u);
        }
    }
}

TEST(TautnessSequence, SolenoidClassification)
{
    const NeighborhoodTower s = presets::solenoid(2);
    const SequenceReport h1 = theorem2_sequence(s, 1, Z);
    EXPECT_EQ(h1.middle.kind, LimKind::Zero);
    EXPECT_EQ(h1.verdict, Verdict::VerifiedByClassification);

    const SequenceReport h0 = theorem2_sequence(s, 0, Z, true);
    EXPECT_EQ(h0.middle.kind, LimKind::NonzeroUncountable);
    EXPECT_EQ(h0.terms[1].value.kind, LimKind::NonzeroUncountable);
    EXPECT_EQ(h0.terms[3].value.kind, LimKind::Zero);
    EXPECT_TRUE(h0.candidates.empty());

    const SequenceReport unreduced = theorem2_sequence(s, 0, Z);
    EXPECT_EQ(unreduced.middle.kind, LimKind::NonzeroUncountable);
}

TEST(TautnessSequence, SuppliedGroupContradictingTheSequenceFails)
{
    NeighborhoodTower s = presets::solenoid(3);
    s.reduced_a[0] = ComparisonData{PresentedGroup{}, {GroupMap::identity(PresentedGroup{})}, std::nullopt};
    const SequenceReport r = theorem2_sequence(s, 0, Z, true);
    EXPECT_EQ(r.verdict, Verdict::Failed);

    const SequenceReport doubled = theorem2_sequence(single_stage(2), 1, Z);
    EXPECT_EQ(doubled.verdict, Verdict::Failed);
}

TEST(TautnessSequence, InconsistentStagesAreRejected)
{
    NeighborhoodTower t = presets::taut_circle();
    t.homology[1] = Tower({cyc(2)}, {});
    EXPECT_THROW(theorem2_sequence(t, 1, Z), InconsistentData);

    NeighborhoodTower bare = presets::taut_circle();
    bare.cohomology.clear();
    bare.reduced_cohomology.clear();
    EXPECT_THROW(theorem2_sequence(bare, 1, Z), InputError);
    EXPECT_NO_THROW(milnor_sequence(bare, 1));
}

TEST(CohomologicalSequence, AgreesWithTautnessSequenceJunctionByJunction)
{
    std::vector<NeighborhoodTower> corpus;
    for (const auto& name : presets::neighborhood_names()) corpus.push_back(presets::neighborhood_by_name(name));
    for (std::size_t k = 1; k <= 4; ++k) corpus.push_back(solenoid_prefix(k));
    for (const auto& t : corpus)
        for (int n = 0; n <= 2; ++n)
            for (bool reduced : {false, true}) {
                const SequenceReport a = theorem2_sequence(t, n, Z, reduced);
                const SequenceReport b = eq14_sequence(t, n, Z, reduced);
                ASSERT_EQ(a.junctions.size(), b.junctions.size()) << t.name;
                for (std::size_t i = 0; i < a.junctions.size(); ++i)
                    EXPECT_EQ(a.junctions[i].verdict, b.junctions[i].verdict) << t.name << " degree " << n;
                EXPECT_EQ(a.middle.kind, b.middle.kind) << t.name << " degree " << n;
                if (a.middle.exact() && b.middle.exact()) {
                    EXPECT_EQ(*a.middle.group, *b.middle.group);
                }
                EXPECT_EQ(a.verdict, b.verdict) << t.name << " degree " << n;
            }
}

TEST(CohomologicalSequence, DyadicHomTower)
{
    const SequenceReport r = eq14_sequence(presets::solenoid(2), 0, Z, true);
    EXPECT_EQ(r.terms.front().value.kind, LimKind::NonzeroUncountable);
    EXPECT_EQ(r.middle.kind, LimKind::NonzeroUncountable);
    EXPECT_EQ(r.outer.size(), 1u);
}

TEST(Milnor, SolenoidAndTheoryTag)
{
    const NeighborhoodTower s = presets::solenoid(2);
    const SequenceReport h1 = milnor_sequence(s, 1, Theory::Massey);
    EXPECT_EQ(h1.terms.front().value.kind, LimKind::Zero);
    EXPECT_EQ(h1.middle.kind, LimKind::Zero);
    EXPECT_NE(h1.title.find("Massey"), std::string::npos);

    const SequenceReport h0 = milnor_sequence(s, 0, Theory::Kolmogoroff, true);
    EXPECT_EQ(h0.terms.front().value.describe(), "nonzero (uncountable)");
    EXPECT_EQ(h0.middle.kind, LimKind::NonzeroUncountable);

    EXPECT_EQ(parse_theory("milnor"), Theory::Milnor);
    EXPECT_EQ(parse_theory("Steenrod"), Theory::Steenrod);
    EXPECT_THROW(parse_theory("cech"), InputError);
}

TEST(Milnor, ConstantAndFiniteTowers)
{
    NeighborhoodTower t;
    const PresentedGroup a = from_cyclic_orders({0, 6});
    t.homology[2] = Tower::periodic(a, GroupMap::identity(a));
    const SequenceReport r = milnor_sequence(t, 2);
    ASSERT_TRUE(r.middle.exact());
    EXPECT_EQ(*r.middle.group, a);

    const SequenceReport f = milnor_sequence(presets::finite_torsion(), 1);
    EXPECT_EQ(f.terms.front().value.kind, LimKind::Zero);
    EXPECT_EQ(f.verdict, Verdict::Verified);
    EXPECT_EQ(*f.terms.back().value.group, cyc(2));
}

TEST(Milnor, MiddleEqualsLimWhenLim1Vanishes)
{
    gen::Rng rng(33);
    for (int c = 0; c < 40; ++c) {
        NeighborhoodTower t;
        const PresentedGroup b = gen::finite_group(rng, 12, 2);
        t.homology[0] = Tower::periodic(b, gen::map(rng, b, b));
        const PresentedGroup h1 = gen::group(rng, 1, 6, 1);
        t.homology[1] = Tower::periodic(h1, gen::map(rng, h1, h1));
        const SequenceReport r = milnor_sequence(t, 0);
        if (r.terms.front().value.kind == LimKind::Zero && r.terms.back().value.exact()) {
            ASSERT_TRUE(r.middle.exact());
            EXPECT_EQ(*r.middle.group, *r.terms.back().value.group);
        }
    }
}

TEST(Monotonicity, NestedSolenoidPrefixesNeverFail)
{
    for (std::size_t k = 1; k <= 8; ++k) {
        const NeighborhoodTower t = solenoid_prefix(k);
        const SequenceReport r = theorem2_sequence(t, 1, Z);
        EXPECT_NE(r.verdict, Verdict::Failed) << k;
        EXPECT_EQ(r.middle.kind, LimKind::ExactGroup);
        EXPECT_EQ(*r.middle.group, Z);
    }
    EXPECT_NE(theorem2_sequence(presets::solenoid(2), 1, Z).verdict, Verdict::Failed);
}

TEST(Presets, Names)
{
    for (const auto& name : presets::neighborhood_names()) EXPECT_EQ(presets::neighborhood_by_name(name).name, name);
    EXPECT_EQ(presets::neighborhood_by_name("solenoid:5").name, "solenoid:5");
    EXPECT_THROW(presets::neighborhood_by_name("solenoid:1"), InputError);
    EXPECT_THROW(presets::neighborhood_by_name("torus"), InputError);
}
