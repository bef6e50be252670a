#include "generators.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace taut;

namespace {

const PresentedGroup Z = PresentedGroup::free(1);
PresentedGroup cyc(long long n) { return PresentedGroup::cyclic(n); }
GroupMap times(const PresentedGroup& a, const PresentedGroup& b, long long k) { return {a, b, IntMatrix{{k}}}; }

// Finite telescope of random groups with random maps between consecutive stages.
Telescope random_finite_telescope(gen::Rng& rng)
{
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    std::vector<PresentedGroup> groups{gen::group(rng, 1, 12, 2)};
    std::vector<GroupMap> maps;
    for (std::size_t k = 1; k < n; ++k) {
        groups.push_back(gen::group(rng, 1, 12, 2));
        maps.push_back(gen::map(rng, groups[k - 1], groups[k], 3));
    }
    return {groups, maps};
}

} // namespace

TEST(Lim, PeriodicMultiplication)
{
    for (long long p : {2, 3, 5}) {
        const Tower t = Tower::periodic(Z, times(Z, Z, p));
        EXPECT_EQ(lim(t).kind, LimKind::Zero);
        const LimOutcome l1 = lim1(t);
        EXPECT_EQ(l1.kind, LimKind::NonzeroUncountable);
        EXPECT_NE(l1.certificate.find("strict descent"), std::string::npos);
        EXPECT_EQ(l1.describe(), "nonzero (uncountable)");
    }
}

TEST(Lim, IdentityTailAndFiniteTower)
{
    const PresentedGroup a = from_cyclic_orders({0, 6});
    const LimOutcome l = lim(Tower::periodic(a, GroupMap::identity(a)));
    ASSERT_TRUE(l.exact());
    EXPECT_EQ(*l.group, a);
    EXPECT_EQ(lim1(Tower::periodic(a, GroupMap::identity(a))).kind, LimKind::Zero);

    const Tower t({cyc(4), cyc(2)}, {times(cyc(2), cyc(4), 2)});
    const LimOutcome f = lim(t);
    ASSERT_TRUE(f.exact());
    EXPECT_EQ(*f.group, cyc(2));
    EXPECT_EQ(lim1(t).kind, LimKind::Zero);
}

TEST(Lim, TorsionTailKeepsCoprimePart)
{
    const LimOutcome l = lim(Tower::periodic(cyc(6), times(cyc(6), cyc(6), 2)));
    ASSERT_TRUE(l.exact());
    EXPECT_EQ(*l.group, cyc(3));
}

TEST(Lim, MixedDiagonalTail)
{
    const PresentedGroup z2 = PresentedGroup::free(2);
    const Tower t = Tower::periodic(z2, GroupMap(z2, z2, IntMatrix{{1, 0}, {0, 3}}));
    const LimOutcome l = lim(t);
    ASSERT_TRUE(l.exact());
    EXPECT_EQ(*l.group, Z);
    EXPECT_EQ(lim1(t).kind, LimKind::NonzeroUncountable);
}

TEST(Lim, UnipotentTailIsAnAutomorphism)
{
    const PresentedGroup z2 = PresentedGroup::free(2);
    const Tower t = Tower::periodic(z2, GroupMap(z2, z2, IntMatrix{{1, 1}, {0, 1}}));
    ASSERT_TRUE(lim(t).exact());
    EXPECT_EQ(*lim(t).group, z2);
    EXPECT_EQ(lim1(t).kind, LimKind::Zero);
}

TEST(Lim, PrefixIsPulledBack)
{
    // Z/4 <-x1- Z <-x2- Z <-x2- ...: the limit is 0, lim^1 is uncountable.
    const Tower t({cyc(4)}, {}, PeriodicTail{Z, times(Z, Z, 2), times(Z, cyc(4), 1)});
    EXPECT_EQ(lim(t).kind, LimKind::Zero);
    EXPECT_EQ(lim1(t).kind, LimKind::NonzeroUncountable);
}

TEST(Lim, FiniteGroupTowersAreMittagLeffler)
{
    gen::Rng rng(4);
    for (int c = 0; c < 100; ++c) {
        const PresentedGroup b = gen::finite_group(rng, 12, 2);
        const GroupMap f = gen::map(rng, b, b);
        EXPECT_EQ(lim1(Tower::periodic(b, f)).kind, LimKind::Zero);
        EXPECT_TRUE(lim(Tower::periodic(b, f)).exact());
    }
}

TEST(Lim, RandomFiniteTowerLimitIsTheLastStage)
{
    gen::Rng rng(9);
    for (int c = 0; c < 100; ++c) {
        const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
        std::vector<PresentedGroup> groups{gen::group(rng, 1, 10, 2)};
        std::vector<GroupMap> maps;
        for (std::size_t k = 1; k < n; ++k) {
            groups.push_back(gen::group(rng, 1, 10, 2));
            maps.push_back(gen::map(rng, groups[k], groups[k - 1], 3));
        }
        const LimOutcome l = lim(Tower(groups, maps));
        ASSERT_TRUE(l.exact());
        EXPECT_EQ(*l.group, groups.back());
        EXPECT_EQ(lim1(Tower(groups, maps)).kind, LimKind::Zero);
    }
}

TEST(Lim, HigherLimitsVanish)
{
    const PresentedGroup z2 = PresentedGroup::free(2);
    EXPECT_EQ(lim_i(Tower::periodic(Z, times(Z, Z, 2)), 2).kind, LimKind::Zero);
    EXPECT_EQ(lim_i(Tower({cyc(3)}, {}), 3).kind, LimKind::Zero);
    EXPECT_EQ(lim_i(Tower::periodic(z2, GroupMap(z2, z2, IntMatrix{{2, 1}, {1, 3}})), 5).kind, LimKind::Zero);
    EXPECT_THROW(lim_i(Tower({cyc(3)}, {}), 1), InputError);
}

TEST(Lim, MalformedTowers)
{
    EXPECT_THROW(Tower({Z, Z}, {}), MalformedTower);
    EXPECT_THROW(Tower({Z, cyc(2)}, {times(Z, Z, 1)}), MalformedTower);
    EXPECT_THROW(Tower({}, {}), MalformedTower);
    EXPECT_THROW(Tower({Z}, {}, PeriodicTail{Z, times(Z, Z, 2), std::nullopt}), MalformedTower);
    EXPECT_THROW(Telescope({Z, Z}, {}), MalformedTelescope);
}

TEST(Lim, FactorIntoLimitRejectsIncompatibleFamilies)
{
    const Tower t({Z, Z}, {times(Z, Z, 1)});
    const LimOutcome l = lim(t);
    ASSERT_TRUE(l.data);
    EXPECT_NO_THROW(factor_into_limit(t, *l.data, Z, {times(Z, Z, 2), times(Z, Z, 2)}, std::nullopt));
    EXPECT_THROW(factor_into_limit(t, *l.data, Z, {times(Z, Z, 1), times(Z, Z, 2)}, std::nullopt), InconsistentData);
}

TEST(Lim, KmaxFromEnvironment)
{
    ::setenv("TAUT_HOMOLOGY_KMAX", "7", 1);
    EXPECT_EQ(default_kmax(), 7u);
    ::setenv("TAUT_HOMOLOGY_KMAX", "junk", 1);
    EXPECT_EQ(default_kmax(), 64u);
    ::unsetenv("TAUT_HOMOLOGY_KMAX");
    EXPECT_EQ(default_kmax(), 64u);
}

TEST(Colim, Examples)
{
    const ColimOutcome f = colim(Telescope({cyc(2), cyc(4)}, {times(cyc(2), cyc(4), 2)}));
    ASSERT_TRUE(f.exact);
    EXPECT_EQ(*f.group, cyc(4));

    const ColimOutcome s = colim(Telescope::periodic(Z, times(Z, Z, 2)));
    EXPECT_FALSE(s.exact);
    EXPECT_EQ(s.symbol, "Z[1/2]");
    EXPECT_EQ(colim(Telescope::periodic(Z, times(Z, Z, 6))).symbol, "Z[1/2,1/3]");

    const PresentedGroup a = from_cyclic_orders({0, 4});
    const ColimOutcome id = colim(Telescope::periodic(a, GroupMap::identity(a)));
    ASSERT_TRUE(id.exact);
    EXPECT_EQ(*id.group, a);

    // Z/4 -x2-> Z/4 -x2-> ... dies after two steps.
    const ColimOutcome dead = colim(Telescope::periodic(cyc(4), times(cyc(4), cyc(4), 2)));
    ASSERT_TRUE(dead.exact);
    EXPECT_TRUE(dead.group->is_trivial());
}

TEST(HomIntoColim, Examples)
{
    const HomColimIso a = hom_into_colim_check(Telescope({Z, Z}, {times(Z, Z, 3)}), cyc(9));
    EXPECT_EQ(a.hom_of_colim, cyc(9));
    EXPECT_EQ(a.lim_of_homs, cyc(9));
    EXPECT_TRUE(is_isomorphism(a.iso));

    const HomColimIso b = hom_into_colim_check(Telescope({cyc(2), cyc(4)}, {times(cyc(2), cyc(4), 2)}), cyc(4));
    EXPECT_EQ(b.hom_of_colim, cyc(4));
    EXPECT_EQ(b.lim_of_homs, cyc(4));

    const PresentedGroup c = from_cyclic_orders({0, 6});
    const HomColimIso k = hom_into_colim_check(Telescope::periodic(c, GroupMap::identity(c)), cyc(4));
    EXPECT_EQ(k.hom_of_colim, hom_group(c, cyc(4)));

    EXPECT_THROW(hom_into_colim_check(Telescope::periodic(Z, times(Z, Z, 2)), Z), NotComparable);
}

TEST(HomIntoColim, RandomFiniteTelescopes)
{
    gen::Rng rng(12);
    for (int c = 0; c < 60; ++c) {
        const Telescope t = random_finite_telescope(rng);
        const PresentedGroup g = gen::group(rng, 1, 9, 1);
        const HomColimIso r = hom_into_colim_check(t, g);
        EXPECT_EQ(r.hom_of_colim, r.lim_of_homs);
    }
}

TEST(SixTerm, FiniteExample)
{
    const SixTermReport r = six_term_check(Telescope({cyc(2), cyc(4)}, {times(cyc(2), cyc(4), 2)}), Z);
    EXPECT_EQ(r.verdict, Verdict::Verified);
    ASSERT_TRUE(r.ext_colim.exact());
    EXPECT_EQ(*r.ext_colim.group, cyc(4));
    ASSERT_TRUE(r.comparison);
    EXPECT_TRUE(is_isomorphism(*r.comparison));
}

TEST(SixTerm, DyadicTelescope)
{
    const SixTermReport r = six_term_check(Telescope::periodic(Z, times(Z, Z, 2)), Z);
    EXPECT_EQ(r.lim1_hom.kind, LimKind::NonzeroUncountable);
    EXPECT_EQ(r.lim_ext.kind, LimKind::Zero);
    EXPECT_EQ(r.ext_colim.kind, LimKind::NonzeroUncountable);
    EXPECT_EQ(r.verdict, Verdict::VerifiedByClassification);
}

TEST(SixTerm, ConstantTelescope)
{
    const PresentedGroup a = from_cyclic_orders({0, 6});
    const SixTermReport r = six_term_check(Telescope::periodic(a, GroupMap::identity(a)), cyc(4));
    EXPECT_EQ(r.verdict, Verdict::Verified);
    EXPECT_EQ(r.lim1_hom.kind, LimKind::Zero);
    EXPECT_EQ(r.lim2_hom.kind, LimKind::Zero);
    EXPECT_EQ(*r.ext_colim.group, ext_group(a, cyc(4)));
}

TEST(SixTerm, RandomFiniteTelescopes)
{
    gen::Rng rng(40);
    for (int c = 0; c < 60; ++c) {
        const Telescope t = random_finite_telescope(rng);
        const PresentedGroup g = gen::group(rng, 1, 9, 1);
        const SixTermReport r = six_term_check(t, g);
        ASSERT_EQ(r.verdict, Verdict::Verified) << r.note;
        EXPECT_EQ(*r.ext_colim.group, ext_group(t.groups().back(), g));
    }
}

TEST(ShiftIso, Examples)
{
    const Telescope dyadic = Telescope::periodic(Z, times(Z, Z, 2));
    for (unsigned i : {1u, 2u, 3u}) {
        const ShiftReport r = shift_iso_check(dyadic, Z, i);
        EXPECT_TRUE(r.consistent);
        EXPECT_EQ(r.lim_ext.kind, LimKind::Zero);
        EXPECT_EQ(r.lim_hom.kind, LimKind::Zero);
    }
    const Telescope finite({cyc(2), cyc(4)}, {times(cyc(2), cyc(4), 2)});
    EXPECT_TRUE(shift_iso_check(finite, cyc(6), 2).consistent);
    EXPECT_THROW(shift_iso_check(finite, Z, 0), InputError);
}

TEST(FreeVanishing, FreeTelescopes)
{
    const PresentedGroup z2 = PresentedGroup::free(2);
    const FreeVanishingReport r = free_vanishing_check(Telescope::periodic(z2, GroupMap(z2, z2, IntMatrix{{2, 0}, {1, 3}})), cyc(5));
    EXPECT_TRUE(r.ext_tower_zero);
    EXPECT_TRUE(r.verified);
    EXPECT_THROW(free_vanishing_check(Telescope::periodic(cyc(2), GroupMap::identity(cyc(2))), Z), NotFree);
}
