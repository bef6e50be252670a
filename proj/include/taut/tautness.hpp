#pragma once

#include "taut/limit_checks.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace taut {

/// H_n(A) together with its maps into the stages of the homology tower.
struct ComparisonData {
    PresentedGroup group;
    std::vector<GroupMap> to_stage;
    std::optional<GroupMap> to_tail;
};

/// Homological data of a decreasing system of closed neighborhoods N_0 ⊃ N_1
/// ⊃ ... of a subspace A. Degrees that are absent count as zero. The reduced
/// maps override their unreduced counterparts when a reduced sequence is asked
/// for (typically only in degree 0).
struct NeighborhoodTower {
    std::string name;
    std::map<int, Tower> homology;
    std::map<int, Telescope> cohomology;
    std::map<int, ComparisonData> a;
    std::map<int, Tower> reduced_homology;
    std::map<int, Telescope> reduced_cohomology;
    std::map<int, ComparisonData> reduced_a;

    Tower homology_at(int n, bool reduced) const
    {
        if (reduced)
            if (auto it = reduced_homology.find(n); it != reduced_homology.end()) return it->second;
        if (auto it = homology.find(n); it != homology.end()) return it->second;
        return Tower({PresentedGroup{}}, {});
    }

    std::optional<Telescope> cohomology_at(int n, bool reduced) const
    {
        if (reduced)
            if (auto it = reduced_cohomology.find(n); it != reduced_cohomology.end()) return it->second;
        if (auto it = cohomology.find(n); it != cohomology.end()) return it->second;
        return std::nullopt;
    }

    const ComparisonData* a_at(int n, bool reduced) const
    {
        if (reduced)
            if (auto it = reduced_a.find(n); it != reduced_a.end()) return &it->second;
        if (auto it = a.find(n); it != a.end()) return &it->second;
        return nullptr;
    }
};

/// i_n : H_n(A) -> lim H_n(N) with its kernel and cokernel.
struct InducedMap {
    LimOutcome limit;
    GroupMap map;
    PresentedGroup kernel;
    PresentedGroup cokernel;
};

inline InducedMap build_i_n(const NeighborhoodTower& t, int n, bool reduced = false, std::size_t kmax = default_kmax())
{
    const ComparisonData* a = t.a_at(n, reduced);
    if (!a) throw InputError("no H_" + std::to_string(n) + "(A) data");
    const Tower h = t.homology_at(n, reduced);
    LimOutcome l = lim(h, kmax);
    if (!l.data) throw LimNotExact("lim H_" + std::to_string(n) + "(N) is " + l.describe() + ": " + l.certificate);
    if (a->to_stage.size() != h.prefix_length())
        throw InputError("H_" + std::to_string(n) + "(A) needs " + std::to_string(h.prefix_length()) +
                         " comparison maps, got " + std::to_string(a->to_stage.size()));
    GroupMap m = factor_into_limit(h, *l.data, a->group, a->to_stage, a->to_tail);
    PresentedGroup ker = kernel(m).group;
    PresentedGroup coker = cokernel(m).group;
    return {std::move(l), std::move(m), std::move(ker), std::move(coker)};
}

struct SequenceTerm {
    std::string label;
    LimOutcome value;
};

struct Junction {
    std::string at;
    Verdict verdict = Verdict::NotCheckable;
    std::string reason;
};

struct SequenceReport {
    std::string title;
    std::vector<SequenceTerm> terms;
    std::vector<Junction> junctions; // the collapsed short exact sequence
    std::vector<Junction> outer;     // junctions among lim^i terms, i >= 2
    std::optional<InducedMap> i_n;
    LimOutcome middle; // H_n(A), supplied or classified
    // Invariant-factor forms the middle term can take given the two ends.
    std::vector<PresentedGroup> candidates;
    Verdict verdict = Verdict::NotCheckable;
};

namespace detail {

inline int verdict_rank(Verdict v)
{
    switch (v) {
    case Verdict::Failed: return 0;
    case Verdict::NotCheckable: return 1;
    case Verdict::VerifiedByClassification: return 2;
    case Verdict::Verified: return 3;
    }
    return 0;
}

inline Verdict weakest(const std::vector<Junction>& js)
{
    Verdict v = Verdict::Verified;
    for (const auto& j : js)
        if (verdict_rank(j.verdict) < verdict_rank(v)) v = j.verdict;
    return v;
}

inline std::string sub(int n) { return std::to_string(n); }

/// The short exact sequence 0 -> left -> H_n(A) -> right -> 0 that remains
/// once every lim^i with i >= 2 vanishes.
inline void collapse(SequenceReport& r, const std::string& h_label, const LimOutcome& left, const Tower& right_tower,
                     const NeighborhoodTower& t, int n, bool reduced, std::size_t kmax)
{
    const LimOutcome right = lim(right_tower, kmax);
    const std::string l_label = r.terms.empty() ? "" : r.terms.back().label;
    const ComparisonData* a = t.a_at(n, reduced);

    if (a) {
        // H_n(A) supplied: check i_n directly.
        r.middle = LimOutcome::exact_group(LimitData{a->group, {}, std::nullopt}, "supplied");
        if (!right.data) {
            r.junctions.push_back({h_label, Verdict::NotCheckable, "lim term not computed exactly: " + right.certificate});
        } else {
            r.i_n = build_i_n(t, n, reduced, kmax);
            const InducedMap& i = *r.i_n;
            if (left.kind == LimKind::Zero) {
                r.junctions.push_back({l_label, Verdict::Verified, "lim^1 term is zero"});
                r.junctions.push_back({h_label, i.kernel.is_trivial() ? Verdict::Verified : Verdict::Failed,
                                       "ker i_n = " + i.kernel.str()});
            } else if (left.kind == LimKind::NonzeroUncountable) {
                r.junctions.push_back({l_label, Verdict::Failed,
                                       "a finitely generated H_n(A) cannot contain the uncountable lim^1 term"});
                r.junctions.push_back({h_label, Verdict::Failed, "ker i_n = " + i.kernel.str()});
            } else {
                r.junctions.push_back({l_label, Verdict::NotCheckable, "lim^1 term is " + left.describe()});
                r.junctions.push_back({h_label, Verdict::NotCheckable, "ker i_n = " + i.kernel.str()});
            }
            r.junctions.push_back({"lim", i.cokernel.is_trivial() ? Verdict::Verified : Verdict::Failed,
                                   "coker i_n = " + i.cokernel.str()});
        }
    } else {
        // H_n(A) classified as an extension of the lim term by the lim^1 term.
        const std::string what = h_label + " is an extension of lim = " + right.describe() + " by lim^1 = " + left.describe();
        if (left.kind == LimKind::Unknown || right.kind == LimKind::Unknown) {
            r.middle = LimOutcome::unknown(what);
        } else if (left.kind == LimKind::NonzeroUncountable || right.kind == LimKind::NonzeroUncountable) {
            r.middle = LimOutcome::uncountable(what);
        } else if (left.kind == LimKind::Zero) {
            r.middle = LimOutcome::exact_group(LimitData{*right.group, {}, std::nullopt}, what);
            r.candidates.push_back(*right.group);
        } else {
            r.middle = LimOutcome::unknown(what + "; the extension is not determined");
        }
        const Verdict v = r.middle.kind == LimKind::Unknown ? Verdict::NotCheckable : Verdict::VerifiedByClassification;
        r.junctions.push_back({l_label, v, "lim^1 term is " + left.describe()});
        r.junctions.push_back({h_label, v, what});
        r.junctions.push_back({"lim", v, "lim term is " + right.describe()});
    }
    if (a && left.kind == LimKind::Zero && right.group) r.candidates.push_back(*right.group);
    r.terms.push_back({h_label, r.middle});
    r.terms.push_back({"lim H_" + sub(n) + "(N)", right});
}

inline Junction braid_junction(const std::string& at)
{
    return {at, Verdict::NotCheckable,
            "junction of the transfinite braid; only the vanishing of lim^i (i >= 2) on countable towers is used"};
}

inline void check_stage_consistency(const NeighborhoodTower& t, int n, const PresentedGroup& g, bool reduced)
{
    if (t.cohomology.empty() && t.reduced_cohomology.empty())
        throw InputError("cohomology telescopes are required for this sequence");
    for (int d : {n, n + 1}) {
        const Tower h = t.homology_at(d, reduced);
        const auto hom_src = t.cohomology_at(d, reduced);
        const auto ext_src = t.cohomology_at(d + 1, reduced);
        std::size_t stages = h.prefix_length() + (h.tail() ? 1 : 0);
        if (hom_src) stages = std::max(stages, hom_src->prefix_length() + (hom_src->tail() ? 1 : 0));
        if (ext_src) stages = std::max(stages, ext_src->prefix_length() + (ext_src->tail() ? 1 : 0));
        auto tower_stage = [&](std::size_t k) -> std::optional<PresentedGroup> {
            if (k < h.prefix_length() || h.tail()) return h.stage(k);
            if (h.prefix_length() == 1 && h.stage(0).is_trivial()) return PresentedGroup{}; // absent degree
            return std::nullopt;
        };
        auto telescope_stage = [](const std::optional<Telescope>& c, std::size_t k) -> std::optional<PresentedGroup> {
            if (!c) return PresentedGroup{};
            if (k < c->prefix_length() || c->tail()) return c->stage(k);
            return std::nullopt;
        };
        for (std::size_t k = 0; k < stages; ++k) {
            auto hk = tower_stage(k);
            auto ck = telescope_stage(hom_src, k);
            auto ek = telescope_stage(ext_src, k);
            if (!hk || !ck || !ek)
                throw InconsistentData("homology and cohomology systems in degree " + sub(d) + " have different lengths");
            const PresentedGroup expected = direct_sum({hom_group(*ck, g), ext_group(*ek, g)}).group;
            if (!(expected == *hk))
                throw InconsistentData("stage " + std::to_string(k) + ": H_" + sub(d) + "(N) = " + hk->str() +
                                       " but Hom(H^" + sub(d) + ", G) + Ext(H^" + sub(d + 1) + ", G) = " + expected.str());
        }
    }
}

} // namespace detail

/// ... -> lim^3 H_{n+2} -> lim^1 H_{n+1} -> H_n(A) -> lim H_n -> lim^2 H_{n+1} -> lim^4 H_{n+2} -> ...
inline SequenceReport theorem2_sequence(const NeighborhoodTower& t, int n, const PresentedGroup& g, bool reduced = false,
                                        std::size_t kmax = default_kmax())
{
    detail::check_stage_consistency(t, n, g, reduced);
    const std::string s = detail::sub(n);
    SequenceReport r;
    r.title = "tautness sequence, degree " + s + (reduced ? " (reduced)" : "");
    const Tower h_next = t.homology_at(n + 1, reduced);
    const Tower h_next2 = t.homology_at(n + 2, reduced);
    r.terms.push_back({"lim^3 H_" + detail::sub(n + 2) + "(N)", lim_i(h_next2, 3)});
    r.outer.push_back(detail::braid_junction(r.terms.back().label));
    r.terms.push_back({"lim^1 H_" + detail::sub(n + 1) + "(N)", lim1(h_next, kmax)});
    detail::collapse(r, "H_" + s + "(A)", r.terms.back().value, t.homology_at(n, reduced), t, n, reduced, kmax);
    r.terms.push_back({"lim^2 H_" + detail::sub(n + 1) + "(N)", lim_i(h_next, 2)});
    r.outer.push_back(detail::braid_junction(r.terms.back().label));
    r.terms.push_back({"lim^4 H_" + detail::sub(n + 2) + "(N)", lim_i(h_next2, 4)});
    r.outer.push_back(detail::braid_junction(r.terms.back().label));
    r.verdict = detail::weakest(r.junctions);
    return r;
}

/// 0 -> lim^1 Hom(H_c^{n+1}(N), G) -> H_n(A; G) -> lim H_n(N; G) -> lim^2 Hom(H_c^{n+1}(N), G) -> 0
inline SequenceReport eq14_sequence(const NeighborhoodTower& t, int n, const PresentedGroup& g, bool reduced = false,
                                    std::size_t kmax = default_kmax())
{
    detail::check_stage_consistency(t, n, g, reduced);
    const std::string s = detail::sub(n);
    const std::string hom_label = "Hom(H_c^" + detail::sub(n + 1) + "(N), " + g.str() + ")";
    SequenceReport r;
    r.title = "cohomological sequence, degree " + s + (reduced ? " (reduced)" : "");
    const auto c = t.cohomology_at(n + 1, reduced);
    const Tower ht = c ? hom_tower(*c, g) : Tower({PresentedGroup{}}, {});
    r.terms.push_back({"lim^1 " + hom_label, lim1(ht, kmax)});
    detail::collapse(r, "H_" + s + "(A)", r.terms.back().value, t.homology_at(n, reduced), t, n, reduced, kmax);
    r.terms.push_back({"lim^2 " + hom_label, lim_i(ht, 2)});
    r.outer.push_back({r.terms.back().label, Verdict::NotCheckable, "lim^2 of a countable tower vanishes; not certified"});
    r.verdict = detail::weakest(r.junctions);
    return r;
}

enum class Theory { Massey, Kolmogoroff, Milnor, Steenrod };

inline std::string to_string(Theory t)
{
    switch (t) {
    case Theory::Massey: return "Massey";
    case Theory::Kolmogoroff: return "Kolmogoroff";
    case Theory::Milnor: return "Milnor";
    case Theory::Steenrod: return "Steenrod";
    }
    return "Massey";
}

inline Theory parse_theory(const std::string& s)
{
    for (Theory t : {Theory::Massey, Theory::Kolmogoroff, Theory::Milnor, Theory::Steenrod}) {
        std::string name = to_string(t);
        std::string lower = name;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (s == name || s == lower) return t;
    }
    throw InputError("unknown homology theory '" + s + "'");
}

/// 0 -> lim^1 H_{n+1}(N) -> H_n(A) -> lim H_n(N) -> 0
inline SequenceReport milnor_sequence(const NeighborhoodTower& t, int n, Theory theory = Theory::Steenrod,
                                      bool reduced = false, std::size_t kmax = default_kmax())
{
    const std::string s = detail::sub(n);
    SequenceReport r;
    r.title = to_string(theory) + " short exact sequence, degree " + s + (reduced ? " (reduced)" : "");
    r.terms.push_back({"lim^1 H_" + detail::sub(n + 1) + "(N)", lim1(t.homology_at(n + 1, reduced), kmax)});
    detail::collapse(r, "H_" + s + "(A)", r.terms.back().value, t.homology_at(n, reduced), t, n, reduced, kmax);
    r.verdict = detail::weakest(r.junctions);
    return r;
}

namespace presets {

namespace detail {

inline GroupMap times(const PresentedGroup& a, const PresentedGroup& b, long long k)
{
    return {a, b, IntMatrix{{k}}};
}

inline Tower constant_tower(const PresentedGroup& g)
{
    return Tower::periodic(g, GroupMap::identity(g));
}

inline Telescope constant_telescope(const PresentedGroup& g)
{
    return Telescope::periodic(g, GroupMap::identity(g));
}

inline ComparisonData identity_comparison(const PresentedGroup& g) { return {g, {}, GroupMap::identity(g)}; }

} // namespace detail

/// Nested solid tori winding p times around the previous one.
inline NeighborhoodTower solenoid(long long p)
{
    if (p < 2) throw InputError("solenoid needs p >= 2");
    const PresentedGroup z = PresentedGroup::free(1);
    NeighborhoodTower t;
    t.name = "solenoid:" + std::to_string(p);
    t.homology[0] = detail::constant_tower(z);
    t.homology[1] = Tower::periodic(z, detail::times(z, z, p));
    t.cohomology[0] = detail::constant_telescope(z);
    t.cohomology[1] = Telescope::periodic(z, detail::times(z, z, p));
    t.reduced_homology[0] = Tower({PresentedGroup{}}, {});
    t.reduced_cohomology[0] = Telescope({PresentedGroup{}}, {});
    return t;
}

/// A circle with a constant system of annular neighborhoods.
inline NeighborhoodTower taut_circle()
{
    const PresentedGroup z = PresentedGroup::free(1);
    NeighborhoodTower t;
    t.name = "taut-circle";
    for (int d : {0, 1}) {
        t.homology[d] = detail::constant_tower(z);
        t.cohomology[d] = detail::constant_telescope(z);
        t.a[d] = detail::identity_comparison(z);
    }
    t.reduced_homology[0] = Tower({PresentedGroup{}}, {});
    t.reduced_cohomology[0] = Telescope({PresentedGroup{}}, {});
    t.reduced_a[0] = ComparisonData{PresentedGroup{}, {GroupMap::identity(PresentedGroup{})}, std::nullopt};
    return t;
}

/// The projective plane with a constant neighborhood system.
inline NeighborhoodTower taut_rp2()
{
    const PresentedGroup z = PresentedGroup::free(1);
    const PresentedGroup z2 = PresentedGroup::cyclic(2);
    NeighborhoodTower t;
    t.name = "taut-rp2";
    t.homology[0] = detail::constant_tower(z);
    t.homology[1] = detail::constant_tower(z2);
    t.cohomology[0] = detail::constant_telescope(z);
    t.cohomology[2] = detail::constant_telescope(z2);
    t.a[0] = detail::identity_comparison(z);
    t.a[1] = detail::identity_comparison(z2);
    t.a[2] = ComparisonData{PresentedGroup{}, {GroupMap::identity(PresentedGroup{})}, std::nullopt};
    return t;
}

/// Three neighborhoods with first homology Z/8 <- Z/4 <- Z/2 (inclusion of
/// subgroups); A carries Z/2 mapping onto the smallest one.
inline NeighborhoodTower finite_torsion()
{
    const PresentedGroup z = PresentedGroup::free(1);
    const PresentedGroup z2 = PresentedGroup::cyclic(2), z4 = PresentedGroup::cyclic(4), z8 = PresentedGroup::cyclic(8);
    NeighborhoodTower t;
    t.name = "finite-torsion";
    const Tower h0({z, z, z}, {GroupMap::identity(z), GroupMap::identity(z)});
    t.homology[0] = h0;
    t.homology[1] = Tower({z8, z4, z2}, {detail::times(z4, z8, 2), detail::times(z2, z4, 2)});
    t.cohomology[0] = Telescope({z, z, z}, {GroupMap::identity(z), GroupMap::identity(z)});
    t.cohomology[2] = Telescope({z8, z4, z2}, {detail::times(z8, z4, 1), detail::times(z4, z2, 1)});
    t.a[0] = ComparisonData{z, {GroupMap::identity(z), GroupMap::identity(z), GroupMap::identity(z)}, std::nullopt};
    t.a[1] = ComparisonData{z2, {detail::times(z2, z8, 4), detail::times(z2, z4, 2), GroupMap::identity(z2)}, std::nullopt};
    return t;
}

/// "solenoid:p", "taut-circle", "taut-rp2" or "finite-torsion".
inline NeighborhoodTower neighborhood_by_name(const std::string& name)
{
    if (name == "taut-circle") return taut_circle();
    if (name == "taut-rp2") return taut_rp2();
    if (name == "finite-torsion") return finite_torsion();
    const std::string prefix = "solenoid:";
    if (name.rfind(prefix, 0) == 0) {
        const std::string digits = name.substr(prefix.size());
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
            throw InputError("bad prime in preset '" + name + "'");
        return solenoid(std::stoll(digits));
    }
    throw InputError("unknown neighborhood preset '" + name + "'");
}

inline std::vector<std::string> neighborhood_names() { return {"solenoid:2", "solenoid:3", "taut-circle", "taut-rp2", "finite-torsion"}; }

} // namespace presets

} // namespace taut
