// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "generators.hpp"
#include "oracles.hpp"
#include "taut/json_io.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace taut;

namespace {

const PresentedGroup Z = PresentedGroup::free(1);
PresentedGroup cyc(long long n) { return PresentedGroup::cyclic(n); }
GroupMap times(const PresentedGroup& a, const PresentedGroup& b, long long k) { return {a, b, IntMatrix{{k}}}; }

struct Outcome {
    bool pass = true;
    std::size_t cases = 0;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) detail = why;
        pass = false;
    }
    void check(bool ok, const std::string& why)
    {
        ++cases;
        if (!ok) fail(why);
    }
};

std::string show(const Vector& v)
{
    std::string s = "[";
    for (const auto& x : v) s += (s.size() > 1 ? "," : "") + to_string(x);
    return s + "]";
}

// 1. UCT certificates on random cochain complexes.
Outcome uct_suite()
{
    Outcome o;
    gen::Rng rng(1001);
    const std::vector<PresentedGroup> coefficients{Z, cyc(2), cyc(12), from_cyclic_orders({0, 4})};
    for (int c = 0; c < 500; ++c) {
        const FreeComplex cx = gen::cochain_complex(rng, 5, 5, 3);
        for (const auto& g : coefficients)
            for (int n = 0; n <= 3; ++n) {
                const UctCertificate u = uct_certificate(cx, g, n);
                bool split = true;
                const GroupMap back = compose(u.surjection, u.splitting);
                for (std::size_t i = 0; i < u.hom_term.generator_count(); ++i)
                    split = split && back.apply(u.hom_term.generator(i)) == u.hom_term.reduce(u.hom_term.generator(i));
                o.check(is_injective(u.injection) && is_surjective(u.surjection) &&
                            !exactness_violation(u.injection, u.surjection) && split,
                        "complex " + std::to_string(c) + " degree " + std::to_string(n) + " G = " + g.str());
            }
    }
    return o;
}

// 2. Smith normal form against determinantal divisors.
Outcome snf_suite()
{
    Outcome o;
    gen::Rng rng(2002);
    for (int c = 0; c < 1000; ++c) {
        const auto rows = static_cast<std::size_t>(gen::uniform(rng, 1, 6));
        const auto cols = static_cast<std::size_t>(gen::uniform(rng, 1, 6));
        const IntMatrix m = gen::matrix(rng, rows, cols, 9);
        const SmithForm s = smith_normal_form(m);
        const auto expected = oracle::invariant_factors(gen::to_oracle(m), cols);
        Vector want(expected.begin(), expected.end());
        bool chain = s.d.is_diagonal();
        for (std::size_t i = 0; i + 1 < s.rank; ++i) chain = chain && s.d(i + 1, i + 1) % s.d(i, i) == 0;
        o.check(s.u * m * s.v == s.d && abs_value(determinant(s.u)) == 1 && abs_value(determinant(s.v)) == 1 && chain &&
                    s.invariants() == want,
                "case " + std::to_string(c) + ": got " + show(s.invariants()) + ", oracle " + show(want));
    }
    return o;
}

void invariant_lists(long long budget, long long last, std::vector<long long>& cur, std::vector<std::vector<long long>>& out)
{
    out.push_back(cur);
    // Extend on the left so that the new factor divides the current smallest.
    for (long long d = 2; d <= budget; ++d) {
        if (last != 0 && last % d != 0) continue;
        cur.insert(cur.begin(), d);
        invariant_lists(budget / d, d, cur, out);
        cur.erase(cur.begin());
    }
}

std::vector<long long> prime_powers_dividing(long long n)
{
    std::vector<long long> out;
    for (long long p = 2; p <= n; ++p) {
        bool prime = true;
        for (long long q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
        if (!prime) continue;
        for (long long q = p; n % q == 0; q *= p) out.push_back(q);
    }
    return out;
}

// 3. Hom and Ext of all pairs of finite groups of order <= 64.
Outcome hom_ext_suite()
{
    Outcome o;
    std::vector<std::vector<long long>> groups;
    std::vector<long long> cur;
    for (long long top = 2; top <= 64; ++top) {
        cur = {top};
        invariant_lists(64 / top, top, cur, groups);
    }
    groups.push_back({});
    for (const auto& a : groups)
        for (const auto& g : groups) {
            const std::vector<oracle::Int> ao(a.begin(), a.end());
            const oracle::FiniteGroup go{std::vector<oracle::Int>(g.begin(), g.end())};
            const PresentedGroup pa = from_cyclic_orders(Vector(a.begin(), a.end()));
            const PresentedGroup pg = from_cyclic_orders(Vector(g.begin(), g.end()));
            const PresentedGroup hom = hom_group(pa, pg), ext = ext_group(pa, pg);
            const long long ea = a.empty() ? 1 : a.back(), eg = g.empty() ? 1 : g.back();
            const long long e = std::gcd(ea, eg);
            // A finite group is determined by its order and the sizes of its p^k-torsion subgroups.
            std::vector<long long> probes{0};
            for (long long q : prime_powers_dividing(e)) probes.push_back(q);
            bool ok = hom.is_finite() && ext.is_finite();
            for (long long m : probes) {
                ok = ok && hom.count_killed_by(m) == oracle::hom_count_killed_by(ao, go, m);
                ok = ok && ext.count_killed_by(m) == oracle::ext_count_killed_by(ao, go, m);
            }
            // Both functors are killed by gcd of the exponents.
            ok = ok && hom.count_killed_by(e) == hom.order() && ext.count_killed_by(e) == ext.order();
            o.check(ok, "A = " + pa.str() + ", G = " + pg.str() + ": Hom = " + hom.str() + ", Ext = " + ext.str());
        }
    o.detail = o.pass ? std::to_string(groups.size()) + " groups" : o.detail;
    return o;
}

// 4. Six-term sequence on finite telescopes and the dyadic telescope.
Outcome six_term_suite()
{
    Outcome o;
    gen::Rng rng(4004);
    for (int c = 0; c < 200; ++c) {
        const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
        std::vector<PresentedGroup> groups{gen::group(rng, 1, 12, 2)};
        std::vector<GroupMap> maps;
        for (std::size_t k = 1; k < n; ++k) {
            groups.push_back(gen::group(rng, 1, 12, 2));
            maps.push_back(gen::map(rng, groups[k - 1], groups[k], 3));
        }
        const PresentedGroup g = gen::group(rng, 1, 9, 2);
        const SixTermReport r = six_term_check(Telescope(groups, maps), g);
        o.check(r.verdict == Verdict::Verified && r.comparison && is_isomorphism(*r.comparison) &&
                    r.lim1_hom.kind == LimKind::Zero && r.lim2_hom.kind == LimKind::Zero,
                "telescope " + std::to_string(c) + ": " + r.note);
    }
    const SixTermReport d = six_term_check(Telescope::periodic(Z, times(Z, Z, 2)), Z);
    o.check(d.ext_colim.kind == LimKind::NonzeroUncountable && d.colimit.symbol == "Z[1/2]" &&
                d.verdict == Verdict::VerifiedByClassification,
            "dyadic telescope: Ext(colim, Z) = " + d.ext_colim.describe());
    return o;
}

// 5. Derived limit classifications.
Outcome limit_suite()
{
    Outcome o;
    for (long long p : {2, 3, 5}) {
        const Tower t = Tower::periodic(Z, times(Z, Z, p));
        const LimOutcome l = lim(t), l1 = lim1(t);
        o.check(l.kind == LimKind::Zero && l.exact(), "lim(Z <-x" + std::to_string(p) + " Z) = " + l.describe());
        o.check(l1.kind == LimKind::NonzeroUncountable && l1.certificate.find("strict descent") != std::string::npos,
                "lim^1(Z <-x" + std::to_string(p) + " Z) = " + l1.describe());
        for (unsigned i = 2; i <= 6; ++i) o.check(lim_i(t, i).kind == LimKind::Zero, "lim^i nonzero");
    }
    gen::Rng rng(5005);
    for (int c = 0; c < 200; ++c) {
        const PresentedGroup b = gen::finite_group(rng, 16, 3);
        const GroupMap f = gen::map(rng, b, b);
        std::vector<PresentedGroup> prefix;
        std::vector<GroupMap> maps;
        std::optional<GroupMap> glue;
        if (c % 2) {
            prefix = {gen::finite_group(rng, 16, 2)};
            glue = gen::map(rng, b, prefix.back());
        }
        const Tower t(prefix, maps, PeriodicTail{b, f, glue});
        o.check(lim1(t).kind == LimKind::Zero, "finite tower " + std::to_string(c) + ": lim^1 = " + lim1(t).describe());
        o.check(lim(t).exact(), "finite tower " + std::to_string(c) + ": lim not exact");
        for (unsigned i = 2; i <= 4; ++i) o.check(lim_i(t, i).kind == LimKind::Zero, "lim^i nonzero");
    }
    return o;
}

// 6. Kolmogoroff homology against the dual nerve homology, and the chain maps.
Outcome kolmogoroff_suite()
{
    Outcome o;
    std::vector<std::pair<std::string, FiniteModel>> models;
    for (int n = 4; n <= 8; ++n) models.emplace_back("arc-circle:" + std::to_string(n), presets::arc_circle(static_cast<std::size_t>(n)));
    models.emplace_back("octahedron", presets::octahedron());
    models.emplace_back("rp2-6vertex", presets::rp2_6vertex());
    gen::Rng rng(6006);
    for (const auto& [name, m] : models) {
        const Partition p = Partition::singletons(m.atom_count());
        const NerveComplex nerve(m, p);
        for (const auto& g : {Z, cyc(2), cyc(4)})
            for (int d = 0; d <= nerve.dimension(); ++d) {
                const PresentedGroup k = kolmogoroff_homology(m, p, g, d), h = nerve_dual_homology(m, p, g, d);
                o.check(k == h, name + " G = " + g.str() + " degree " + std::to_string(d) + ": " + k.str() + " vs " + h.str());
            }
        for (int c = 0; c < 200; ++c) {
            const PresentedGroup g = c % 3 == 0 ? Z : (c % 3 == 1 ? cyc(2) : cyc(4));
            const int degree = static_cast<int>(gen::uniform(rng, 0, nerve.dimension()));
            KolmogoroffChain f(m, p, g, degree);
            for (std::size_t s = 0; s < f.values().size(); ++s) f.set_index(s, {Integer(gen::uniform(rng, -5, 5))});
            const SimplicialChain x = xi(f);
            bool ok = eta(x, m) == f && xi(eta(x, m)) == x;
            if (degree > 0) ok = ok && xi(kolmogoroff_boundary(f)) == simplicial_boundary(x);
            o.check(ok, name + " random chain " + std::to_string(c));
        }
    }
    return o;
}

// 7. Mosaic conditions on every set system of at most 4 sets over at most 8
// atoms, up to relabelling of the atoms: a system is a multiset of 8 membership
// signatures, and the mosaic conditions do not depend on atom names.
Outcome mosaic_suite()
{
    Outcome o;
    for (std::size_t k = 1; k <= 4; ++k) {
        const std::size_t signatures = std::size_t{1} << k;
        std::vector<std::size_t> sig(8, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t atom, std::size_t from) {
            if (atom == 8) {
                std::vector<AtomSet> sets(k);
                std::vector<std::set<int>> plain(k);
                for (std::size_t a = 0; a < 8; ++a)
                    for (std::size_t i = 0; i < k; ++i)
                        if (sig[a] >> i & 1) {
                            sets[i].push_back(a);
                            plain[i].insert(static_cast<int>(a));
                        }
                const auto pieces = mosaic(sets);
                std::set<std::set<int>> got;
                std::vector<int> seen(8, 0);
                bool ok = true;
                std::vector<std::size_t> prev_sig;
                for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
                    const auto& piece = pieces[pi];
                    ok = ok && !piece.empty();
                    if (piece.empty()) break;
                    for (std::size_t a : piece) ++seen[a];
                    got.insert(std::set<int>(piece.begin(), piece.end()));
                    // Ordered by decreasing number of containing sets, then lexicographically.
                    std::vector<std::size_t> s;
                    for (std::size_t i = 0; i < k; ++i)
                        if (plain[i].count(static_cast<int>(piece.front()))) s.push_back(i);
                    if (pi > 0) ok = ok && (prev_sig.size() > s.size() || (prev_sig.size() == s.size() && prev_sig < s));
                    prev_sig = s;
                }
                for (std::size_t a = 0; a < 8; ++a) ok = ok && seen[a] == (sig[a] != 0 ? 1 : 0);
                for (const auto& s : plain)
                    for (const auto& piece : got) {
                        std::size_t inside = 0;
                        for (int a : piece) inside += s.count(a);
                        ok = ok && (inside == 0 || inside == piece.size());
                    }
                ok = ok && got == oracle::boolean_atoms(plain);
                o.check(ok, "system with signatures " + std::to_string(k) + " sets failed");
                return;
            }
            for (std::size_t s = from; s < signatures; ++s) {
                sig[atom] = s;
                rec(atom + 1, s);
            }
        };
        rec(0, 0);
    }
    return o;
}

// Random 0/1 matrix whose columns have pairwise disjoint supports.
IntMatrix conforming(gen::Rng& rng, std::size_t rows, std::size_t cols)
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const long long j = gen::uniform(rng, -1, static_cast<long long>(cols) - 1);
        if (j >= 0) m(i, static_cast<std::size_t>(j)) = 1;
    }
    return m;
}

std::size_t nonzero_columns(const IntMatrix& m)
{
    std::size_t n = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) n += is_zero_vector(m.column(j)) ? 0 : 1;
    return n;
}

// 8. Free colimit bases.
Outcome free_colimit_suite()
{
    Outcome o;
    gen::Rng rng(8008);
    for (int c = 0; c < 300; ++c) {
        std::vector<PresentedGroup> groups;
        std::vector<GroupMap> maps;
        std::size_t rank = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
        groups.push_back(PresentedGroup::free(rank));
        const auto stages = gen::uniform(rng, 0, 3);
        for (long long k = 0; k < stages; ++k) {
            const std::size_t next = rank + static_cast<std::size_t>(gen::uniform(rng, 0, 2));
            groups.push_back(PresentedGroup::free(next));
            maps.emplace_back(groups[groups.size() - 2], groups.back(), conforming(rng, next, rank));
            rank = next;
        }
        std::optional<PeriodicTail> tail;
        std::size_t expected_rank = rank;
        if (c % 2) {
            const PresentedGroup b = PresentedGroup::free(rank);
            const IntMatrix f = conforming(rng, rank, rank);
            tail = PeriodicTail{b, GroupMap(b, b, f), GroupMap::identity(b)};
            IntMatrix power = IntMatrix::identity(rank);
            for (std::size_t i = 0; i < rank; ++i) power = f * power;
            // Columns of a conforming power stay 0/1 with disjoint supports.
            expected_rank = nonzero_columns(power);
        }
        try {
            const FreeColimitBasis b = free_colimit_basis(Telescope(groups, maps, tail));
            o.check(b.colimit == PresentedGroup::free(expected_rank) && b.basis.cols() == expected_rank,
                    "telescope " + std::to_string(c) + ": colimit " + b.colimit.str() + ", expected rank " +
                        std::to_string(expected_rank));
        } catch (const Error& e) {
            o.check(false, "telescope " + std::to_string(c) + ": " + e.what());
        }

        // Break the condition in one map and expect the stage to be named.
        if (!maps.empty()) {
            const std::size_t k = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long long>(maps.size()) - 1));
            IntMatrix bad = maps[k].matrix();
            if (c % 3 == 0) bad(0, 0) = 2;
            else {
                for (std::size_t j = 0; j < bad.cols(); ++j) bad(0, j) = 1;
                if (bad.cols() == 1) bad(0, 0) = -1;
            }
            std::vector<GroupMap> broken = maps;
            broken[k] = GroupMap(maps[k].source(), maps[k].target(), bad);
            try {
                free_colimit_basis(Telescope(groups, broken));
                o.check(false, "violation at stage " + std::to_string(k) + " accepted");
            } catch (const ConditionViolated& e) {
                o.check(e.stage() == k && !e.witness().empty(), "wrong witness stage " + std::to_string(e.stage()));
            }
        }
    }
    return o;
}

// 9. Tautness and Milnor harness.
Outcome tautness_suite()
{
    Outcome o;
    const NeighborhoodTower s = presets::solenoid(2);
    const SequenceReport h1 = theorem2_sequence(s, 1, Z);
    o.check(h1.middle.kind == LimKind::Zero && passed(h1.verdict), "solenoid H_1(A) = " + h1.middle.describe());
    const SequenceReport m1 = milnor_sequence(s, 1);
    o.check(m1.middle.kind == LimKind::Zero, "solenoid Milnor H_1(A) = " + m1.middle.describe());
    const SequenceReport h0 = theorem2_sequence(s, 0, Z, true);
    o.check(h0.middle.kind == LimKind::NonzeroUncountable, "solenoid reduced H_0(A) = " + h0.middle.describe());
    o.check(milnor_sequence(s, 0, Theory::Steenrod, true).terms.front().value.kind == LimKind::NonzeroUncountable,
            "solenoid lim^1 not uncountable");

    for (const std::string name : {"taut-circle", "taut-rp2", "finite-torsion"}) {
        const NeighborhoodTower t = presets::neighborhood_by_name(name);
        for (const auto& [n, a] : t.a) {
            const SequenceReport r = theorem2_sequence(t, n, Z);
            o.check(r.verdict == Verdict::Verified && r.i_n && is_isomorphism(r.i_n->map),
                    name + " degree " + std::to_string(n) + ": " + to_string(r.verdict));
        }
    }

    std::vector<NeighborhoodTower> corpus;
    for (const auto& name : presets::neighborhood_names()) corpus.push_back(presets::neighborhood_by_name(name));
    for (const char* file : {"solenoid3.json", "wrong_comparison.json"})
        corpus.push_back(io::to_neighborhood_tower(io::read_file(std::string(TAUT_DATA_DIR) + "/" + file)));
    for (const auto& t : corpus)
        for (int n = 0; n <= 2; ++n)
            for (bool reduced : {false, true})
                for (const auto& g : {Z}) {
                    const SequenceReport a = theorem2_sequence(t, n, g, reduced);
                    const SequenceReport b = eq14_sequence(t, n, g, reduced);
                    bool agree = a.junctions.size() == b.junctions.size() && a.middle.kind == b.middle.kind &&
                                 a.middle.describe() == b.middle.describe() && a.verdict == b.verdict;
                    for (std::size_t i = 0; agree && i < a.junctions.size(); ++i)
                        agree = a.junctions[i].verdict == b.junctions[i].verdict;
                    o.check(agree, t.name + " degree " + std::to_string(n) + (reduced ? " reduced" : "") +
                                       " G = " + g.str() + ": sequences disagree");
                }
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int number;
        const char* name;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {1, "UCT certificates", uct_suite},
        {2, "Smith normal form oracle", snf_suite},
        {3, "Hom/Ext oracle", hom_ext_suite},
        {4, "six-term sequence", six_term_suite},
        {5, "derived limit classifications", limit_suite},
        {6, "Kolmogoroff vs nerve homology", kolmogoroff_suite},
        {7, "mosaic conditions", mosaic_suite},
        {8, "free colimit bases", free_colimit_suite},
        {9, "tautness and Milnor sequences", tautness_suite},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << "Criterion " << c.number << ": " << (o.pass ? "PASS" : "FAIL") << " " << c.name << " (" << o.cases
             << " checks, " << std::fixed;
        line.precision(1);
        line << seconds << " s)";
        if (!o.detail.empty()) line << " " << o.detail;
        std::cout << line.str() << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
