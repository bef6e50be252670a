#pragma once

#include "taut/taut.hpp"

#include <random>
#include <string>
#include <vector>

namespace taut {

/// Randomized invariant checks bundled with the command line tool. The test
/// suite carries the full versions with independent oracles.
struct SelftestResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

namespace detail {

using SelftestRng = std::mt19937_64;

inline long long draw(SelftestRng& rng, long long lo, long long hi)
{
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline IntMatrix random_matrix(SelftestRng& rng, std::size_t rows, std::size_t cols, long long bound)
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = draw(rng, -bound, bound);
    return m;
}

template <class F>
void run_case(SelftestResult& r, F&& check)
{
    ++r.cases;
    std::string why;
    try {
        why = check();
    } catch (const Error& e) {
        why = std::string("exception: ") + e.what();
    }
    if (!why.empty()) {
        if (r.failures == 0) r.first_failure = why;
        ++r.failures;
    }
}

inline SelftestResult selftest_snf(SelftestRng& rng, std::size_t count)
{
    SelftestResult r{"smith normal form", 0, 0, {}};
    for (std::size_t c = 0; c < count; ++c)
        run_case(r, [&]() -> std::string {
            const auto rows = static_cast<std::size_t>(draw(rng, 1, 5)), cols = static_cast<std::size_t>(draw(rng, 1, 5));
            const IntMatrix m = random_matrix(rng, rows, cols, 9);
            const SmithForm s = smith_normal_form(m);
            if (!(s.u * m * s.v == s.d)) return "U M V != D";
            if (!s.d.is_diagonal()) return "D is not diagonal";
            if (!(s.u * s.u_inverse == IntMatrix::identity(rows))) return "U inverse is wrong";
            if (!(s.v * s.v_inverse == IntMatrix::identity(cols))) return "V inverse is wrong";
            for (std::size_t i = 0; i + 1 < s.rank; ++i)
                if (s.d(i + 1, i + 1) % s.d(i, i) != 0) return "divisibility chain broken";
            return {};
        });
    return r;
}

inline SelftestResult selftest_uct(SelftestRng& rng, std::size_t count)
{
    SelftestResult r{"universal coefficients", 0, 0, {}};
    const std::vector<PresentedGroup> coefficients{PresentedGroup::free(1), PresentedGroup::cyclic(2),
                                                   PresentedGroup::cyclic(12), from_cyclic_orders({0, 4})};
    for (std::size_t c = 0; c < count; ++c)
        run_case(r, [&]() -> std::string {
            std::vector<std::size_t> ranks;
            for (int d = 0; d < 3; ++d) ranks.push_back(static_cast<std::size_t>(draw(rng, 1, 3)));
            const IntMatrix d0 = random_matrix(rng, ranks[1], ranks[0], 3);
            const IntMatrix left = kernel_basis(d0.transposed());
            const IntMatrix d1 = random_matrix(rng, ranks[2], left.cols(), 2) * left.transposed();
            const FreeComplex cx(Direction::Cochain, 0, ranks, {{0, d0}, {1, d1}});
            const auto& g = coefficients[static_cast<std::size_t>(draw(rng, 0, 3))];
            for (int n = 0; n <= 2; ++n) uct_certificate(cx, g, n);
            return {};
        });
    return r;
}

inline SelftestResult selftest_mosaic(SelftestRng& rng, std::size_t count)
{
    SelftestResult r{"mosaic", 0, 0, {}};
    for (std::size_t c = 0; c < count; ++c)
        run_case(r, [&]() -> std::string {
            std::vector<AtomSet> sets(static_cast<std::size_t>(draw(rng, 1, 4)));
            for (auto& s : sets)
                for (std::size_t a = 0; a < 8; ++a)
                    if (draw(rng, 0, 1)) s.push_back(a);
            const auto pieces = mosaic(sets);
            std::vector<int> seen(8, 0);
            for (const auto& p : pieces) {
                if (p.empty()) return "empty piece";
                for (std::size_t a : p) ++seen[a];
            }
            for (const auto& s : sets) {
                for (std::size_t a : s)
                    if (seen[a] != 1) return "point not covered exactly once";
                for (const auto& p : pieces) {
                    std::size_t inside = 0;
                    for (std::size_t a : p) inside += std::binary_search(s.begin(), s.end(), a) ? 1 : 0;
                    if (inside != 0 && inside != p.size()) return "set is not a union of pieces";
                }
            }
            return {};
        });
    return r;
}

inline SelftestResult selftest_kolmogoroff(SelftestRng& rng, std::size_t count)
{
    SelftestResult r{"Kolmogoroff chains", 0, 0, {}};
    const std::vector<FiniteModel> models{presets::arc_circle(5), presets::octahedron(), presets::rp2_6vertex()};
    const PresentedGroup g = PresentedGroup::cyclic(4);
    for (std::size_t c = 0; c < count; ++c)
        run_case(r, [&]() -> std::string {
            const FiniteModel& m = models[c % models.size()];
            const Partition p = Partition::singletons(m.atom_count());
            const int degree = static_cast<int>(draw(rng, 1, static_cast<long long>(m.maximal_simplices().front().size()) - 1));
            KolmogoroffChain f(m, p, g, degree);
            for (std::size_t s = 0; s < f.values().size(); ++s) f.set_index(s, {Integer(draw(rng, 0, 3))});
            if (!(eta(xi(f), m) == f)) return "eta(xi(f)) != f";
            if (!(xi(kolmogoroff_boundary(f)) == simplicial_boundary(xi(f)))) return "xi(Delta f) != d xi(f)";
            return {};
        });
    return r;
}

inline SelftestResult selftest_free_colimit(SelftestRng& rng, std::size_t count)
{
    SelftestResult r{"free colimit bases", 0, 0, {}};
    for (std::size_t c = 0; c < count; ++c)
        run_case(r, [&]() -> std::string {
            std::vector<PresentedGroup> groups;
            std::vector<GroupMap> maps;
            std::size_t rank = static_cast<std::size_t>(draw(rng, 1, 3));
            groups.push_back(PresentedGroup::free(rank));
            for (int k = 0; k < 3; ++k) {
                const std::size_t next = rank + static_cast<std::size_t>(draw(rng, 0, 2));
                IntMatrix m(next, rank);
                for (std::size_t i = 0; i < next; ++i) {
                    const long long j = draw(rng, -1, static_cast<long long>(rank) - 1);
                    if (j >= 0) m(i, static_cast<std::size_t>(j)) = 1;
                }
                groups.push_back(PresentedGroup::free(next));
                maps.emplace_back(groups[groups.size() - 2], groups.back(), std::move(m));
                rank = next;
            }
            const FreeColimitBasis b = free_colimit_basis(Telescope(groups, maps));
            if (!(b.colimit == groups.back())) return "colimit of a finite telescope is not its last stage";
            return {};
        });
    return r;
}

} // namespace detail

inline std::vector<SelftestResult> selftest(std::uint64_t seed, std::size_t count = 50)
{
    detail::SelftestRng rng(seed);
    return {detail::selftest_snf(rng, count), detail::selftest_uct(rng, count), detail::selftest_mosaic(rng, count),
            detail::selftest_kolmogoroff(rng, count), detail::selftest_free_colimit(rng, count)};
}

} // namespace taut
