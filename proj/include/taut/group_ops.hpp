#pragma once

#include "taut/lattice.hpp"

#include <optional>
#include <string>

namespace taut {

/// Invariant-factor form of the cokernel of a presentation matrix whose rows
/// index generators and whose columns are relations.
inline PresentedGroup normalize(const IntMatrix& presentation)
{
    Subquotient q(IntMatrix::identity(presentation.rows()), presentation);
    PresentedGroup g = q.group();
    g.set_presentation(presentation);
    return g;
}

/// Invariant factors of a direct sum of cyclic groups of the given orders
/// (0 meaning Z), by repeated (a, b) -> (gcd, lcm) exchanges.
inline PresentedGroup from_cyclic_orders(const Vector& orders)
{
    std::size_t free_rank = 0;
    Vector finite;
    for (const auto& o : orders) {
        Integer n = abs_value(o);
        if (n == 0) ++free_rank;
        else if (n != 1) finite.push_back(n);
    }
    for (std::size_t i = 0; i < finite.size(); ++i)
        for (std::size_t j = i + 1; j < finite.size(); ++j) {
            Integer g = gcd(finite[i], finite[j]);
            Integer l = finite[i] / g * finite[j];
            finite[i] = std::move(g);
            finite[j] = std::move(l);
        }
    Vector torsion;
    for (auto& d : finite)
        if (d != 1) torsion.push_back(std::move(d));
    return {free_rank, std::move(torsion)};
}

/// Lattice {x : m x ∈ colspan(relations)}, as generator columns.
inline IntMatrix preimage_generators(const IntMatrix& m, const IntMatrix& relations)
{
    IntMatrix k = kernel_basis(hconcat(m, relations));
    return k.block(0, m.cols(), 0, k.cols());
}

struct KernelResult {
    PresentedGroup group;
    GroupMap inclusion;
};

struct ImageResult {
    PresentedGroup group;
    GroupMap corestriction; // source -> image
    GroupMap inclusion;     // image -> target
};

struct CokernelResult {
    PresentedGroup group;
    GroupMap projection;
};

inline KernelResult kernel(const GroupMap& f)
{
    const auto& a = f.source();
    Subquotient q(preimage_generators(f.matrix(), f.target().relations()), a.relations());
    GroupMap inclusion(q.group(), a, q.lifts());
    return {q.group(), std::move(inclusion)};
}

inline Subquotient image_subquotient(const GroupMap& f)
{
    const IntMatrix rel = f.target().relations();
    return Subquotient(hconcat(f.matrix(), rel), rel);
}

inline ImageResult image(const GroupMap& f)
{
    Subquotient q = image_subquotient(f);
    IntMatrix co(q.group().generator_count(), f.source().generator_count());
    for (std::size_t j = 0; j < f.source().generator_count(); ++j)
        co.set_column(j, q.coordinates_or_throw(f.matrix().column(j)));
    return {q.group(), GroupMap(f.source(), q.group(), std::move(co)), GroupMap(q.group(), f.target(), q.lifts())};
}

inline CokernelResult cokernel(const GroupMap& f)
{
    const auto& b = f.target();
    Subquotient q(IntMatrix::identity(b.generator_count()), hconcat(f.matrix(), b.relations()));
    IntMatrix p(q.group().generator_count(), b.generator_count());
    for (std::size_t j = 0; j < b.generator_count(); ++j) p.set_column(j, q.coordinates_or_throw(b.generator(j)));
    return {q.group(), GroupMap(b, q.group(), std::move(p))};
}

inline bool is_injective(const GroupMap& f) { return kernel(f).group.is_trivial(); }
inline bool is_surjective(const GroupMap& f) { return cokernel(f).group.is_trivial(); }
inline bool is_isomorphism(const GroupMap& f) { return is_injective(f) && is_surjective(f); }

/// Some x with f(x) = y, if y lies in the image.
inline std::optional<Vector> preimage(const GroupMap& f, const Vector& y)
{
    auto sol = solve_integer(hconcat(f.matrix(), f.target().relations()), f.target().reduce(y));
    if (!sol) return std::nullopt;
    Vector x(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(f.source().generator_count()));
    return f.source().reduce(std::move(x));
}

/// The unique g with embedding ∘ g = f, for an injective embedding.
/// Throws InconsistentData when f does not factor.
inline GroupMap factor_through(const GroupMap& embedding, const GroupMap& f)
{
    if (!(embedding.target() == f.target())) throw IllFormedMap("factor_through: codomains differ");
    IntMatrix g(embedding.source().generator_count(), f.source().generator_count());
    for (std::size_t j = 0; j < f.source().generator_count(); ++j) {
        auto x = preimage(embedding, f.matrix().column(j));
        if (!x) throw InconsistentData("map does not factor through the given subgroup (generator " + std::to_string(j) + ")");
        g.set_column(j, *x);
    }
    return {f.source(), embedding.source(), std::move(g)};
}

/// Exactness of A -f-> B -g-> C at B. Returns a description of the first
/// violation, or nullopt.
inline std::optional<std::string> exactness_violation(const GroupMap& f, const GroupMap& g)
{
    if (!(f.target() == g.source())) return "maps are not composable";
    if (!compose(g, f).is_zero()) return "composite is not zero";
    KernelResult k = kernel(g);
    for (std::size_t j = 0; j < k.group.generator_count(); ++j)
        if (!preimage(f, k.inclusion.matrix().column(j)))
            return "kernel element " + std::to_string(j) + " is not in the image";
    return std::nullopt;
}

/// Direct sum of groups in canonical form together with its injections and
/// projections.
struct DirectSum {
    PresentedGroup group;
    std::vector<GroupMap> injections;
    std::vector<GroupMap> projections;
};

inline DirectSum direct_sum(const std::vector<PresentedGroup>& parts)
{
    std::size_t n = 0;
    std::vector<IntMatrix> rels;
    for (const auto& p : parts) {
        n += p.generator_count();
        rels.push_back(p.relations());
    }
    Subquotient q(IntMatrix::identity(n), block_diagonal(rels));
    DirectSum out;
    out.group = q.group();
    std::size_t offset = 0;
    for (const auto& p : parts) {
        IntMatrix inj(q.group().generator_count(), p.generator_count());
        for (std::size_t j = 0; j < p.generator_count(); ++j) {
            Vector e(n);
            e[offset + j] = 1;
            inj.set_column(j, q.coordinates_or_throw(e));
        }
        out.injections.emplace_back(p, q.group(), std::move(inj));
        out.projections.emplace_back(q.group(), p, q.lifts().block(offset, offset + p.generator_count(), 0, q.lifts().cols()));
        offset += p.generator_count();
    }
    return out;
}

} // namespace taut
