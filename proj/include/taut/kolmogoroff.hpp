#pragma once

#include "taut/finite_model.hpp"
#include "taut/tower.hpp"

#include <map>
#include <string>
#include <vector>

namespace taut {

/// Values of a function on the oriented simplices of a nerve, one G element
/// per simplex of the given dimension, in the nerve's simplex order.
struct SimplicialChain {
    NerveComplex nerve;
    PresentedGroup coefficients;
    int degree = 0;
    std::vector<Vector> values;

    friend bool operator==(const SimplicialChain& a, const SimplicialChain& b)
    {
        return a.degree == b.degree && a.coefficients == b.coefficients && a.values == b.values &&
               a.nerve.partition() == b.nerve.partition();
    }
};

/// A Kolmogoroff chain on a finite model, determined by its values on tuples
/// of blocks of a partition. Values on the sorted nerve simplices are stored;
/// other orderings pick up the permutation sign, tuples with a repeated block
/// vanish, and tuples that are not nerve simplices vanish. Sets that are
/// unions of blocks are evaluated by summing over their blocks.
class KolmogoroffChain {
public:
    KolmogoroffChain() = default;

    KolmogoroffChain(FiniteModel model, const Partition& partition, PresentedGroup g, int degree)
        : model_(std::move(model)), nerve_(model_, partition), g_(std::move(g)), degree_(degree)
    {
        if (partition.atom_count() != model_.atom_count())
            throw MalformedModel("partition has " + std::to_string(partition.atom_count()) + " atoms, model has " +
                                 std::to_string(model_.atom_count()));
        if (degree < 0) throw DegreeOutOfRange("Kolmogoroff chains live in degrees >= 0");
        values_.assign(nerve_.count(degree), g_.zero());
    }

    const FiniteModel& model() const noexcept { return model_; }
    const NerveComplex& nerve() const noexcept { return nerve_; }
    const Partition& partition() const noexcept { return nerve_.partition(); }
    const PresentedGroup& coefficients() const noexcept { return g_; }
    int degree() const noexcept { return degree_; }
    const std::vector<Vector>& values() const noexcept { return values_; }

    /// Sets f(B_{i_0}, ..., B_{i_n}) = value for an ordered tuple of block indices.
    void set(const std::vector<std::size_t>& blocks, const Vector& value)
    {
        auto [index, sign] = locate(blocks);
        if (!index) throw InputError("block tuple is not an oriented simplex of the nerve");
        Vector v = value;
        if (sign < 0)
            for (auto& x : v) x = -x;
        values_[*index] = g_.reduce(std::move(v));
    }

    void set_index(std::size_t simplex, const Vector& value) { values_.at(simplex) = g_.reduce(value); }

    /// f(B_{i_0}, ..., B_{i_n}) for an ordered tuple of block indices.
    Vector value(const std::vector<std::size_t>& blocks) const
    {
        auto [index, sign] = locate(blocks);
        if (!index) return g_.zero();
        Vector v = values_[*index];
        if (sign < 0)
            for (auto& x : v) x = -x;
        return g_.reduce(std::move(v));
    }

    /// f(E_0, ..., E_n) for atom sets that are unions of blocks.
    Vector evaluate(const std::vector<AtomSet>& sets) const
    {
        if (sets.size() != static_cast<std::size_t>(degree_) + 1)
            throw InputError("a degree " + std::to_string(degree_) + " chain takes " + std::to_string(degree_ + 1) +
                             " sets, got " + std::to_string(sets.size()));
        std::vector<std::vector<std::size_t>> parts;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            auto d = partition().decompose(sets[i]);
            if (!d) throw BlockMismatch("set " + std::to_string(i) + " is not a union of partition blocks");
            parts.push_back(std::move(*d));
        }
        Vector total = g_.zero();
        std::vector<std::size_t> tuple(parts.size());
        sum_over(parts, 0, tuple, total);
        return total;
    }

    friend bool operator==(const KolmogoroffChain& a, const KolmogoroffChain& b)
    {
        return a.degree_ == b.degree_ && a.g_ == b.g_ && a.partition() == b.partition() && a.values_ == b.values_;
    }

private:
    std::pair<std::optional<std::size_t>, int> locate(const std::vector<std::size_t>& blocks) const
    {
        if (blocks.size() != static_cast<std::size_t>(degree_) + 1)
            throw InputError("block tuple has length " + std::to_string(blocks.size()) + ", expected " +
                             std::to_string(degree_ + 1));
        for (std::size_t b : blocks)
            if (b >= partition().block_count()) throw InputError("block index " + std::to_string(b) + " out of range");
        Simplex sorted = blocks;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return {std::nullopt, 0};
        return {nerve_.index_of(sorted), permutation_sign(blocks)};
    }

    void sum_over(const std::vector<std::vector<std::size_t>>& parts, std::size_t i, std::vector<std::size_t>& tuple,
                  Vector& total) const
    {
        if (i == parts.size()) {
            total = g_.add(total, value(tuple));
            return;
        }
        for (std::size_t b : parts[i]) {
            tuple[i] = b;
            sum_over(parts, i + 1, tuple, total);
        }
    }

    FiniteModel model_;
    NerveComplex nerve_;
    PresentedGroup g_;
    int degree_ = 0;
    std::vector<Vector> values_;
};

namespace detail {

inline AtomSet all_atoms(std::size_t n)
{
    AtomSet u(n);
    for (std::size_t a = 0; a < n; ++a) u[a] = a;
    return u;
}

inline std::vector<AtomSet> block_sets(const Partition& p, const Simplex& s)
{
    std::vector<AtomSet> out;
    for (std::size_t b : s) out.push_back(p.blocks()[b]);
    return out;
}

inline AtomSet unite(const std::vector<AtomSet>& sets)
{
    std::set<std::size_t> u;
    for (const auto& s : sets) u.insert(s.begin(), s.end());
    return {u.begin(), u.end()};
}

} // namespace detail

/// Blocks whose closure meets the closure of some E_i. Any union of blocks
/// containing these can stand in for the whole space in the boundary.
inline AtomSet boundary_carrier(const KolmogoroffChain& f, const std::vector<AtomSet>& sets)
{
    std::vector<AtomSet> blocks;
    for (const auto& block : f.partition().blocks())
        for (const auto& e : sets)
            if (f.model().meets({block, e})) {
                blocks.push_back(block);
                break;
            }
    return detail::unite(blocks);
}

/// (Delta f)(E_0, ..., E_{n-1}) = f(U, E_0, ..., E_{n-1}) for a union of
/// blocks U containing the carrier of the E_i.
inline Vector boundary_value(const KolmogoroffChain& f, const AtomSet& u, const std::vector<AtomSet>& sets)
{
    if (f.degree() == 0) throw DegreeOutOfRange("the boundary of a degree 0 chain is zero");
    const AtomSet carrier = boundary_carrier(f, sets);
    if (!std::includes(u.begin(), u.end(), carrier.begin(), carrier.end()))
        throw InputError("U does not contain the closures of the arguments");
    std::vector<AtomSet> args{u};
    args.insert(args.end(), sets.begin(), sets.end());
    return f.evaluate(args);
}

/// Delta f with U the whole space.
inline KolmogoroffChain kolmogoroff_boundary(const KolmogoroffChain& f)
{
    if (f.degree() == 0) throw DegreeOutOfRange("the boundary of a degree 0 chain is zero");
    KolmogoroffChain out(f.model(), f.partition(), f.coefficients(), f.degree() - 1);
    const AtomSet u = detail::all_atoms(f.model().atom_count());
    const auto& faces = f.nerve().simplices(f.degree() - 1);
    for (std::size_t t = 0; t < faces.size(); ++t) {
        std::vector<AtomSet> args{u};
        for (auto& s : detail::block_sets(f.partition(), faces[t])) args.push_back(std::move(s));
        out.set_index(t, f.evaluate(args));
    }
    return out;
}

/// Restriction of f to the blocks of a partition it refines.
inline SimplicialChain xi(const KolmogoroffChain& f, const Partition& coarse)
{
    if (!f.partition().refines(coarse)) throw BlockMismatch("chain partition does not refine the target partition");
    SimplicialChain c{NerveComplex(f.model(), coarse), f.coefficients(), f.degree(), {}};
    for (const auto& s : c.nerve.simplices(f.degree())) c.values.push_back(f.evaluate(detail::block_sets(coarse, s)));
    return c;
}

inline SimplicialChain xi(const KolmogoroffChain& f) { return xi(f, f.partition()); }

/// The Kolmogoroff chain on the nerve's partition with the given simplex values.
inline KolmogoroffChain eta(const SimplicialChain& c, const FiniteModel& model)
{
    KolmogoroffChain f(model, c.nerve.partition(), c.coefficients, c.degree);
    if (c.values.size() != c.nerve.count(c.degree)) throw InputError("chain has the wrong number of simplex values");
    for (std::size_t i = 0; i < c.values.size(); ++i) f.set_index(i, c.values[i]);
    return f;
}

/// Simplicial boundary of an infinite chain, read off the integral boundary
/// matrix of the nerve.
inline SimplicialChain simplicial_boundary(const SimplicialChain& c)
{
    if (c.degree == 0) throw DegreeOutOfRange("the boundary of a degree 0 chain is zero");
    const IntMatrix m = c.nerve.boundary(c.degree);
    SimplicialChain out{c.nerve, c.coefficients, c.degree - 1, {}};
    for (std::size_t t = 0; t < m.rows(); ++t) {
        Vector v = c.coefficients.zero();
        for (std::size_t s = 0; s < m.cols(); ++s)
            if (m(t, s) != 0)
                for (std::size_t k = 0; k < v.size(); ++k) v[k] += m(t, s) * c.values[s][k];
        out.values.push_back(c.coefficients.reduce(std::move(v)));
    }
    return out;
}

namespace detail {

inline IntMatrix repeated_relations(std::size_t copies, const PresentedGroup& g)
{
    if (copies == 0 || g.torsion().empty()) return IntMatrix(copies * g.generator_count(), 0);
    return block_diagonal(std::vector<IntMatrix>(copies, g.relations()));
}

} // namespace detail

/// The complex of Kolmogoroff chains over a partition with coefficients in G.
/// Each differential column is Delta of a chain supported on one simplex with
/// a single generator of G as value.
inline CoefficientComplex kolmogoroff_complex(const FiniteModel& model, const Partition& p, const PresentedGroup& g)
{
    const NerveComplex n(model, p);
    const std::size_t ng = g.generator_count();
    std::vector<IntMatrix> relations;
    std::map<int, IntMatrix> diffs;
    for (int d = 0; d <= n.dimension(); ++d) {
        relations.push_back(detail::repeated_relations(n.count(d), g));
        if (d == 0) continue;
        IntMatrix m(n.count(d - 1) * ng, n.count(d) * ng);
        for (std::size_t s = 0; s < n.count(d); ++s)
            for (std::size_t j = 0; j < ng; ++j) {
                KolmogoroffChain f(model, p, g, d);
                f.set_index(s, g.generator(j));
                const KolmogoroffChain df = kolmogoroff_boundary(f);
                for (std::size_t t = 0; t < df.values().size(); ++t)
                    for (std::size_t k = 0; k < ng; ++k) m(t * ng + k, s * ng + j) = df.values()[t][k];
            }
        diffs[d] = std::move(m);
    }
    return {Direction::Chain, 0, std::move(relations), std::move(diffs)};
}

inline PresentedGroup kolmogoroff_homology(const FiniteModel& model, const Partition& p, const PresentedGroup& g, int n)
{
    if (n < 0) throw DegreeOutOfRange("Kolmogoroff homology lives in degrees >= 0");
    const CoefficientComplex c = kolmogoroff_complex(model, p, g);
    if (!c.in_range(n)) return {};
    return c.homology(n);
}

/// H_n of Hom(C_f(N), G), the dual of the finite cochains of the nerve.
inline PresentedGroup nerve_dual_homology(const FiniteModel& model, const Partition& p, const PresentedGroup& g, int n)
{
    if (n < 0) throw DegreeOutOfRange("homology lives in degrees >= 0");
    const CoefficientComplex c = dualize(NerveComplex(model, p).cochain_complex(), g);
    if (!c.in_range(n)) return {};
    return c.homology(n);
}

/// Simplicial map between nerves induced by a refinement: each fine block goes
/// to the coarse block containing it.
class RefinementMap {
public:
    RefinementMap(const FiniteModel& model, const Partition& fine, const Partition& coarse)
        : fine_(model, fine), coarse_(model, coarse)
    {
        if (fine.atom_count() != coarse.atom_count()) throw NotARefinement("partitions live on different atom sets");
        for (std::size_t b = 0; b < fine.block_count(); ++b) {
            const auto& block = fine.blocks()[b];
            const std::size_t target = coarse.block_of(block.front());
            for (std::size_t a : block)
                if (coarse.block_of(a) != target)
                    throw NotARefinement("fine block " + std::to_string(b) + " meets coarse blocks " +
                                         std::to_string(target) + " and " + std::to_string(coarse.block_of(a)));
            vertex_map_.push_back(target);
        }
    }

    const NerveComplex& fine() const noexcept { return fine_; }
    const NerveComplex& coarse() const noexcept { return coarse_; }
    const std::vector<std::size_t>& vertex_map() const noexcept { return vertex_map_; }

    /// C_d(N_fine) -> C_d(N_coarse): a simplex goes to its image with the
    /// orientation sign, or to 0 when two vertices collapse.
    IntMatrix chain_map(int d) const
    {
        IntMatrix m(coarse_.count(d), fine_.count(d));
        const auto& simplices = fine_.simplices(d);
        for (std::size_t s = 0; s < simplices.size(); ++s) {
            std::vector<std::size_t> image;
            for (std::size_t v : simplices[s]) image.push_back(vertex_map_[v]);
            Simplex sorted = image;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
            auto t = coarse_.index_of(sorted);
            if (!t) throw CertificateFailure("image of a nerve simplex is not a simplex of the coarse nerve");
            m(*t, s) = permutation_sign(image);
        }
        return m;
    }

    /// Pullback of finite cochains C^d(N_coarse) -> C^d(N_fine).
    IntMatrix cochain_pullback(int d) const { return chain_map(d).transposed(); }

    /// Push-forward of an infinite chain on the fine nerve.
    SimplicialChain push_forward(const SimplicialChain& c) const
    {
        if (!(c.nerve.partition() == fine_.partition())) throw InputError("chain does not live on the fine nerve");
        const IntMatrix m = chain_map(c.degree);
        SimplicialChain out{coarse_, c.coefficients, c.degree, {}};
        for (std::size_t t = 0; t < m.rows(); ++t) {
            Vector v = c.coefficients.zero();
            for (std::size_t s = 0; s < m.cols(); ++s)
                if (m(t, s) != 0)
                    for (std::size_t k = 0; k < v.size(); ++k) v[k] += m(t, s) * c.values[s][k];
            out.values.push_back(c.coefficients.reduce(std::move(v)));
        }
        return out;
    }

private:
    NerveComplex fine_;
    NerveComplex coarse_;
    std::vector<std::size_t> vertex_map_;
};

inline RefinementMap refinement_map(const FiniteModel& model, const Partition& fine, const Partition& coarse)
{
    return {model, fine, coarse};
}

/// A basis of the colimit of a telescope of free groups whose maps send each
/// basis element to a sum of distinct basis elements over disjoint index sets.
struct FreeColimitBasis {
    PresentedGroup colimit;
    IntMatrix basis; // columns: representatives in the last stage (or tail group)
    std::string certificate;
};

namespace detail {

inline void check_basis_condition(const GroupMap& f, std::size_t stage)
{
    const IntMatrix& m = f.matrix();
    std::vector<std::optional<std::size_t>> owner(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const Integer& x = m(i, j);
            if (x == 0) continue;
            if (x != 1)
                throw ConditionViolated(stage, j, "image has coefficient " + to_string(x) + " on basis element " +
                                                      std::to_string(i));
            if (owner[i])
                throw ConditionViolated(stage, j, "basis element " + std::to_string(i) + " also occurs in the image of " +
                                                      std::to_string(*owner[i]));
            owner[i] = j;
        }
}

} // namespace detail

inline FreeColimitBasis free_colimit_basis(const Telescope& t, std::size_t kmax = default_kmax())
{
    const std::size_t m = t.prefix_length();
    for (std::size_t k = 0; k < m; ++k)
        if (!t.stage(k).is_free()) throw NotFree("stage " + std::to_string(k) + " is " + t.stage(k).str());
    if (t.tail() && !t.tail()->group.is_free()) throw NotFree("tail group is " + t.tail()->group.str());
    for (std::size_t k = 0; k + 1 < m; ++k) detail::check_basis_condition(t.maps()[k], k);
    if (t.tail()) {
        if (t.tail()->glue) detail::check_basis_condition(*t.tail()->glue, m - 1);
        detail::check_basis_condition(t.tail()->endo, m);
    }

    const ColimOutcome c = colim(t, kmax);
    if (!c.exact) throw CertificateFailure("colimit " + c.symbol + " could not be computed exactly");
    FreeColimitBasis out;
    out.colimit = *c.group;
    if (t.is_finite()) {
        out.basis = IntMatrix::identity(out.colimit.generator_count());
        out.certificate = "finite telescope: the basis of the last stage";
    } else {
        const PresentedGroup& b = t.tail()->group;
        auto ker = detail::stable_kernel(t.tail()->endo, kmax);
        if (!ker) throw CertificateFailure("kernel chain of the tail did not stabilize");
        const Subquotient sq(IntMatrix::identity(b.generator_count()), hconcat(ker->generators, b.relations()));
        out.basis = sq.lifts();
        if (!(c.from_tail->matrix() * out.basis == IntMatrix::identity(out.colimit.generator_count())))
            throw CertificateFailure("basis representatives do not map to the colimit generators");
        out.certificate = "tail modulo its stable kernel, free of rank " + std::to_string(out.colimit.free_rank());
    }
    if (!out.colimit.is_free()) throw CertificateFailure("colimit " + out.colimit.str() + " is not free");
    return out;
}

/// UCT for Kolmogoroff homology along a chain of successively finer
/// partitions: the finite cochains of the nerves form a telescope under
/// pullback, and with suitably oriented bases every map sends basis elements
/// to sums of distinct basis elements.
struct KolmogoroffUctReport {
    std::vector<FreeColimitBasis> bases; // per degree
    std::vector<UctCertificate> certificates;
    std::vector<PresentedGroup> homology; // Kolmogoroff homology of the finest partition
    bool agree = false;
};

inline KolmogoroffUctReport kolmogoroff_uct_check(const FiniteModel& model, const std::vector<Partition>& chain,
                                                  const PresentedGroup& g)
{
    if (chain.empty()) throw InputError("need at least one partition");
    std::vector<RefinementMap> steps;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) steps.emplace_back(model, chain[k + 1], chain[k]);
    std::vector<NerveComplex> nerves;
    for (const auto& p : chain) nerves.emplace_back(model, p);
    int top = 0;
    for (const auto& n : nerves) top = std::max(top, n.dimension());

    // orientation[k][d][s] is +-1: the sign of simplex s of stage k.
    std::vector<std::vector<std::vector<int>>> orientation(chain.size(), std::vector<std::vector<int>>(top + 1));
    for (int d = 0; d <= top; ++d) orientation[0][d].assign(nerves[0].count(d), 1);
    KolmogoroffUctReport report;
    std::vector<std::vector<GroupMap>> maps(static_cast<std::size_t>(top) + 1);
    for (std::size_t k = 0; k < steps.size(); ++k)
        for (int d = 0; d <= top; ++d) {
            const IntMatrix q = steps[k].cochain_pullback(d); // fine x coarse
            auto& sign = orientation[k + 1][d];
            sign.assign(q.rows(), 1);
            IntMatrix signed_q(q.rows(), q.cols());
            for (std::size_t i = 0; i < q.rows(); ++i)
                for (std::size_t j = 0; j < q.cols(); ++j)
                    if (q(i, j) != 0) {
                        sign[i] = q(i, j) * orientation[k][d][j] > 0 ? 1 : -1;
                        signed_q(i, j) = 1;
                    }
            maps[d].emplace_back(PresentedGroup::free(q.cols()), PresentedGroup::free(q.rows()), std::move(signed_q));
        }

    for (int d = 0; d <= top; ++d) {
        std::vector<PresentedGroup> groups;
        for (const auto& n : nerves) groups.push_back(PresentedGroup::free(n.count(d)));
        report.bases.push_back(free_colimit_basis(Telescope(groups, maps[d])));
    }

    const NerveComplex& finest = nerves.back();
    const auto& sign = orientation.back();
    std::vector<std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int d = 0; d <= finest.dimension(); ++d) {
        ranks.push_back(finest.count(d));
        if (d == finest.dimension()) continue;
        IntMatrix delta = finest.boundary(d + 1).transposed();
        for (std::size_t i = 0; i < delta.rows(); ++i)
            for (std::size_t j = 0; j < delta.cols(); ++j) delta(i, j) *= sign[d + 1][i] * sign[d][j];
        diffs[d] = std::move(delta);
    }
    const FreeComplex cochains(Direction::Cochain, 0, ranks, diffs);
    report.agree = true;
    for (int d = 0; d <= finest.dimension(); ++d) {
        report.certificates.push_back(uct_certificate(cochains, g, d));
        report.homology.push_back(kolmogoroff_homology(model, chain.back(), g, d));
        report.agree = report.agree && report.certificates.back().middle == report.homology.back();
    }
    return report;
}

} // namespace taut
