#pragma once

#include "taut/hom_ext.hpp"

#include <map>
#include <string>
#include <vector>

namespace taut {

enum class Direction { Chain, Cochain };

inline std::string to_string(Direction d) { return d == Direction::Chain ? "chain" : "cochain"; }

/// A bounded complex of free abelian groups Z^{r_d}, lo <= d <= hi.
///
/// Differentials are keyed by their source degree. For a chain complex the
/// map at d goes C_d -> C_{d-1}; for a cochain complex C^d -> C^{d+1}. Missing
/// differentials are zero. Degrees outside [lo, hi] have rank 0.
class FreeComplex {
public:
    FreeComplex() = default;

    FreeComplex(Direction direction, int lo, std::vector<std::size_t> ranks, std::map<int, IntMatrix> diffs = {})
        : direction_(direction), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs))
    {
        for (auto it = diffs_.begin(); it != diffs_.end();) {
            const int d = it->first;
            const IntMatrix& m = it->second;
            if (m.rows() != rank(target_degree(d)) || m.cols() != rank(d))
                throw NotAComplex("differential at degree " + std::to_string(d) + " is " + std::to_string(m.rows()) +
                                  "x" + std::to_string(m.cols()) + ", expected " +
                                  std::to_string(rank(target_degree(d))) + "x" + std::to_string(rank(d)));
            if (m.rows() == 0 || m.cols() == 0) it = diffs_.erase(it);
            else ++it;
        }
        for (const auto& [d, m] : diffs_) {
            auto next = diffs_.find(target_degree(d));
            if (next != diffs_.end() && !(next->second * m).is_zero())
                throw NotAComplex("differentials at degrees " + std::to_string(d) + " and " +
                                  std::to_string(target_degree(d)) + " do not compose to zero");
        }
    }

    Direction direction() const noexcept { return direction_; }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    bool in_range(int d) const noexcept { return d >= lo_ && d <= hi(); }

    std::size_t rank(int d) const { return in_range(d) ? ranks_[static_cast<std::size_t>(d - lo_)] : 0; }

    int target_degree(int d) const noexcept { return direction_ == Direction::Chain ? d - 1 : d + 1; }
    int source_degree(int d) const noexcept { return direction_ == Direction::Chain ? d + 1 : d - 1; }

    /// The differential leaving degree d.
    IntMatrix differential(int d) const
    {
        auto it = diffs_.find(d);
        if (it != diffs_.end()) return it->second;
        return IntMatrix(rank(target_degree(d)), rank(d));
    }

    /// The differential arriving at degree d.
    IntMatrix incoming(int d) const { return differential(source_degree(d)); }

    const std::map<int, IntMatrix>& differentials() const noexcept { return diffs_; }

private:
    Direction direction_ = Direction::Chain;
    int lo_ = 0;
    std::vector<std::size_t> ranks_;
    std::map<int, IntMatrix> diffs_;
};

/// (Co)cycles modulo (co)boundaries at degree d, with generator lifts.
inline Subquotient homology_subquotient(const FreeComplex& c, int d)
{
    if (!c.in_range(d))
        throw DegreeOutOfRange("degree " + std::to_string(d) + " outside [" + std::to_string(c.lo()) + ", " +
                               std::to_string(c.hi()) + "]");
    return Subquotient(kernel_basis(c.differential(d)), c.incoming(d));
}

inline PresentedGroup homology(const FreeComplex& c, int d)
{
    if (!c.in_range(d)) return PresentedGroup{};
    return homology_subquotient(c, d).group();
}

/// A complex of finitely presented groups. Degree d carries a raw presentation
/// (generators = rows of its relation matrix); differentials act on generator
/// coordinates and must respect the relations.
class CoefficientComplex {
public:
    CoefficientComplex() = default;

    CoefficientComplex(Direction direction, int lo, std::vector<IntMatrix> relations, std::map<int, IntMatrix> diffs)
        : direction_(direction), lo_(lo), relations_(std::move(relations)), diffs_(std::move(diffs))
    {
    }

    Direction direction() const noexcept { return direction_; }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + static_cast<int>(relations_.size()) - 1; }
    bool in_range(int d) const noexcept { return d >= lo_ && d <= hi(); }
    int target_degree(int d) const noexcept { return direction_ == Direction::Chain ? d - 1 : d + 1; }
    int source_degree(int d) const noexcept { return direction_ == Direction::Chain ? d + 1 : d - 1; }

    std::size_t generator_count(int d) const { return in_range(d) ? relations(d).rows() : 0; }

    IntMatrix relations(int d) const
    {
        if (!in_range(d)) return {};
        return relations_[static_cast<std::size_t>(d - lo_)];
    }

    IntMatrix differential(int d) const
    {
        auto it = diffs_.find(d);
        if (it != diffs_.end()) return it->second;
        return IntMatrix(generator_count(target_degree(d)), generator_count(d));
    }

    /// The group at degree d in canonical form.
    PresentedGroup group(int d) const { return normalize(relations(d)); }

    /// Cycles: kernel of the outgoing differential, as a subgroup of the
    /// generator lattice (relations included).
    IntMatrix cycle_generators(int d) const
    {
        const int t = target_degree(d);
        IntMatrix target_rel = in_range(t) ? relations(t) : IntMatrix(0, 0);
        return preimage_generators(differential(d), target_rel);
    }

    Subquotient homology_subquotient(int d) const
    {
        if (!in_range(d)) throw DegreeOutOfRange("degree " + std::to_string(d) + " out of range");
        return Subquotient(cycle_generators(d), hconcat(differential(source_degree(d)), relations(d)));
    }

    PresentedGroup homology(int d) const { return homology_subquotient(d).group(); }

private:
    Direction direction_ = Direction::Chain;
    int lo_ = 0;
    std::vector<IntMatrix> relations_;
    std::map<int, IntMatrix> diffs_;
};

/// Hom(C, G). Degree d holds Hom(Z^{r_d}, G) = G^{r_d}, a homomorphism stored
/// as the concatenation of the images of the basis elements (one block of
/// generator_count(G) coordinates per basis element). The direction flips and
/// the differential is (d f)(x) = f(d x) with no extra sign.
inline CoefficientComplex dualize(const FreeComplex& c, const PresentedGroup& g)
{
    const std::size_t ng = g.generator_count();
    const IntMatrix rel_g = g.relations();
    std::vector<IntMatrix> relations;
    for (int d = c.lo(); d <= c.hi(); ++d)
        relations.push_back(block_diagonal(std::vector<IntMatrix>(c.rank(d), rel_g)));
    for (std::size_t i = 0; i < relations.size(); ++i)
        if (relations[i].rows() != c.rank(c.lo() + static_cast<int>(i)) * ng)
            relations[i] = IntMatrix(c.rank(c.lo() + static_cast<int>(i)) * ng, 0);

    std::map<int, IntMatrix> diffs;
    for (const auto& [d, m] : c.differentials())
        diffs[c.target_degree(d)] = kronecker(m.transposed(), IntMatrix::identity(ng));
    const Direction flipped = c.direction() == Direction::Chain ? Direction::Cochain : Direction::Chain;
    return {flipped, c.lo(), std::move(relations), std::move(diffs)};
}

inline constexpr const char* sign_convention = "(d f)(x) = f(d x), no extra sign";

namespace detail {

// Basis-block vector of a homomorphism Z^r -> G given as an (ng x r) matrix.
inline Vector flatten_blocks(const IntMatrix& hom)
{
    Vector v;
    v.reserve(hom.rows() * hom.cols());
    for (std::size_t k = 0; k < hom.cols(); ++k)
        for (std::size_t i = 0; i < hom.rows(); ++i) v.push_back(hom(i, k));
    return v;
}

inline IntMatrix unflatten_blocks(const Vector& v, std::size_t ng)
{
    const std::size_t r = ng == 0 ? 0 : v.size() / ng;
    IntMatrix hom(ng, r);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < ng; ++i) hom(i, k) = v[k * ng + i];
    return hom;
}

} // namespace detail

/// The split short exact sequence
///   0 -> Ext(H^{n+1}(C), G) -> H_n(Hom(C, G)) -> Hom(H^n(C), G) -> 0
/// with explicit maps and a splitting, all verified.
struct UctCertificate {
    int degree = 0;
    PresentedGroup cohomology;      // H^n(C)
    PresentedGroup next_cohomology; // H^{n+1}(C)
    PresentedGroup ext_term;
    PresentedGroup hom_term;
    PresentedGroup middle;
    GroupMap injection;
    GroupMap surjection;
    GroupMap splitting;
};

inline UctCertificate uct_certificate(const FreeComplex& c, const PresentedGroup& g, int n)
{
    if (c.direction() != Direction::Cochain) throw NotAComplex("universal coefficient check expects a cochain complex");
    if (!c.in_range(n))
        throw DegreeOutOfRange("degree " + std::to_string(n) + " outside [" + std::to_string(c.lo()) + ", " +
                               std::to_string(c.hi()) + "]");
    const std::size_t ng = g.generator_count();
    const std::size_t rn = c.rank(n);

    const Subquotient hn = homology_subquotient(c, n);
    const Subquotient hn1 = c.in_range(n + 1) ? homology_subquotient(c, n + 1) : Subquotient(IntMatrix(0, 0), IntMatrix(0, 0));
    const CoefficientComplex dual = dualize(c, g);
    const Subquotient mid = dual.homology_subquotient(n);

    const HomGroup hom(hn.group(), g);
    const ExtGroup ext(hn1.group(), g);

    UctCertificate cert;
    cert.degree = n;
    cert.cohomology = hn.group();
    cert.next_cohomology = hn1.group();
    cert.hom_term = hom.group();
    cert.ext_term = ext.group();
    cert.middle = mid.group();

    auto middle_coordinates = [&](const IntMatrix& phi) {
        auto x = mid.coordinates(detail::flatten_blocks(phi));
        if (!x) throw CertificateFailure("constructed homomorphism is not a cycle of Hom(C, G)");
        return *x;
    };

    // Restriction of a cycle to the cocycle representatives of H^n.
    IntMatrix surj(hom.group().generator_count(), mid.group().generator_count());
    for (std::size_t t = 0; t < mid.group().generator_count(); ++t) {
        IntMatrix phi = detail::unflatten_blocks(mid.lifts().column(t), ng);
        if (phi.cols() != rn) phi = IntMatrix(ng, rn);
        surj.set_column(t, hom.encode(phi * hn.lifts()));
    }
    cert.surjection = GroupMap(mid.group(), hom.group(), std::move(surj));

    // An extension class, as values psi on the relations of H^{n+1}, becomes
    // the cycle e_l -> sum_t beta_t psi_t where delta^n e_l = sum_t beta_t d_t g_t.
    const IntMatrix delta = c.differential(n);
    const std::size_t free_next = hn1.group().free_rank();
    std::vector<Vector> beta(rn);
    for (std::size_t l = 0; l < rn; ++l) {
        auto b = hn1.relation_coefficients(delta.column(l));
        if (!b) throw CertificateFailure("coboundary is not a relation of the next cohomology group");
        beta[l] = std::move(*b);
    }
    IntMatrix inj(mid.group().generator_count(), ext.group().generator_count());
    for (std::size_t t = 0; t < ext.group().generator_count(); ++t) {
        IntMatrix psi = ext.decode(ext.group().generator(t));
        IntMatrix phi(ng, rn);
        for (std::size_t l = 0; l < rn; ++l)
            for (std::size_t k = 0; k < psi.cols(); ++k) {
                const Integer& coeff = beta[l][free_next + k];
                if (coeff == 0) continue;
                for (std::size_t i = 0; i < ng; ++i) phi(i, l) += coeff * psi(i, k);
            }
        inj.set_column(t, middle_coordinates(phi));
    }
    cert.injection = GroupMap(ext.group(), mid.group(), std::move(inj));

    // Splitting: chi -> chi o q o p with p : C^n -> Z^n the retraction read off
    // the Smith form of delta^n and q : Z^n -> H^n the quotient.
    const SmithForm s = smith_normal_form(delta);
    std::vector<Vector> class_of_basis(rn);
    for (std::size_t l = 0; l < rn; ++l) {
        Vector y = s.v_inverse.column(l);
        Vector p(rn);
        for (std::size_t j = s.rank; j < rn; ++j)
            for (std::size_t row = 0; row < rn; ++row) p[row] += s.v(row, j) * y[j];
        class_of_basis[l] = hn.coordinates_or_throw(p);
    }
    IntMatrix split(mid.group().generator_count(), hom.group().generator_count());
    for (std::size_t t = 0; t < hom.group().generator_count(); ++t) {
        IntMatrix chi = hom.decode(hom.group().generator(t));
        IntMatrix phi(ng, rn);
        for (std::size_t l = 0; l < rn; ++l) {
            Vector value = chi * class_of_basis[l];
            for (std::size_t i = 0; i < ng; ++i) phi(i, l) = value[i];
        }
        split.set_column(t, middle_coordinates(phi));
    }
    cert.splitting = GroupMap(hom.group(), mid.group(), std::move(split));

    const std::string where = " (degree " + std::to_string(n) + ")";
    if (!compose(cert.surjection, cert.injection).is_zero())
        throw CertificateFailure("surjection after injection is not zero" + where);
    if (!is_injective(cert.injection)) throw CertificateFailure("Ext-term map is not injective" + where);
    if (!is_surjective(cert.surjection)) throw CertificateFailure("Hom-term map is not surjective" + where);
    if (auto v = exactness_violation(cert.injection, cert.surjection))
        throw CertificateFailure("not exact at the middle term: " + *v + where);
    if (!(compose(cert.surjection, cert.splitting) == GroupMap::identity(cert.hom_term)))
        throw CertificateFailure("splitting is not a section" + where);
    return cert;
}

/// 0 -> Hom(B^{n+1}, G) -> Z_n -> Hom(H^n, G) -> 0 for a free cochain
/// complex, where Z_n are the cycles of Hom(C, G) in degree n and B^{n+1} the
/// coboundaries.
struct CycleBoundaryData {
    int degree = 0;
    PresentedGroup boundaries;     // B^{n+1}, free
    PresentedGroup boundary_hom;   // Hom(B^{n+1}, G)
    PresentedGroup cycles;         // Z_n
    PresentedGroup cohomology_hom; // Hom(H^n, G)
    GroupMap inclusion;
    GroupMap restriction;
};

inline CycleBoundaryData cycle_boundary_sequence(const FreeComplex& c, const PresentedGroup& g, int n)
{
    if (c.direction() != Direction::Cochain) throw NotAComplex("cycle/boundary sequence expects a cochain complex");
    if (!c.in_range(n)) throw DegreeOutOfRange("degree " + std::to_string(n) + " out of range");
    const std::size_t ng = g.generator_count();
    const std::size_t rn = c.rank(n);
    const IntMatrix delta = c.differential(n);
    const Lattice b(delta);
    const CoefficientComplex dual = dualize(c, g);
    const Subquotient z(dual.cycle_generators(n), dual.relations(n));
    const Subquotient hn = homology_subquotient(c, n);
    const HomGroup hom_b(PresentedGroup::free(b.rank()), g);
    const HomGroup hom_h(hn.group(), g);

    CycleBoundaryData out;
    out.degree = n;
    out.boundaries = PresentedGroup::free(b.rank());
    out.boundary_hom = hom_b.group();
    out.cycles = z.group();
    out.cohomology_hom = hom_h.group();

    std::vector<Vector> coords(rn);
    for (std::size_t l = 0; l < rn; ++l) coords[l] = *b.coordinates(delta.column(l));

    IntMatrix inc(z.group().generator_count(), hom_b.group().generator_count());
    for (std::size_t t = 0; t < hom_b.group().generator_count(); ++t) {
        IntMatrix psi = hom_b.decode(hom_b.group().generator(t));
        IntMatrix phi(ng, rn);
        for (std::size_t l = 0; l < rn; ++l) {
            Vector value = psi * coords[l];
            for (std::size_t i = 0; i < ng; ++i) phi(i, l) = value[i];
        }
        auto x = z.coordinates(detail::flatten_blocks(phi));
        if (!x) throw CertificateFailure("pulled-back homomorphism is not a cycle");
        inc.set_column(t, *x);
    }
    out.inclusion = GroupMap(hom_b.group(), z.group(), std::move(inc));

    IntMatrix res(hom_h.group().generator_count(), z.group().generator_count());
    for (std::size_t t = 0; t < z.group().generator_count(); ++t) {
        IntMatrix phi = detail::unflatten_blocks(z.lifts().column(t), ng);
        if (phi.cols() != rn) phi = IntMatrix(ng, rn);
        res.set_column(t, hom_h.encode(phi * hn.lifts()));
    }
    out.restriction = GroupMap(z.group(), hom_h.group(), std::move(res));

    const std::string where = " (degree " + std::to_string(n) + ")";
    if (!is_injective(out.inclusion)) throw CertificateFailure("Hom(B, G) -> Z is not injective" + where);
    if (!is_surjective(out.restriction)) throw CertificateFailure("Z -> Hom(H, G) is not surjective" + where);
    if (auto v = exactness_violation(out.inclusion, out.restriction))
        throw CertificateFailure("cycle sequence not exact: " + *v + where);
    return out;
}

} // namespace taut
