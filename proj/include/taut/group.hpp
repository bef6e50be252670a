#pragma once

#include "taut/error.hpp"
#include "taut/int_matrix.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace taut {

/// A finitely generated abelian group Z^r + Z/d1 + ... + Z/dk in invariant
/// factor form (d1 | d2 | ... | dk, every di >= 2).
///
/// Elements are coordinate vectors on the canonical generators: the r free
/// generators first, then one generator per torsion divisor. Torsion
/// coordinates are kept reduced into [0, di).
class PresentedGroup {
public:
    PresentedGroup() = default;

    PresentedGroup(std::size_t free_rank, Vector torsion) : free_rank_(free_rank), torsion_(std::move(torsion))
    {
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            if (torsion_[i] < 2) throw InputError("torsion divisor must be at least 2, got " + to_string(torsion_[i]));
            if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
                throw InputError("torsion divisors must form a divisor chain");
        }
    }

    static PresentedGroup free(std::size_t rank) { return PresentedGroup(rank, {}); }

    /// Z/order; order 0 gives Z and order 1 the trivial group.
    static PresentedGroup cyclic(const Integer& order)
    {
        const Integer n = abs_value(order);
        if (n == 0) return free(1);
        if (n == 1) return {};
        return PresentedGroup(0, {n});
    }

    std::size_t free_rank() const noexcept { return free_rank_; }
    const Vector& torsion() const& noexcept { return torsion_; }
    Vector torsion() && noexcept { return std::move(torsion_); }
    std::size_t generator_count() const noexcept { return free_rank_ + torsion_.size(); }
    bool is_trivial() const noexcept { return generator_count() == 0; }
    bool is_finite() const noexcept { return free_rank_ == 0; }
    bool is_free() const noexcept { return torsion_.empty(); }

    /// Order of canonical generator i, 0 for free generators.
    Integer generator_order(std::size_t i) const { return i < free_rank_ ? Integer(0) : torsion_[i - free_rank_]; }

    /// |G| for finite groups.
    Integer order() const
    {
        if (!is_finite()) throw InputError("order of an infinite group");
        Integer n = 1;
        for (const auto& d : torsion_) n *= d;
        return n;
    }

    /// Number of elements killed by m (finite groups, m > 0).
    Integer count_killed_by(const Integer& m) const
    {
        Integer n = 1;
        for (const auto& d : torsion_) n *= gcd(d, m);
        return n;
    }

    /// Columns are the relations d_i * t_i of the canonical presentation.
    IntMatrix relations() const
    {
        IntMatrix r(generator_count(), torsion_.size());
        for (std::size_t i = 0; i < torsion_.size(); ++i) r(free_rank_ + i, i) = torsion_[i];
        return r;
    }

    Vector zero() const { return Vector(generator_count()); }

    Vector generator(std::size_t i) const
    {
        Vector v = zero();
        v.at(i) = 1;
        return v;
    }

    Vector reduce(Vector v) const
    {
        if (v.size() != generator_count()) throw InputError("element has wrong number of coordinates");
        for (std::size_t i = 0; i < torsion_.size(); ++i) v[free_rank_ + i] = floor_mod(v[free_rank_ + i], torsion_[i]);
        return v;
    }

    bool is_zero(const Vector& v) const { return is_zero_vector(reduce(v)); }

    Vector add(const Vector& a, const Vector& b) const
    {
        Vector c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
        return reduce(std::move(c));
    }

    /// Canonical text form, e.g. "Z^2 + Z/2 + Z/4"; the trivial group is "0".
    std::string str() const
    {
        std::string s;
        auto append = [&s](const std::string& part) {
            if (!s.empty()) s += " + ";
            s += part;
        };
        if (free_rank_ == 1) append("Z");
        else if (free_rank_ > 1) append("Z^" + std::to_string(free_rank_));
        for (const auto& d : torsion_) append("Z/" + to_string(d));
        return s.empty() ? "0" : s;
    }

    const std::optional<IntMatrix>& presentation() const noexcept { return presentation_; }
    void set_presentation(IntMatrix p) { presentation_ = std::move(p); }

    /// Isomorphism type only; provenance is ignored.
    friend bool operator==(const PresentedGroup& a, const PresentedGroup& b)
    {
        return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
    }

private:
    std::size_t free_rank_ = 0;
    Vector torsion_;
    std::optional<IntMatrix> presentation_;
};

/// Homomorphism between groups in canonical form; column j is the image of
/// source generator j. Rows of torsion target generators are kept reduced.
class GroupMap {
public:
    GroupMap() = default;

    GroupMap(PresentedGroup source, PresentedGroup target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
    {
        if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
            throw IllFormedMap("map matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                               ", expected " + std::to_string(target_.generator_count()) + "x" +
                               std::to_string(source_.generator_count()));
        for (std::size_t j = 0; j < matrix_.cols(); ++j) matrix_.set_column(j, target_.reduce(matrix_.column(j)));
        // Each source relation d*t_j must land in the target relations.
        for (std::size_t k = 0; k < source_.torsion().size(); ++k) {
            const std::size_t j = source_.free_rank() + k;
            Vector image = matrix_.column(j);
            for (auto& x : image) x *= source_.torsion()[k];
            if (!target_.is_zero(image))
                throw IllFormedMap("generator " + std::to_string(j) + " of order " + to_string(source_.torsion()[k]) +
                                   " maps to an element of different order");
        }
    }

    static GroupMap identity(const PresentedGroup& g) { return {g, g, IntMatrix::identity(g.generator_count())}; }

    static GroupMap zero(const PresentedGroup& source, const PresentedGroup& target)
    {
        return {source, target, IntMatrix(target.generator_count(), source.generator_count())};
    }

    const PresentedGroup& source() const noexcept { return source_; }
    const PresentedGroup& target() const noexcept { return target_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    Vector apply(const Vector& x) const { return target_.reduce(matrix_ * x); }

    bool is_zero() const { return matrix_.is_zero(); }

    friend bool operator==(const GroupMap& a, const GroupMap& b)
    {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
    }

private:
    PresentedGroup source_;
    PresentedGroup target_;
    IntMatrix matrix_;
};

/// after ∘ before.
inline GroupMap compose(const GroupMap& after, const GroupMap& before)
{
    if (!(before.target() == after.source())) throw IllFormedMap("composition of maps with mismatched groups");
    return {before.source(), after.target(), after.matrix() * before.matrix()};
}

} // namespace taut
