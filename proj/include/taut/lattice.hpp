#pragma once

#include "taut/group.hpp"
#include "taut/smith.hpp"

#include <optional>
#include <stdexcept>

namespace taut {

/// Columns spanning the kernel of x ↦ m x over Z. The span is saturated.
inline IntMatrix kernel_basis(const IntMatrix& m)
{
    SmithForm s = smith_normal_form(m);
    return s.v.block(0, m.cols(), s.rank, m.cols());
}

/// Some integer x with m x = b, if one exists.
inline std::optional<Vector> solve_integer(const IntMatrix& m, const Vector& b)
{
    if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: right-hand side length mismatch");
    SmithForm s = smith_normal_form(m);
    Vector y = s.u * b;
    Vector w(m.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < s.rank) {
            if (y[i] % s.d(i, i) != 0) return std::nullopt;
            w[i] = y[i] / s.d(i, i);
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v * w;
}

/// Sublattice of Z^n spanned by the columns of a generator matrix.
class Lattice {
public:
    Lattice() = default;

    explicit Lattice(const IntMatrix& generators) : ambient_(generators.rows())
    {
        SmithForm s = smith_normal_form(generators);
        rank_ = s.rank;
        u_ = std::move(s.u);
        divisors_ = s.invariants();
        basis_ = IntMatrix(ambient_, rank_);
        for (std::size_t i = 0; i < rank_; ++i)
            for (std::size_t r = 0; r < ambient_; ++r) basis_(r, i) = s.u_inverse(r, i) * divisors_[i];
    }

    std::size_t ambient_dimension() const noexcept { return ambient_; }
    std::size_t rank() const noexcept { return rank_; }
    const IntMatrix& basis() const noexcept { return basis_; }

    /// Coordinates of x along basis(), or nullopt when x is not in the lattice.
    std::optional<Vector> coordinates(const Vector& x) const
    {
        if (x.size() != ambient_) throw std::invalid_argument("lattice coordinates: dimension mismatch");
        Vector y = u_ * x;
        Vector c(rank_);
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (i < rank_) {
                if (y[i] % divisors_[i] != 0) return std::nullopt;
                c[i] = y[i] / divisors_[i];
            } else if (y[i] != 0) {
                return std::nullopt;
            }
        }
        return c;
    }

    bool contains(const Vector& x) const { return coordinates(x).has_value(); }

    bool contains(const Lattice& other) const
    {
        for (std::size_t j = 0; j < other.rank(); ++j)
            if (!contains(other.basis().column(j))) return false;
        return true;
    }

private:
    std::size_t ambient_ = 0;
    std::size_t rank_ = 0;
    IntMatrix u_;
    Vector divisors_;
    IntMatrix basis_;
};

/// The group L/N for lattices N ⊆ L ⊆ Z^n, put in invariant-factor form.
///
/// Besides the normalized group this keeps the change of basis, so ambient
/// vectors of L can be converted to canonical coordinates and canonical
/// generators lifted back to Z^n.
class Subquotient {
public:
    Subquotient() = default;

    Subquotient(const IntMatrix& numerator, const IntMatrix& denominator) : numerator_(numerator)
    {
        if (numerator.rows() != denominator.rows()) throw std::invalid_argument("subquotient: ambient mismatch");
        const std::size_t r = numerator_.rank();
        IntMatrix relations(r, denominator.cols());
        for (std::size_t j = 0; j < denominator.cols(); ++j) {
            auto c = numerator_.coordinates(denominator.column(j));
            if (!c) throw std::logic_error("subquotient: denominator is not contained in numerator");
            relations.set_column(j, *c);
        }
        SmithForm s = smith_normal_form(relations);
        change_ = std::move(s.u);
        internal_divisors_ = Vector(r);
        for (std::size_t i = 0; i < s.rank; ++i) internal_divisors_[i] = s.d(i, i);

        Vector torsion;
        for (std::size_t i = s.rank; i < r; ++i) index_.push_back(i);
        for (std::size_t i = 0; i < s.rank; ++i)
            if (internal_divisors_[i] != 1) {
                index_.push_back(i);
                torsion.push_back(internal_divisors_[i]);
            }
        group_ = PresentedGroup(r - s.rank, std::move(torsion));
        group_.set_presentation(relations);

        // Lift of canonical generator k: basis(L) * U^{-1} e_{index[k]}.
        IntMatrix selected(r, index_.size());
        for (std::size_t k = 0; k < index_.size(); ++k)
            for (std::size_t row = 0; row < r; ++row) selected(row, k) = s.u_inverse(row, index_[k]);
        lifts_ = numerator_.basis() * selected;
    }

    const PresentedGroup& group() const noexcept { return group_; }
    const Lattice& numerator() const noexcept { return numerator_; }
    std::size_t ambient_dimension() const noexcept { return numerator_.ambient_dimension(); }

    /// Ambient representatives of the canonical generators, one per column.
    const IntMatrix& lifts() const noexcept { return lifts_; }

    /// Canonical coordinates of the class of x, nullopt when x ∉ L.
    std::optional<Vector> coordinates(const Vector& x) const
    {
        auto c = numerator_.coordinates(x);
        if (!c) return std::nullopt;
        Vector y = change_ * *c;
        Vector out(index_.size());
        for (std::size_t k = 0; k < index_.size(); ++k) out[k] = y[index_[k]];
        return group_.reduce(std::move(out));
    }

    /// Canonical coordinates; throws if x ∉ L.
    Vector coordinates_or_throw(const Vector& x) const
    {
        auto c = coordinates(x);
        if (!c) throw std::logic_error("vector is not in the numerator lattice");
        return *c;
    }

    /// For x in the denominator N, its coefficients along the canonical
    /// relations d_k * g_k (torsion generators) of the quotient. Relations of
    /// order one are dropped and free generators get coefficient zero.
    std::optional<Vector> relation_coefficients(const Vector& x) const
    {
        auto c = numerator_.coordinates(x);
        if (!c) return std::nullopt;
        Vector y = change_ * *c;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const Integer& d = internal_divisors_[i];
            if (d == 0) {
                if (y[i] != 0) return std::nullopt;
            } else if (y[i] % d != 0) {
                return std::nullopt;
            }
        }
        Vector out(index_.size());
        for (std::size_t k = group_.free_rank(); k < index_.size(); ++k)
            out[k] = y[index_[k]] / internal_divisors_[index_[k]];
        return out;
    }

private:
    Lattice numerator_;
    IntMatrix change_;
    Vector internal_divisors_;
    std::vector<std::size_t> index_;
    PresentedGroup group_;
    IntMatrix lifts_;
};

} // namespace taut
