#pragma once

#include "taut/group_ops.hpp"

namespace taut {

/// Z/o1 + Z/o2 + ... (order 0 meaning Z) in canonical form, with the
/// isomorphism to and from raw per-summand coordinates.
class CyclicSum {
public:
    CyclicSum() = default;

    explicit CyclicSum(Vector orders) : orders_(std::move(orders))
    {
        quotient_ = Subquotient(IntMatrix::identity(orders_.size()), IntMatrix::diagonal(orders_));
    }

    const PresentedGroup& group() const noexcept { return quotient_.group(); }
    const Vector& orders() const noexcept { return orders_; }

    Vector encode(const Vector& raw) const { return quotient_.coordinates_or_throw(raw); }

    /// Raw representative of a canonical element, each summand reduced.
    Vector decode(const Vector& element) const
    {
        Vector raw = quotient_.lifts() * element;
        for (std::size_t i = 0; i < raw.size(); ++i)
            if (orders_[i] != 0) raw[i] = floor_mod(raw[i], orders_[i]);
        return raw;
    }

private:
    Vector orders_;
    Subquotient quotient_;
};

/// Hom(A, G) = G^r + sum_i G[d_i] for A = Z^r + sum_i Z/d_i.
///
/// A homomorphism is carried as a matrix with one column per generator of A
/// holding its image in G.
class HomGroup {
public:
    HomGroup(PresentedGroup source, PresentedGroup coefficients)
        : source_(std::move(source)), coefficients_(std::move(coefficients))
    {
        const auto& a = source_;
        const auto& g = coefficients_;
        Vector orders;
        for (std::size_t col = 0; col < a.generator_count(); ++col) {
            const Integer a_order = a.generator_order(col);
            for (std::size_t row = 0; row < g.generator_count(); ++row) {
                const Integer g_order = g.generator_order(row);
                if (a_order == 0) {
                    slots_.push_back({row, col, 1});
                    orders.push_back(g_order);
                } else if (g_order != 0) {
                    Integer c = gcd(a_order, g_order);
                    if (c == 1) continue;
                    slots_.push_back({row, col, g_order / c});
                    orders.push_back(c);
                }
            }
        }
        sum_ = CyclicSum(std::move(orders));
    }

    const PresentedGroup& group() const noexcept { return sum_.group(); }
    const PresentedGroup& source() const noexcept { return source_; }
    const PresentedGroup& coefficients() const noexcept { return coefficients_; }

    Vector encode(const IntMatrix& hom) const
    {
        if (hom.rows() != coefficients_.generator_count() || hom.cols() != source_.generator_count())
            throw IllFormedMap("homomorphism matrix has the wrong shape");
        IntMatrix reduced(hom.rows(), hom.cols());
        for (std::size_t j = 0; j < hom.cols(); ++j) reduced.set_column(j, coefficients_.reduce(hom.column(j)));
        // Torsion generators of A cannot reach free generators of G.
        for (std::size_t col = source_.free_rank(); col < source_.generator_count(); ++col)
            for (std::size_t row = 0; row < coefficients_.free_rank(); ++row)
                if (reduced(row, col) != 0) throw IllFormedMap("torsion generator mapped to a free element");
        Vector raw;
        raw.reserve(slots_.size());
        for (const auto& s : slots_) {
            const Integer& v = reduced(s.row, s.col);
            if (v % s.scale != 0) throw IllFormedMap("matrix does not define a homomorphism");
            raw.push_back(v / s.scale);
        }
        return sum_.encode(raw);
    }

    IntMatrix decode(const Vector& element) const
    {
        Vector raw = sum_.decode(element);
        IntMatrix hom(coefficients_.generator_count(), source_.generator_count());
        for (std::size_t k = 0; k < slots_.size(); ++k) hom(slots_[k].row, slots_[k].col) = raw[k] * slots_[k].scale;
        for (std::size_t j = 0; j < hom.cols(); ++j) hom.set_column(j, coefficients_.reduce(hom.column(j)));
        return hom;
    }

private:
    struct Slot {
        std::size_t row;
        std::size_t col;
        Integer scale;
    };

    PresentedGroup source_;
    PresentedGroup coefficients_;
    std::vector<Slot> slots_;
    CyclicSum sum_;
};

/// Ext(A, G) = sum_i G / d_i G for A = Z^r + sum_i Z/d_i.
///
/// An extension class is carried as a matrix with one column per torsion
/// relation d_i t_i of A, holding the value assigned to that relation.
class ExtGroup {
public:
    ExtGroup(PresentedGroup source, PresentedGroup coefficients)
        : source_(std::move(source)), coefficients_(std::move(coefficients))
    {
        Vector orders;
        for (std::size_t rel = 0; rel < source_.torsion().size(); ++rel) {
            const Integer& d = source_.torsion()[rel];
            for (std::size_t row = 0; row < coefficients_.generator_count(); ++row) {
                const Integer g_order = coefficients_.generator_order(row);
                Integer c = g_order == 0 ? d : gcd(d, g_order);
                if (c == 1) continue;
                slots_.push_back({row, rel});
                orders.push_back(c);
            }
        }
        sum_ = CyclicSum(std::move(orders));
    }

    const PresentedGroup& group() const noexcept { return sum_.group(); }
    const PresentedGroup& source() const noexcept { return source_; }
    const PresentedGroup& coefficients() const noexcept { return coefficients_; }

    Vector encode(const IntMatrix& relation_values) const
    {
        if (relation_values.rows() != coefficients_.generator_count() ||
            relation_values.cols() != source_.torsion().size())
            throw IllFormedMap("extension cocycle has the wrong shape");
        Vector raw;
        raw.reserve(slots_.size());
        for (const auto& s : slots_) raw.push_back(relation_values(s.row, s.rel));
        return sum_.encode(raw);
    }

    IntMatrix decode(const Vector& element) const
    {
        Vector raw = sum_.decode(element);
        IntMatrix values(coefficients_.generator_count(), source_.torsion().size());
        for (std::size_t k = 0; k < slots_.size(); ++k) values(slots_[k].row, slots_[k].rel) = raw[k];
        return values;
    }

private:
    struct Slot {
        std::size_t row;
        std::size_t rel;
    };

    PresentedGroup source_;
    PresentedGroup coefficients_;
    std::vector<Slot> slots_;
    CyclicSum sum_;
};

/// Hom(A, G) in invariant-factor form.
inline PresentedGroup hom_group(const PresentedGroup& a, const PresentedGroup& g)
{
    Vector orders;
    for (std::size_t i = 0; i < a.free_rank(); ++i)
        for (std::size_t row = 0; row < g.generator_count(); ++row) orders.push_back(g.generator_order(row));
    for (const auto& d : a.torsion())
        for (const auto& e : g.torsion()) orders.push_back(gcd(d, e));
    return from_cyclic_orders(orders);
}

/// Ext(A, G) in invariant-factor form.
inline PresentedGroup ext_group(const PresentedGroup& a, const PresentedGroup& g)
{
    Vector orders;
    for (const auto& d : a.torsion()) {
        for (std::size_t i = 0; i < g.free_rank(); ++i) orders.push_back(d);
        for (const auto& e : g.torsion()) orders.push_back(gcd(d, e));
    }
    return from_cyclic_orders(orders);
}

/// Hom(h, G) : Hom(B, G) -> Hom(A, G) for h : A -> B.
inline GroupMap hom_map(const GroupMap& h, const PresentedGroup& g)
{
    HomGroup from(h.target(), g), to(h.source(), g);
    IntMatrix m(to.group().generator_count(), from.group().generator_count());
    for (std::size_t j = 0; j < from.group().generator_count(); ++j)
        m.set_column(j, to.encode(from.decode(from.group().generator(j)) * h.matrix()));
    return {from.group(), to.group(), std::move(m)};
}

/// Ext(h, G) : Ext(B, G) -> Ext(A, G) for h : A -> B.
inline GroupMap ext_map(const GroupMap& h, const PresentedGroup& g)
{
    const auto& a = h.source();
    const auto& b = h.target();
    // Lift of h to the relation modules.
    IntMatrix lifted(b.torsion().size(), a.torsion().size());
    for (std::size_t i = 0; i < a.torsion().size(); ++i)
        for (std::size_t j = 0; j < b.torsion().size(); ++j)
            lifted(j, i) = a.torsion()[i] * h.matrix()(b.free_rank() + j, a.free_rank() + i) / b.torsion()[j];

    ExtGroup from(b, g), to(a, g);
    IntMatrix m(to.group().generator_count(), from.group().generator_count());
    for (std::size_t j = 0; j < from.group().generator_count(); ++j)
        m.set_column(j, to.encode(from.decode(from.group().generator(j)) * lifted));
    return {from.group(), to.group(), std::move(m)};
}

} // namespace taut
