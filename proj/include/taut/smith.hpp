#pragma once

#include "taut/int_matrix.hpp"

#include <algorithm>
#include <optional>

namespace taut {

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dr,
/// all di > 0, followed by zeros. The inverses of U and V are tracked
/// alongside so callers can move between bases without re-inverting.
struct SmithForm {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    IntMatrix u_inverse;
    IntMatrix v_inverse;
    std::size_t rank = 0;

    /// Nonzero diagonal entries, in order.
    Vector invariants() const
    {
        Vector out;
        out.reserve(rank);
        for (std::size_t i = 0; i < rank; ++i) out.push_back(d(i, i));
        return out;
    }
};

namespace detail {

// Smallest nonzero |entry| in the trailing block, first in row-major order.
inline std::optional<std::pair<std::size_t, std::size_t>> smith_pivot(const IntMatrix& a, std::size_t t)
{
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            const Integer& e = a(i, j);
            if (e == 0) continue;
            Integer m = abs_value(e);
            if (!best || m < best_abs) {
                best = {i, j};
                best_abs = std::move(m);
                if (best_abs == 1) return best;
            }
        }
    return best;
}

} // namespace detail

/// Classical Smith reduction with a deterministic pivot rule: at every step
/// the pivot is the smallest-magnitude nonzero entry of the trailing block,
/// ties broken in row-major order.
inline SmithForm smith_normal_form(const IntMatrix& m)
{
    SmithForm s;
    IntMatrix& a = s.d;
    a = m;
    s.u = IntMatrix::identity(m.rows());
    s.u_inverse = IntMatrix::identity(m.rows());
    s.v = IntMatrix::identity(m.cols());
    s.v_inverse = IntMatrix::identity(m.cols());

    auto swap_rows = [&](std::size_t x, std::size_t y) {
        a.swap_rows(x, y);
        s.u.swap_rows(x, y);
        s.u_inverse.swap_cols(x, y);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        a.swap_cols(x, y);
        s.v.swap_cols(x, y);
        s.v_inverse.swap_rows(x, y);
    };
    // row[target] += q * row[source]
    auto add_row = [&](std::size_t target, std::size_t source, const Integer& q) {
        a.add_row_multiple(target, source, q);
        s.u.add_row_multiple(target, source, q);
        s.u_inverse.add_col_multiple(source, target, -q);
    };
    // col[target] += q * col[source]
    auto add_col = [&](std::size_t target, std::size_t source, const Integer& q) {
        a.add_col_multiple(target, source, q);
        s.v.add_col_multiple(target, source, q);
        s.v_inverse.add_row_multiple(source, target, -q);
    };

    const std::size_t limit = std::min(m.rows(), m.cols());
    std::size_t t = 0;
    for (; t < limit; ++t) {
        for (;;) {
            auto pivot = detail::smith_pivot(a, t);
            if (!pivot) break;
            swap_rows(t, pivot->first);
            swap_cols(t, pivot->second);

            bool clean = true;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0) continue;
                Integer q = a(i, t) / a(t, t);
                add_row(i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0) continue;
                Integer q = a(t, j) / a(t, t);
                add_col(j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            bool divides = true;
            for (std::size_t i = t + 1; i < a.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < a.cols(); ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a(t, t) == 0) break;
        if (a(t, t) < 0) {
            a.negate_row(t);
            s.u.negate_row(t);
            s.u_inverse.negate_col(t);
        }
    }
    s.rank = t;
    return s;
}

} // namespace taut
