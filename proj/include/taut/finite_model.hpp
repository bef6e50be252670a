#pragma once

#include "taut/chain_complex.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace taut {

using AtomSet = std::vector<std::size_t>; // sorted, duplicate free
using Simplex = std::vector<std::size_t>; // sorted vertex indices

/// A finite space given by its atoms and the abstract simplicial complex K of
/// atom sets whose closures have a common point. K is downward closed and
/// contains every singleton. Only compact models are represented.
class FiniteModel {
public:
    FiniteModel() = default;

    /// Builds K as the downward closure of the given simplices.
    FiniteModel(std::size_t atoms, const std::vector<std::vector<std::size_t>>& maximal) : atoms_(atoms)
    {
        if (atoms == 0) throw MalformedModel("a model needs at least one atom");
        for (std::size_t a = 0; a < atoms; ++a) add_closed({a});
        for (auto s : maximal) {
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw MalformedModel("nerve simplex repeats an atom");
            if (s.empty()) throw MalformedModel("empty nerve simplex");
            if (s.back() >= atoms) throw MalformedModel("nerve simplex mentions atom " + std::to_string(s.back()));
            add_closed(s);
        }
    }

    std::size_t atom_count() const noexcept { return atoms_; }
    const std::set<Simplex>& nerve_oracle() const noexcept { return simplices_; }
    bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }

    /// The closures of the sets meet: some choice a_i in E_i has its
    /// (deduplicated) atom set in K.
    bool meets(const std::vector<AtomSet>& sets) const
    {
        for (const auto& e : sets)
            if (e.empty()) return false;
        std::vector<std::size_t> chosen;
        return meets_from(sets, 0, chosen);
    }

    /// Maximal simplices of K, sorted.
    std::vector<Simplex> maximal_simplices() const
    {
        std::vector<Simplex> out;
        for (const auto& s : simplices_) {
            bool maximal = true;
            for (std::size_t a = 0; a < atoms_ && maximal; ++a) {
                if (std::binary_search(s.begin(), s.end(), a)) continue;
                Simplex t = s;
                t.insert(std::upper_bound(t.begin(), t.end(), a), a);
                if (simplices_.count(t)) maximal = false;
            }
            if (maximal) out.push_back(s);
        }
        return out;
    }

private:
    void add_closed(const Simplex& s)
    {
        if (simplices_.count(s)) return;
        const std::size_t n = s.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t{1} << i)) face.push_back(s[i]);
            simplices_.insert(std::move(face));
        }
    }

    bool meets_from(const std::vector<AtomSet>& sets, std::size_t i, std::vector<std::size_t>& chosen) const
    {
        if (i == sets.size()) {
            Simplex s = chosen;
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            return simplices_.count(s) > 0;
        }
        for (std::size_t a : sets[i]) {
            chosen.push_back(a);
            // Prune as soon as the partial choice leaves K.
            Simplex partial = chosen;
            std::sort(partial.begin(), partial.end());
            partial.erase(std::unique(partial.begin(), partial.end()), partial.end());
            if (simplices_.count(partial) && meets_from(sets, i + 1, chosen)) {
                chosen.pop_back();
                return true;
            }
            chosen.pop_back();
        }
        return false;
    }

    std::size_t atoms_ = 0;
    std::set<Simplex> simplices_;
};

/// Disjoint nonempty blocks covering all atoms of a model.
class Partition {
public:
    Partition() = default;

    Partition(std::vector<AtomSet> blocks, std::size_t atoms) : blocks_(std::move(blocks)), owner_(atoms, npos)
    {
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            auto& block = blocks_[b];
            if (block.empty()) throw MalformedModel("partition block " + std::to_string(b) + " is empty");
            std::sort(block.begin(), block.end());
            for (std::size_t a : block) {
                if (a >= atoms) throw MalformedModel("partition mentions atom " + std::to_string(a));
                if (owner_[a] != npos) throw MalformedModel("atom " + std::to_string(a) + " lies in two blocks");
                owner_[a] = b;
            }
        }
        for (std::size_t a = 0; a < atoms; ++a)
            if (owner_[a] == npos) throw MalformedModel("atom " + std::to_string(a) + " is not covered by the partition");
    }

    static Partition singletons(std::size_t atoms)
    {
        std::vector<AtomSet> blocks;
        for (std::size_t a = 0; a < atoms; ++a) blocks.push_back({a});
        return {std::move(blocks), atoms};
    }

    static Partition whole(std::size_t atoms)
    {
        AtomSet all;
        for (std::size_t a = 0; a < atoms; ++a) all.push_back(a);
        return {{all}, atoms};
    }

    const std::vector<AtomSet>& blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    std::size_t atom_count() const noexcept { return owner_.size(); }
    std::size_t block_of(std::size_t atom) const { return owner_.at(atom); }

    /// Block indices making up a set, or nullopt if it is not a union of blocks.
    std::optional<std::vector<std::size_t>> decompose(const AtomSet& set) const
    {
        std::set<std::size_t> hit;
        for (std::size_t a : set) {
            if (a >= owner_.size()) return std::nullopt;
            hit.insert(owner_[a]);
        }
        std::size_t covered = 0;
        for (std::size_t b : hit) covered += blocks_[b].size();
        std::set<std::size_t> distinct(set.begin(), set.end());
        if (covered != distinct.size()) return std::nullopt;
        return std::vector<std::size_t>(hit.begin(), hit.end());
    }

    /// Every block of this partition lies inside a block of `coarse`.
    bool refines(const Partition& coarse) const
    {
        for (const auto& block : blocks_)
            for (std::size_t a : block)
                if (coarse.block_of(a) != coarse.block_of(block.front())) return false;
        return true;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<AtomSet> blocks_;
    std::vector<std::size_t> owner_;
};

/// The Boolean atoms of a finite set system: for every nonempty index set S,
/// the points lying in exactly the sets indexed by S. Ordered by decreasing
/// |S|, then lexicographically in S.
inline std::vector<AtomSet> mosaic(const std::vector<AtomSet>& sets)
{
    std::map<std::vector<std::size_t>, AtomSet> by_signature;
    std::set<std::size_t> all;
    for (const auto& s : sets) all.insert(s.begin(), s.end());
    for (std::size_t x : all) {
        std::vector<std::size_t> sig;
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (std::find(sets[i].begin(), sets[i].end(), x) != sets[i].end()) sig.push_back(i);
        by_signature[sig].push_back(x);
    }
    std::vector<std::pair<std::vector<std::size_t>, AtomSet>> ordered(by_signature.begin(), by_signature.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
    std::vector<AtomSet> out;
    for (auto& entry : ordered) out.push_back(std::move(entry.second));
    return out;
}

/// O_1, O_2 \ O_1, O_3 \ (O_1 u O_2), ... with empty residues dropped.
inline Partition regularize(const std::vector<AtomSet>& cover, std::size_t atoms)
{
    std::vector<bool> taken(atoms, false);
    std::vector<AtomSet> blocks;
    for (const auto& set : cover) {
        AtomSet residue;
        for (std::size_t a : set) {
            if (a >= atoms) throw NotACover("cover mentions atom " + std::to_string(a));
            if (!taken[a]) {
                taken[a] = true;
                residue.push_back(a);
            }
        }
        std::sort(residue.begin(), residue.end());
        residue.erase(std::unique(residue.begin(), residue.end()), residue.end());
        if (!residue.empty()) blocks.push_back(std::move(residue));
    }
    for (std::size_t a = 0; a < atoms; ++a)
        if (!taken[a]) throw NotACover("atom " + std::to_string(a) + " is not covered");
    return {std::move(blocks), atoms};
}

/// Sign of the permutation sorting `v` (entries distinct).
inline int permutation_sign(std::vector<std::size_t> v)
{
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) sign = -sign;
    return sign;
}

/// The nerve of a partition: block sets that are block images of simplices of
/// K. Simplices are listed per dimension in lexicographic order.
class NerveComplex {
public:
    NerveComplex() = default;

    NerveComplex(const FiniteModel& model, Partition partition) : partition_(std::move(partition))
    {
        std::set<Simplex> images;
        for (const auto& s : model.nerve_oracle()) {
            Simplex image;
            for (std::size_t a : s) image.push_back(partition_.block_of(a));
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            images.insert(std::move(image));
        }
        for (const auto& s : images) {
            const std::size_t d = s.size() - 1;
            if (simplices_.size() <= d) simplices_.resize(d + 1);
            simplices_[d].push_back(s);
        }
        for (auto& level : simplices_) std::sort(level.begin(), level.end());
        index_.resize(simplices_.size());
        for (std::size_t d = 0; d < simplices_.size(); ++d)
            for (std::size_t i = 0; i < simplices_[d].size(); ++i) index_[d][simplices_[d][i]] = i;
    }

    const Partition& partition() const noexcept { return partition_; }
    int dimension() const noexcept { return static_cast<int>(simplices_.size()) - 1; }

    const std::vector<Simplex>& simplices(int d) const
    {
        static const std::vector<Simplex> none;
        if (d < 0 || d > dimension()) return none;
        return simplices_[static_cast<std::size_t>(d)];
    }

    std::size_t count(int d) const { return simplices(d).size(); }

    std::optional<std::size_t> index_of(const Simplex& s) const
    {
        if (s.empty() || s.size() > simplices_.size()) return std::nullopt;
        const auto& m = index_[s.size() - 1];
        auto it = m.find(s);
        if (it == m.end()) return std::nullopt;
        return it->second;
    }

    /// Simplicial boundary C_d -> C_{d-1}, d(v_0..v_d) = sum (-1)^i (.. v_i omitted ..).
    IntMatrix boundary(int d) const
    {
        IntMatrix m(count(d - 1), count(d));
        if (d <= 0) return m;
        for (std::size_t j = 0; j < count(d); ++j) {
            const Simplex& s = simplices(d)[j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                m(*index_of(face), j) = i % 2 == 0 ? 1 : -1;
            }
        }
        return m;
    }

    FreeComplex chain_complex() const
    {
        std::vector<std::size_t> ranks;
        std::map<int, IntMatrix> diffs;
        for (int d = 0; d <= dimension(); ++d) {
            ranks.push_back(count(d));
            if (d > 0) diffs[d] = boundary(d);
        }
        return {Direction::Chain, 0, std::move(ranks), std::move(diffs)};
    }

    /// Finite cochains: delta^d is the transpose of the boundary at d + 1.
    FreeComplex cochain_complex() const
    {
        std::vector<std::size_t> ranks;
        std::map<int, IntMatrix> diffs;
        for (int d = 0; d <= dimension(); ++d) {
            ranks.push_back(count(d));
            if (d < dimension()) diffs[d] = boundary(d + 1).transposed();
        }
        return {Direction::Cochain, 0, std::move(ranks), std::move(diffs)};
    }

private:
    Partition partition_;
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::map<Simplex, std::size_t>> index_;
};

inline NerveComplex nerve(const Partition& p, const FiniteModel& m) { return NerveComplex(m, p); }

namespace presets {

/// A circle as a cycle of n arcs: consecutive atoms touch.
inline FiniteModel arc_circle(std::size_t n)
{
    if (n < 3) throw MalformedModel("arc-circle needs at least 3 atoms");
    std::vector<std::vector<std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return {n, edges};
}

/// Boundary of the octahedron; atoms 0,1 = +-x, 2,3 = +-y, 4,5 = +-z.
inline FiniteModel octahedron()
{
    std::vector<std::vector<std::size_t>> faces;
    for (std::size_t a : {0, 1})
        for (std::size_t b : {2, 3})
            for (std::size_t c : {4, 5}) faces.push_back({a, b, c});
    return {6, faces};
}

/// The minimal six-vertex triangulation of the projective plane.
inline FiniteModel rp2_6vertex()
{
    return {6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}}};
}

inline FiniteModel point() { return {1, {}}; }

/// "arc-circle:n", "octahedron", "rp2-6vertex" or "point".
inline FiniteModel by_name(const std::string& name)
{
    if (name == "octahedron") return octahedron();
    if (name == "rp2-6vertex") return rp2_6vertex();
    if (name == "point") return point();
    const std::string prefix = "arc-circle:";
    if (name.rfind(prefix, 0) == 0) {
        const std::string digits = name.substr(prefix.size());
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6)
            throw InputError("bad arc-circle size in preset '" + name + "'");
        return arc_circle(std::stoul(digits));
    }
    throw InputError("unknown model preset '" + name + "'");
}

} // namespace presets

} // namespace taut
