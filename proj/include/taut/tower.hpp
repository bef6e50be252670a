#pragma once

#include "taut/hom_ext.hpp"

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace taut {

/// Default bound on image/kernel chain searches; TAUT_HOMOLOGY_KMAX overrides.
inline std::size_t default_kmax()
{
    if (const char* env = std::getenv("TAUT_HOMOLOGY_KMAX")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 64;
}

/// A repeating endomorphism f : B -> B glued onto the end of a finite prefix.
/// For a tower the glue goes from B to the last prefix group; for a telescope
/// from the last prefix group to B.
struct PeriodicTail {
    PresentedGroup group;
    GroupMap endo;
    std::optional<GroupMap> glue;
};

/// Inverse system A_0 <- A_1 <- ... <- A_{m-1} <- B <- B <- ...
/// maps[k] : A_{k+1} -> A_k.
class Tower {
public:
    Tower() = default;

    Tower(std::vector<PresentedGroup> groups, std::vector<GroupMap> maps, std::optional<PeriodicTail> tail = {})
        : groups_(std::move(groups)), maps_(std::move(maps)), tail_(std::move(tail))
    {
        if (groups_.empty() && !tail_) throw MalformedTower("tower has no stages");
        if (!groups_.empty() && maps_.size() + 1 != groups_.size())
            throw MalformedTower("a prefix of " + std::to_string(groups_.size()) + " groups needs " +
                                 std::to_string(groups_.size() - 1) + " maps");
        if (groups_.empty() && !maps_.empty()) throw MalformedTower("maps given without groups");
        for (std::size_t k = 0; k < maps_.size(); ++k)
            if (!(maps_[k].source() == groups_[k + 1]) || !(maps_[k].target() == groups_[k]))
                throw MalformedTower("map " + std::to_string(k) + " does not go from stage " + std::to_string(k + 1) +
                                     " to stage " + std::to_string(k));
        if (tail_) {
            if (!(tail_->endo.source() == tail_->group) || !(tail_->endo.target() == tail_->group))
                throw MalformedTower("tail endomorphism is not an endomorphism of the tail group");
            if (!groups_.empty()) {
                if (!tail_->glue) throw MalformedTower("tail needs a glue map onto the last prefix group");
                if (!(tail_->glue->source() == tail_->group) || !(tail_->glue->target() == groups_.back()))
                    throw MalformedTower("glue map does not go from the tail group to the last prefix group");
            } else if (tail_->glue) {
                throw MalformedTower("glue map given without a prefix");
            }
        }
    }

    /// Constant tower (A, f) with no prefix.
    static Tower periodic(const PresentedGroup& a, const GroupMap& f) { return Tower({}, {}, PeriodicTail{a, f, {}}); }

    const std::vector<PresentedGroup>& groups() const noexcept { return groups_; }
    const std::vector<GroupMap>& maps() const noexcept { return maps_; }
    const std::optional<PeriodicTail>& tail() const noexcept { return tail_; }
    bool is_finite() const noexcept { return !tail_; }
    std::size_t prefix_length() const noexcept { return groups_.size(); }

    /// Stage k of the unrolled system.
    const PresentedGroup& stage(std::size_t k) const { return k < groups_.size() ? groups_[k] : tail_->group; }

    /// The connecting map stage(k + 1) -> stage(k).
    GroupMap connecting(std::size_t k) const
    {
        if (k + 1 < groups_.size()) return maps_[k];
        if (!tail_) throw MalformedTower("no stage after the last one of a finite tower");
        if (k + 1 == groups_.size()) return *tail_->glue;
        return tail_->endo;
    }

    /// The composite stage(j) -> stage(k) for j >= k.
    GroupMap composite(std::size_t j, std::size_t k) const
    {
        GroupMap m = GroupMap::identity(stage(j));
        for (std::size_t t = j; t > k; --t) m = compose(connecting(t - 1), m);
        return m;
    }

private:
    std::vector<PresentedGroup> groups_;
    std::vector<GroupMap> maps_;
    std::optional<PeriodicTail> tail_;
};

/// Direct system A_0 -> A_1 -> ... -> A_{m-1} -> B -> B -> ...
/// maps[k] : A_k -> A_{k+1}.
class Telescope {
public:
    Telescope() = default;

    Telescope(std::vector<PresentedGroup> groups, std::vector<GroupMap> maps, std::optional<PeriodicTail> tail = {})
        : groups_(std::move(groups)), maps_(std::move(maps)), tail_(std::move(tail))
    {
        if (groups_.empty() && !tail_) throw MalformedTelescope("telescope has no stages");
        if (!groups_.empty() && maps_.size() + 1 != groups_.size())
            throw MalformedTelescope("a prefix of " + std::to_string(groups_.size()) + " groups needs " +
                                     std::to_string(groups_.size() - 1) + " maps");
        if (groups_.empty() && !maps_.empty()) throw MalformedTelescope("maps given without groups");
        for (std::size_t k = 0; k < maps_.size(); ++k)
            if (!(maps_[k].source() == groups_[k]) || !(maps_[k].target() == groups_[k + 1]))
                throw MalformedTelescope("map " + std::to_string(k) + " does not go from stage " + std::to_string(k) +
                                         " to stage " + std::to_string(k + 1));
        if (tail_) {
            if (!(tail_->endo.source() == tail_->group) || !(tail_->endo.target() == tail_->group))
                throw MalformedTelescope("tail endomorphism is not an endomorphism of the tail group");
            if (!groups_.empty()) {
                if (!tail_->glue) throw MalformedTelescope("tail needs a glue map from the last prefix group");
                if (!(tail_->glue->source() == groups_.back()) || !(tail_->glue->target() == tail_->group))
                    throw MalformedTelescope("glue map does not go from the last prefix group to the tail group");
            } else if (tail_->glue) {
                throw MalformedTelescope("glue map given without a prefix");
            }
        }
    }

    static Telescope periodic(const PresentedGroup& a, const GroupMap& f)
    {
        return Telescope({}, {}, PeriodicTail{a, f, {}});
    }

    const std::vector<PresentedGroup>& groups() const noexcept { return groups_; }
    const std::vector<GroupMap>& maps() const noexcept { return maps_; }
    const std::optional<PeriodicTail>& tail() const noexcept { return tail_; }
    bool is_finite() const noexcept { return !tail_; }
    std::size_t prefix_length() const noexcept { return groups_.size(); }

    const PresentedGroup& stage(std::size_t k) const { return k < groups_.size() ? groups_[k] : tail_->group; }

    /// The connecting map stage(k) -> stage(k + 1).
    GroupMap connecting(std::size_t k) const
    {
        if (k + 1 < groups_.size()) return maps_[k];
        if (!tail_) throw MalformedTelescope("no stage after the last one of a finite telescope");
        if (k + 1 == groups_.size()) return *tail_->glue;
        return tail_->endo;
    }

    /// The composite stage(k) -> stage(j) for j >= k.
    GroupMap composite(std::size_t k, std::size_t j) const
    {
        GroupMap m = GroupMap::identity(stage(k));
        for (std::size_t t = k; t < j; ++t) m = compose(connecting(t), m);
        return m;
    }

private:
    std::vector<PresentedGroup> groups_;
    std::vector<GroupMap> maps_;
    std::optional<PeriodicTail> tail_;
};

enum class LimKind { ExactGroup, Zero, NonzeroUncountable, Unknown };

inline std::string to_string(LimKind k)
{
    switch (k) {
    case LimKind::ExactGroup: return "exact";
    case LimKind::Zero: return "zero";
    case LimKind::NonzeroUncountable: return "nonzero-uncountable";
    case LimKind::Unknown: return "unknown";
    }
    return "unknown";
}

/// A computed limit with its projections. to_stage[k] covers the prefix; for
/// towers with a tail, to_tail is the (injective) projection to the first
/// tail copy.
struct LimitData {
    PresentedGroup group;
    std::vector<GroupMap> to_stage;
    std::optional<GroupMap> to_tail;
};

struct LimOutcome {
    LimKind kind = LimKind::Unknown;
    std::optional<PresentedGroup> group;
    std::string certificate;
    std::optional<LimitData> data;

    bool exact() const noexcept { return group.has_value(); }

    static LimOutcome zero(std::string certificate)
    {
        return {LimKind::Zero, PresentedGroup{}, std::move(certificate), std::nullopt};
    }
    static LimOutcome uncountable(std::string certificate)
    {
        return {LimKind::NonzeroUncountable, std::nullopt, std::move(certificate), std::nullopt};
    }
    static LimOutcome unknown(std::string certificate)
    {
        return {LimKind::Unknown, std::nullopt, std::move(certificate), std::nullopt};
    }
    static LimOutcome exact_group(LimitData data, std::string certificate)
    {
        LimOutcome out;
        out.kind = data.group.is_trivial() ? LimKind::Zero : LimKind::ExactGroup;
        out.group = data.group;
        out.certificate = std::move(certificate);
        out.data = std::move(data);
        return out;
    }

    /// Short human-readable classification, e.g. "Z/2", "0", "nonzero (uncountable)".
    std::string describe() const
    {
        switch (kind) {
        case LimKind::ExactGroup: return group->str();
        case LimKind::Zero: return "0";
        case LimKind::NonzeroUncountable: return "nonzero (uncountable)";
        case LimKind::Unknown: return "unknown";
        }
        return "unknown";
    }
};

namespace detail {

inline Lattice image_lattice(const IntMatrix& m, const PresentedGroup& g) { return Lattice(hconcat(m, g.relations())); }

struct StableImage {
    std::size_t stage;
    GroupMap power; // f^stage
};

// First k <= kmax with f^k(B) = f^{k+1}(B).
inline std::optional<StableImage> stable_image(const GroupMap& f, std::size_t kmax)
{
    GroupMap power = GroupMap::identity(f.source());
    Lattice current = image_lattice(power.matrix(), f.source());
    for (std::size_t k = 0; k < kmax; ++k) {
        GroupMap next = compose(f, power);
        Lattice next_lattice = image_lattice(next.matrix(), f.source());
        if (next_lattice.contains(current)) return StableImage{k, std::move(power)};
        power = std::move(next);
        current = std::move(next_lattice);
    }
    return std::nullopt;
}

struct StableKernel {
    std::size_t stage;
    IntMatrix generators; // ker f^stage in generator coordinates
};

inline std::optional<StableKernel> stable_kernel(const GroupMap& f, std::size_t kmax)
{
    const IntMatrix rel = f.source().relations();
    GroupMap power = GroupMap::identity(f.source());
    IntMatrix current = preimage_generators(power.matrix(), rel);
    for (std::size_t k = 0; k < kmax; ++k) {
        GroupMap next = compose(f, power);
        IntMatrix next_gens = preimage_generators(next.matrix(), rel);
        if (Lattice(current).contains(Lattice(next_gens))) return StableKernel{k, std::move(current)};
        power = std::move(next);
        current = std::move(next_gens);
    }
    return std::nullopt;
}

// The subgroup of B generated by the given columns, as a group with its
// inclusion into B.
inline std::pair<PresentedGroup, GroupMap> subgroup(const IntMatrix& columns, const PresentedGroup& b)
{
    Subquotient q(hconcat(columns, b.relations()), b.relations());
    return {q.group(), GroupMap(q.group(), b, q.lifts())};
}

inline std::vector<std::string> primes_of(Integer n)
{
    std::vector<std::string> out;
    n = abs_value(n);
    for (Integer p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(to_string(p));
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(to_string(n));
    return out;
}

// d with every prime factor shared with lambda removed.
inline Integer coprime_part(Integer d, const Integer& lambda)
{
    if (lambda == 0) return 1;
    for (;;) {
        Integer g = gcd(d, lambda);
        if (g == 1) return d;
        d /= g;
    }
}

inline LimitData pull_back_through_prefix(const Tower& t, PresentedGroup group, const GroupMap& to_tail)
{
    LimitData data{std::move(group), {}, to_tail};
    const std::size_t m = t.prefix_length();
    for (std::size_t k = 0; k < m; ++k) data.to_stage.push_back(compose(t.composite(m, k), to_tail));
    return data;
}

inline LimitData finite_limit(const Tower& t)
{
    const std::size_t m = t.prefix_length();
    if (m == 1) return {t.groups()[0], {GroupMap::identity(t.groups()[0])}, std::nullopt};
    DirectSum product = direct_sum(t.groups());
    std::vector<PresentedGroup> lower(t.groups().begin(), t.groups().end() - 1);
    DirectSum target = direct_sum(lower);
    IntMatrix diff(target.group.generator_count(), product.group.generator_count());
    for (std::size_t k = 0; k + 1 < m; ++k) {
        IntMatrix term = product.projections[k].matrix() - t.maps()[k].matrix() * product.projections[k + 1].matrix();
        diff = diff + target.injections[k].matrix() * term;
    }
    KernelResult ker = kernel(GroupMap(product.group, target.group, std::move(diff)));
    LimitData data{ker.group, {}, std::nullopt};
    for (std::size_t k = 0; k < m; ++k) data.to_stage.push_back(compose(product.projections[k], ker.inclusion));
    return data;
}

} // namespace detail

/// Inverse limit of a tower.
inline LimOutcome lim(const Tower& t, std::size_t kmax = default_kmax())
{
    if (t.is_finite()) {
        LimitData data = detail::finite_limit(t);
        return LimOutcome::exact_group(std::move(data), "finite tower: kernel of the difference map on the product");
    }
    const PeriodicTail& tail = *t.tail();
    if (auto s = detail::stable_image(tail.endo, kmax)) {
        auto [group, inclusion] = detail::subgroup(s->power.matrix(), tail.group);
        return LimOutcome::exact_group(detail::pull_back_through_prefix(t, std::move(group), inclusion),
                                       "image chain f^k(B) stabilizes at k = " + std::to_string(s->stage) +
                                           "; f is bijective on the stable image");
    }
    const IntMatrix& f = tail.endo.matrix();
    if (f.is_diagonal()) {
        const PresentedGroup& b = tail.group;
        IntMatrix columns(b.generator_count(), 0);
        std::string cert = "diagonal endomorphism; per factor:";
        for (std::size_t i = 0; i < b.generator_count(); ++i) {
            const Integer& lambda = f(i, i);
            Vector col(b.generator_count());
            if (i < b.free_rank()) {
                if (lambda == 1 || lambda == -1) col[i] = 1;
                cert += " Z(x" + to_string(lambda) + ")->" + (is_zero_vector(col) ? "0" : "Z");
            } else {
                const Integer d = b.generator_order(i);
                const Integer kept = detail::coprime_part(d, lambda);
                if (kept > 1) col[i] = d / kept;
                cert += " Z/" + to_string(d) + "(x" + to_string(lambda) + ")->" + (kept > 1 ? "Z/" + to_string(kept) : "0");
            }
            if (!is_zero_vector(col)) columns = hconcat(columns, IntMatrix::from_columns({col}, b.generator_count()));
        }
        auto [group, inclusion] = detail::subgroup(columns, b);
        return LimOutcome::exact_group(detail::pull_back_through_prefix(t, std::move(group), inclusion), cert);
    }
    return LimOutcome::unknown("image chain did not stabilize within k_max = " + std::to_string(kmax) +
                               " and the tail map is not diagonal");
}

/// First derived limit of a tower.
inline LimOutcome lim1(const Tower& t, std::size_t kmax = default_kmax())
{
    if (t.is_finite()) return LimOutcome::zero("finite tower (Mittag-Leffler)");
    const PeriodicTail& tail = *t.tail();
    if (tail.group.is_finite()) return LimOutcome::zero("tower of finite groups: image chains stabilize (Mittag-Leffler)");
    if (auto s = detail::stable_image(tail.endo, kmax))
        return LimOutcome::zero("Mittag-Leffler: image chain stabilizes at k = " + std::to_string(s->stage));

    // lim^1 is unchanged by dividing out the finite torsion subgroup; on the
    // free quotient F, the images L_k = F^k Z^r have constant rank from k = r
    // on and F is injective on L_r, so [L_k : L_{k+1}] = [L_r : F L_r] for all k >= r.
    const std::size_t r = tail.group.free_rank();
    const IntMatrix free_part = tail.endo.matrix().block(0, r, 0, r);
    IntMatrix power = IntMatrix::identity(r);
    for (std::size_t k = 0; k < r; ++k) power = free_part * power;
    const Lattice lr(power);
    if (lr.rank() == 0) return LimOutcome::zero("free quotient is eventually zero (Mittag-Leffler)");
    IntMatrix restricted(lr.rank(), lr.rank());
    const IntMatrix image = free_part * lr.basis();
    for (std::size_t j = 0; j < lr.rank(); ++j) restricted.set_column(j, *lr.coordinates(image.column(j)));
    const Integer index = abs_value(determinant(restricted));
    if (index == 1) return LimOutcome::zero("free quotient: image chain stabilizes from k = " + std::to_string(r) + " (Mittag-Leffler)");
    return LimOutcome::uncountable("strict descent: [f^k(B) : f^(k+1)(B)] = " + to_string(index) + " on the free quotient for every k >= " +
                                   std::to_string(r) + "; Mittag-Leffler fails for a countable tower");
}

/// Higher derived limits vanish on countable towers.
inline LimOutcome lim_i(const Tower&, unsigned i)
{
    if (i == 0 || i == 1) throw InputError("lim_i is for i >= 2");
    return LimOutcome::zero("countable tower: lim^" + std::to_string(i) + " vanishes for i >= 2");
}

/// Direct limit of a telescope: exact, or a symbolic colimit that is not
/// finitely generated.
struct ColimOutcome {
    bool exact = false;
    std::optional<PresentedGroup> group;
    std::vector<GroupMap> from_stage;   // prefix stages into the colimit
    std::optional<GroupMap> from_tail;  // first tail copy into the colimit
    std::string symbol;
    std::string certificate;

    std::string describe() const { return exact ? group->str() : symbol; }
};

inline ColimOutcome colim(const Telescope& t, std::size_t kmax = default_kmax())
{
    ColimOutcome out;
    const std::size_t m = t.prefix_length();
    if (t.is_finite()) {
        out.exact = true;
        out.group = t.groups().back();
        for (std::size_t k = 0; k < m; ++k) out.from_stage.push_back(t.composite(k, m - 1));
        out.certificate = "finite telescope: the last stage is a maximum";
        return out;
    }
    const PeriodicTail& tail = *t.tail();
    const PresentedGroup& b = tail.group;
    auto ker = detail::stable_kernel(tail.endo, kmax);
    if (ker) {
        // f is injective on B/K; the colimit is B/K when it is also onto.
        const IntMatrix& f = tail.endo.matrix();
        Lattice reach(hconcat(hconcat(f, ker->generators), b.relations()));
        if (reach.contains(Lattice(IntMatrix::identity(b.generator_count())))) {
            Subquotient sq(IntMatrix::identity(b.generator_count()), hconcat(ker->generators, b.relations()));
            IntMatrix p(sq.group().generator_count(), b.generator_count());
            for (std::size_t j = 0; j < b.generator_count(); ++j) p.set_column(j, sq.coordinates_or_throw(b.generator(j)));
            out.exact = true;
            out.group = sq.group();
            out.from_tail = GroupMap(b, sq.group(), std::move(p));
            for (std::size_t k = 0; k < m; ++k) out.from_stage.push_back(compose(*out.from_tail, t.composite(k, m)));
            out.certificate = "kernel chain ker f^k stabilizes at k = " + std::to_string(ker->stage) +
                              " and f induces an automorphism of B / ker f^k";
            return out;
        }
    }
    out.exact = false;
    const IntMatrix& f = tail.endo.matrix();
    if (b == PresentedGroup::free(1) && f(0, 0) != 0) {
        std::string inv;
        for (const auto& p : detail::primes_of(f(0, 0))) inv += (inv.empty() ? "" : ",") + std::string("1/") + p;
        out.symbol = "Z[" + inv + "]";
    } else {
        out.symbol = "colim(" + b.str() + ", f)";
    }
    out.certificate = ker ? "f is injective but not onto modulo the stable kernel: the colimit is not finitely generated"
                          : "kernel chain did not stabilize within k_max = " + std::to_string(kmax);
    return out;
}

/// The limit's embedding into the product of the prefix stages and the first
/// tail copy, together with that product.
inline std::pair<GroupMap, DirectSum> limit_embedding(const Tower& t, const LimitData& data)
{
    std::vector<PresentedGroup> stages = t.groups();
    if (t.tail()) stages.push_back(t.tail()->group);
    DirectSum product = direct_sum(stages);
    IntMatrix e(product.group.generator_count(), data.group.generator_count());
    for (std::size_t k = 0; k < data.to_stage.size(); ++k) e = e + product.injections[k].matrix() * data.to_stage[k].matrix();
    if (t.tail()) {
        if (!data.to_tail) throw InputError("limit data lacks the projection to the tail");
        e = e + product.injections.back().matrix() * data.to_tail->matrix();
    }
    return {GroupMap(data.group, product.group, std::move(e)), std::move(product)};
}

/// The map X -> lim induced by maps X -> stage(k) for the prefix stages and
/// X -> B for the tail copies. Throws InconsistentData when the family is not
/// compatible with the limit.
inline GroupMap factor_into_limit(const Tower& t, const LimitData& data, const PresentedGroup& x,
                                  const std::vector<GroupMap>& to_prefix, const std::optional<GroupMap>& to_tail)
{
    auto [embedding, product] = limit_embedding(t, data);
    IntMatrix m(product.group.generator_count(), x.generator_count());
    for (std::size_t k = 0; k < to_prefix.size(); ++k) m = m + product.injections[k].matrix() * to_prefix[k].matrix();
    if (t.tail()) {
        if (!to_tail) throw InputError("a map into the tail stages is required");
        m = m + product.injections.back().matrix() * to_tail->matrix();
    }
    return factor_through(embedding, GroupMap(x, product.group, std::move(m)));
}

/// Hom(-, G) applied stagewise turns a telescope into a tower.
inline Tower hom_tower(const Telescope& t, const PresentedGroup& g)
{
    std::vector<PresentedGroup> groups;
    std::vector<GroupMap> maps;
    for (const auto& a : t.groups()) groups.push_back(hom_group(a, g));
    for (const auto& f : t.maps()) maps.push_back(hom_map(f, g));
    std::optional<PeriodicTail> tail;
    if (t.tail()) {
        PeriodicTail pt{hom_group(t.tail()->group, g), hom_map(t.tail()->endo, g), std::nullopt};
        if (t.tail()->glue) pt.glue = hom_map(*t.tail()->glue, g);
        tail = std::move(pt);
    }
    return {std::move(groups), std::move(maps), std::move(tail)};
}

/// Ext(-, G) applied stagewise.
inline Tower ext_tower(const Telescope& t, const PresentedGroup& g)
{
    std::vector<PresentedGroup> groups;
    std::vector<GroupMap> maps;
    for (const auto& a : t.groups()) groups.push_back(ext_group(a, g));
    for (const auto& f : t.maps()) maps.push_back(ext_map(f, g));
    std::optional<PeriodicTail> tail;
    if (t.tail()) {
        PeriodicTail pt{ext_group(t.tail()->group, g), ext_map(t.tail()->endo, g), std::nullopt};
        if (t.tail()->glue) pt.glue = ext_map(*t.tail()->glue, g);
        tail = std::move(pt);
    }
    return {std::move(groups), std::move(maps), std::move(tail)};
}

} // namespace taut
