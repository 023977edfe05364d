#include <finlab/rado.hh>
#include <finlab/errors.hh>
#include <finlab/rng.hh>

#include <algorithm>
#include <map>

using namespace finlab;

using std::optional;
using std::uint64_t;
using std::vector;

auto finlab::bit_edge(uint64_t i, uint64_t j) -> bool
{
    if (i == j)
        throw InvalidInput{"bit_edge needs distinct vertices"};
    if (i > j)
        std::swap(i, j);
    return i < 64 && ((j >> i) & 1);
}

auto Demand::vertices() const -> FinSet
{
    vector<Atom> v;
    for (auto & s : positive)
        v.insert(v.end(), s.begin(), s.end());
    for (auto & s : negative)
        v.insert(v.end(), s.begin(), s.end());
    return FinSet{std::move(v)};
}

namespace
{
    constexpr std::size_t max_vertices = 65535;
    constexpr std::size_t max_arity = 4;

    auto check_shape(std::size_t arity, std::size_t vertex_count) -> void
    {
        if (arity < 2 || arity > max_arity)
            throw InvalidInput{"hypergraph arity must lie in [2, 4]"};
        if (vertex_count > max_vertices)
            throw InvalidInput{"at most 65535 vertices"};
    }

    // Demands are drawn from distinct (arity-1)-subsets, each positive or negative.
    template <typename F_>
    auto for_each_demand(const vector<FinSet> & subsets, std::size_t max_size, F_ && f) -> bool
    {
        Demand d;
        auto rec = [&] (auto & self, std::size_t from) -> bool {
            if (! f(d))
                return false;
            if (d.size() == max_size)
                return true;
            for (std::size_t i = from ; i < subsets.size() ; ++i) {
                d.positive.push_back(subsets[i]);
                bool go = self(self, i + 1);
                d.positive.pop_back();
                if (! go)
                    return false;
                d.negative.push_back(subsets[i]);
                go = self(self, i + 1);
                d.negative.pop_back();
                if (! go)
                    return false;
            }
            return true;
        };
        return rec(rec, 0);
    }

    auto sorted_by_order(const RadoStructure & s, const FinSet & w) -> vector<Atom>
    {
        vector<Atom> v(w.begin(), w.end());
        std::sort(v.begin(), v.end(), [&] (Atom a, Atom b) { return s.compare(a, b) < 0; });
        return v;
    }

    template <typename F_>
    auto for_each_slot(const RadoStructure & s, const Demand & d, F_ && f) -> bool
    {
        if (! s.ordered())
            return f(optional<OrderInterval>{});
        auto w = sorted_by_order(s, d.vertices());
        for (std::size_t g = 0 ; g <= w.size() ; ++g) {
            OrderInterval slot;
            if (g > 0)
                slot.above = w[g - 1];
            if (g < w.size())
                slot.below = w[g];
            if (! f(optional<OrderInterval>{slot}))
                return false;
        }
        return true;
    }

    auto estimate_demands(std::size_t subsets, std::size_t max_size) -> double
    {
        double total = 0, term = 1;
        for (std::size_t j = 0 ; j <= max_size ; ++j) {
            total += term;
            term = term * double(subsets - j) / double(j + 1) * 2.0;
            if (j + 1 > subsets)
                break;
        }
        return total;
    }

    auto check_demand_budget(std::size_t subsets, std::size_t demand_size) -> void
    {
        if (estimate_demands(subsets, demand_size) > 2e7)
            throw InvalidInput{"too many demands to certify at this size"};
    }
}

auto RadoStructure::link_key(const FinSet & s) const -> uint64_t
{
    uint64_t key = 0;
    for (auto a : s)
        key = (key << 16) | (uint64_t{a} + 1);
    return key;
}

auto RadoStructure::set_edge(const FinSet & e, bool present) -> void
{
    for (auto v : e) {
        auto & bits = _link[link_key(e.without(v))];
        if (bits.size() <= v)
            bits.resize(std::max<std::size_t>(_vertices, v + 1));
        bits[v] = present;
    }
}

auto RadoStructure::add_vertex(Rational position) -> Atom
{
    auto v = static_cast<Atom>(_vertices++);
    _position.push_back(std::move(position));
    return v;
}

auto RadoStructure::bit_graph(std::size_t vertex_count) -> RadoStructure
{
    RadoStructure s;
    s._kind = Kind::bit;
    s._arity = 2;
    s._vertices = vertex_count;
    s._base = vertex_count;
    return s;
}

auto RadoStructure::random_hypergraph(std::size_t arity, std::size_t vertex_count, uint64_t seed, std::size_t demand_size) -> RadoStructure
{
    check_shape(arity, vertex_count);
    RadoStructure s;
    s._kind = Kind::hypergraph;
    s._arity = arity;
    s._vertices = vertex_count;
    s._base = vertex_count;
    s._seed = seed;

    auto all = FinSet::range(static_cast<Atom>(vertex_count));
    auto subsets = subsets_of_size(all, arity - 1);
    check_demand_budget(subsets.size(), demand_size);

    Rng rng{seed};
    for_each_subset_of_size(all, arity, [&] (const FinSet & e) {
            if (rng.coin())
                s.set_edge(e, true);
            return true;
            });

    constexpr std::size_t max_passes = 200;
    for (std::size_t pass = 1 ; pass <= max_passes ; ++pass) {
        std::size_t failures = 0;
        for_each_demand(subsets, demand_size, [&] (const Demand & d) {
                if (extension_witness(s, d))
                    return true;
                ++failures;
                auto w = d.vertices();
                // seeded choice among the cheapest vertices; a fixed tie-break cycles
                vector<Atom> cheapest;
                std::size_t best_flips = SIZE_MAX;
                for (Atom v = 0 ; v < vertex_count ; ++v) {
                    if (w.contains(v))
                        continue;
                    std::size_t flips = 0;
                    for (auto & p : d.positive)
                        flips += ! s.has_edge(p.with(v));
                    for (auto & q : d.negative)
                        flips += s.has_edge(q.with(v));
                    if (flips < best_flips) {
                        cheapest.clear();
                        best_flips = flips;
                    }
                    if (flips == best_flips)
                        cheapest.push_back(v);
                }
                if (cheapest.empty())
                    throw NoExtension{"no vertex outside the demand to rewire"};
                optional<Atom> best = cheapest[rng.below(cheapest.size())];
                for (auto & p : d.positive)
                    s.set_edge(p.with(*best), true);
                for (auto & q : d.negative)
                    s.set_edge(q.with(*best), false);
                return true;
                });
        s._repair_passes = pass;
        if (failures == 0) {
            s._certified_demand = demand_size;
            return s;
        }
    }
    throw NoExtension{"repair passes did not settle within " + std::to_string(max_passes) + " rounds"};
}

auto RadoStructure::random_ordered_hypergraph(std::size_t arity, std::size_t base_count, uint64_t seed,
        std::size_t demand_size, std::size_t vertex_budget) -> RadoStructure
{
    check_shape(arity, std::max(base_count, vertex_budget));
    RadoStructure s;
    s._kind = Kind::hypergraph;
    s._arity = arity;
    s._ordered = true;
    s._seed = seed;
    s._base = base_count;

    Rng rng{seed};
    vector<std::size_t> perm(base_count);
    for (std::size_t i = 0 ; i < base_count ; ++i)
        perm[i] = i;
    for (std::size_t i = base_count ; i > 1 ; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);
    for (std::size_t i = 0 ; i < base_count ; ++i)
        s.add_vertex(Rational{perm[i]});

    auto base = FinSet::range(static_cast<Atom>(base_count));
    for_each_subset_of_size(base, arity, [&] (const FinSet & e) {
            if (rng.coin())
                s.set_edge(e, true);
            return true;
            });

    std::map<Rational, Atom> by_position;
    for (Atom v = 0 ; v < base_count ; ++v)
        by_position.emplace(s._position[v], v);

    auto subsets = subsets_of_size(base, arity - 1);
    check_demand_budget(subsets.size() * (arity * demand_size + 1), demand_size);

    // inserting never invalidates an earlier witness, so one pass suffices
    for_each_demand(subsets, demand_size, [&] (const Demand & d) {
            return for_each_slot(s, d, [&] (const optional<OrderInterval> & slot) {
                    if (extension_witness(s, d, {}, slot))
                        return true;
                    if (s._vertices >= vertex_budget)
                        throw NoExtension{"vertex budget of " + std::to_string(vertex_budget) + " exhausted"};

                    Rational position;
                    if (slot->above) {
                        auto lo = by_position.find(s._position[*slot->above]);
                        auto next = std::next(lo);
                        position = next == by_position.end() ? Rational{lo->first + 1} : Rational{(lo->first + next->first) / 2};
                    }
                    else
                        position = Rational{by_position.begin()->first - 1};

                    auto v = s.add_vertex(position);
                    by_position.emplace(position, v);
                    auto others = FinSet::range(v);
                    for_each_subset_of_size(others, arity - 1, [&] (const FinSet & t) {
                            bool pos = std::find(d.positive.begin(), d.positive.end(), t) != d.positive.end();
                            bool neg = std::find(d.negative.begin(), d.negative.end(), t) != d.negative.end();
                            bool coin = rng.coin();
                            if (pos || (! neg && coin))
                                s.set_edge(t.with(v), true);
                            return true;
                            });
                    return true;
                    });
            });

    auto cert = certify_extension_property(s, demand_size, base);
    if (cert.first_failure)
        throw NoExtension{"ordered repair left an unmet demand"};
    s._certified_demand = demand_size;
    s._repair_passes = 1;
    return s;
}

auto RadoStructure::from_edges(std::size_t arity, std::size_t vertex_count, std::size_t base_count, uint64_t seed,
        std::size_t certified_demand, const vector<FinSet> & edges, vector<Rational> positions) -> RadoStructure
{
    check_shape(arity, vertex_count);
    RadoStructure s;
    s._kind = Kind::hypergraph;
    s._arity = arity;
    s._vertices = vertex_count;
    s._base = base_count;
    s._seed = seed;
    s._certified_demand = certified_demand;
    if (! positions.empty()) {
        if (positions.size() != vertex_count)
            throw InvalidInput{"one position per vertex"};
        s._ordered = true;
        s._position = std::move(positions);
    }
    for (auto & e : edges) {
        if (e.size() != arity || (! e.empty() && e.max() >= vertex_count))
            throw InvalidInput{"bad hyperedge " + to_string(e)};
        s.set_edge(e, true);
    }
    return s;
}

auto RadoStructure::has_edge(const FinSet & e) const -> bool
{
    if (e.size() != _arity)
        throw InvalidInput{to_string(e) + " does not have the structure's arity"};
    if (e.max() >= _vertices)
        throw InvalidInput{to_string(e) + " leaves the vertex range"};
    if (_kind == Kind::bit)
        return bit_edge(e[0], e[1]);
    auto v = e.max();
    auto f = _link.find(link_key(e.without(v)));
    return f != _link.end() && v < f->second.size() && f->second[v];
}

auto RadoStructure::adjacent(Atom a, Atom b) const -> bool
{
    if (_arity != 2)
        throw InvalidInput{"adjacency needs arity 2"};
    return has_edge(FinSet{a, b});
}

auto RadoStructure::compare(Atom a, Atom b) const -> int
{
    if (a >= _vertices || b >= _vertices)
        throw InvalidInput{"vertex out of range"};
    if (_ordered) {
        auto & pa = _position[a], & pb = _position[b];
        return pa < pb ? -1 : pb < pa ? 1 : 0;
    }
    return a < b ? -1 : b < a ? 1 : 0;
}

auto RadoStructure::edges() const -> vector<FinSet>
{
    if (_kind == Kind::bit)
        throw InvalidInput{"the BIT graph is given by its rule, not an edge list"};
    vector<FinSet> out;
    for_each_subset_of_size(FinSet::range(static_cast<Atom>(_vertices)), _arity, [&] (const FinSet & e) {
            if (has_edge(e))
                out.push_back(e);
            return true;
            });
    return out;
}

auto finlab::extension_witness(const RadoStructure & s, const Demand & d, const FinSet & exclude,
        const optional<OrderInterval> & interval) -> optional<Atom>
{
    for (auto & p : d.positive) {
        if (p.size() + 1 != s.arity())
            throw InvalidInput{"demand " + to_string(p) + " does not have size arity - 1"};
        if (std::find(d.negative.begin(), d.negative.end(), p) != d.negative.end())
            throw InvalidInput{"demand " + to_string(p) + " is both positive and negative"};
    }
    for (auto & q : d.negative)
        if (q.size() + 1 != s.arity())
            throw InvalidInput{"demand " + to_string(q) + " does not have size arity - 1"};

    auto w = d.vertices();
    for (Atom v = 0 ; v < s.vertex_count() ; ++v) {
        if (w.contains(v) || exclude.contains(v))
            continue;
        if (interval) {
            if (interval->above && s.compare(*interval->above, v) >= 0)
                continue;
            if (interval->below && s.compare(v, *interval->below) >= 0)
                continue;
        }
        bool ok = true;
        for (auto & p : d.positive)
            if (! s.has_edge(p.with(v))) {
                ok = false;
                break;
            }
        if (ok)
            for (auto & q : d.negative)
                if (s.has_edge(q.with(v))) {
                    ok = false;
                    break;
                }
        if (ok)
            return v;
    }
    return std::nullopt;
}

auto finlab::is_partial_iso(const RadoStructure & s, const PartialAut & p) -> bool
{
    auto dom = p.domain();
    for (auto & [a, b] : p.entries())
        if (a >= s.vertex_count() || b >= s.vertex_count())
            return false;

    bool ok = for_each_subset_of_size(dom, s.arity(), [&] (const FinSet & t) {
            vector<Atom> img;
            for (auto a : t)
                img.push_back(p(a));
            return s.has_edge(t) == s.has_edge(FinSet{std::move(img)});
            });
    if (! ok || ! s.ordered())
        return ok;

    for (auto & [a, pa] : p.entries())
        for (auto & [b, pb] : p.entries())
            if (s.compare(a, b) != s.compare(pa, pb))
                return false;
    return true;
}

auto finlab::extension_demand(const RadoStructure & s, const PartialAut & p, Atom target) -> std::pair<Demand, optional<OrderInterval>>
{
    Demand d;
    for_each_subset_of_size(p.domain(), s.arity() - 1, [&] (const FinSet & t) {
            vector<Atom> img;
            for (auto a : t)
                img.push_back(p(a));
            (s.has_edge(t.with(target)) ? d.positive : d.negative).push_back(FinSet{std::move(img)});
            return true;
            });

    optional<OrderInterval> slot;
    if (s.ordered()) {
        slot = OrderInterval{};
        optional<Atom> lo, hi;
        for (auto & [a, _] : p.entries()) {
            if (s.compare(a, target) < 0 && (! lo || s.compare(*lo, a) < 0))
                lo = a;
            if (s.compare(target, a) < 0 && (! hi || s.compare(a, *hi) < 0))
                hi = a;
        }
        if (lo)
            slot->above = p(*lo);
        if (hi)
            slot->below = p(*hi);
    }
    return { std::move(d), slot };
}

auto finlab::extend_partial_iso(const RadoStructure & s, const PartialAut & p, Atom target) -> PartialAut
{
    if (! is_partial_iso(s, p))
        throw ConstraintViolation{"map " + to_string(p) + " is not a partial isomorphism"};
    if (target >= s.vertex_count())
        throw InvalidInput{"target vertex out of range"};
    if (p.image_of(target))
        return p;

    auto [d, slot] = extension_demand(s, p, target);
    auto w = extension_witness(s, d, p.image(), slot);
    if (! w)
        throw NoExtension{"no vertex realizes the image demand of " + std::to_string(target)};

    PartialAut r = p;
    r.insert(target, *w);
    r.mark_verified(p.theory());
    return r;
}

auto finlab::certify_extension_property(const RadoStructure & s, std::size_t demand_size, const FinSet & over) -> Certification
{
    Certification c;
    auto subsets = subsets_of_size(over, s.arity() - 1);
    for_each_demand(subsets, demand_size, [&] (const Demand & d) {
            return for_each_slot(s, d, [&] (const optional<OrderInterval> & slot) {
                    ++c.demands_checked;
                    if (extension_witness(s, d, {}, slot))
                        return true;
                    c.first_failure = std::pair{d, slot};
                    return false;
                    });
            });
    return c;
}
