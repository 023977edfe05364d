#include <finlab/colourings.hh>
#include <finlab/errors.hh>

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

using namespace finlab;

using std::vector;

auto finlab::log2_colouring(const FinSet & x) -> Colour
{
    if (x.empty())
        throw InvalidInput{"log2 colouring is undefined on the empty set"};
    auto floor_log2 = std::bit_width(x.size()) - 1;
    return colour_from(floor_log2 % 2 == 1);
}

auto finlab::mod4_colouring(const FinSet & x) -> Colour
{
    return colour_from(x.size() % 4 >= 2);
}

auto finlab::log2_colouring_on(std::size_t ground_size) -> Colouring
{
    return Colouring{"log2", ground_size, std::nullopt, log2_colouring};
}

auto finlab::mod4_colouring_on(std::size_t ground_size) -> Colouring
{
    return Colouring{"mod4", ground_size, std::nullopt, mod4_colouring};
}

Partition::Partition(vector<FinSet> blocks) :
    _blocks(std::move(blocks))
{
    vector<Atom> all;
    for (std::size_t b = 0 ; b < _blocks.size() ; ++b) {
        if (_blocks[b].empty())
            throw InvalidInput{"partition block " + std::to_string(b) + " is empty"};
        for (auto a : _blocks[b]) {
            if (! _block_of.emplace(a, b).second)
                throw InvalidInput{"atom " + std::to_string(a) + " lies in two partition blocks"};
            all.push_back(a);
        }
    }
    _carrier = FinSet{std::move(all)};
}

auto Partition::block_of(Atom a) const -> std::optional<std::size_t>
{
    auto f = _block_of.find(a);
    if (f == _block_of.end())
        return std::nullopt;
    return f->second;
}

namespace
{
    auto block_hits(const Partition & p, const FinSet & x) -> std::map<std::size_t, std::size_t>
    {
        std::map<std::size_t, std::size_t> hits;
        for (auto a : x) {
            auto b = p.block_of(a);
            if (! b)
                throw DomainError{to_string(x) + " escapes the partition carrier"};
            ++hits[*b];
        }
        return hits;
    }
}

auto finlab::partition_colouring(const Partition & p, const FinSet & x) -> Colour
{
    for (auto & [_, count] : block_hits(p, x))
        if (count >= 2)
            return Colour::one;
    return Colour::zero;
}

auto finlab::partition_colouring_on(const Partition & p) -> Colouring
{
    std::size_t ground = p.carrier().empty() ? 0 : p.carrier().max() + 1;
    return Colouring{"partition", ground, std::nullopt, [p] (const FinSet & x) { return partition_colouring(p, x); }}
        .with_carrier(p.carrier());
}

auto finlab::selector_extract(const Partition & p, const FinSet & y) -> std::optional<FinSet>
{
    for (auto & [_, count] : block_hits(p, y))
        if (count != 1)
            return std::nullopt;
    return y;
}

LinearOrder::LinearOrder(vector<Atom> sequence) :
    _sequence(std::move(sequence))
{
    for (std::size_t i = 0 ; i < _sequence.size() ; ++i)
        if (! _rank.emplace(_sequence[i], i).second)
            throw InvalidInput{"linear order repeats atom " + std::to_string(_sequence[i])};
}

auto LinearOrder::natural(const FinSet & ground) -> LinearOrder
{
    return LinearOrder{ground.elements()};
}

auto LinearOrder::rank(Atom a) const -> std::size_t
{
    auto f = _rank.find(a);
    if (f == _rank.end())
        throw DomainError{"atom " + std::to_string(a) + " is not in the order"};
    return f->second;
}

auto LinearOrder::least(const FinSet & x) const -> Atom
{
    if (x.empty())
        throw InvalidInput{"least element of the empty set"};
    Atom best = x[0];
    for (auto a : x)
        if (rank(a) < rank(best))
            best = a;
    return best;
}

auto finlab::min_drop_colouring(const Colouring & c, const LinearOrder & order, const FinSet & x) -> Colour
{
    auto n = required_arity(c, "min_drop_colouring");
    if (x.size() != n + 1)
        throw InvalidInput{"min_drop_colouring needs an (n+1)-subset, got " + to_string(x)};
    return c(x.without(order.least(x)));
}

auto finlab::min_drop_lift(const Colouring & c, const LinearOrder & order) -> Colouring
{
    auto n = required_arity(c, "min_drop_lift");
    Colouring result{"min-drop(" + c.name() + ")", 0, n + 1,
        [c, order] (const FinSet & x) { return min_drop_colouring(c, order, x); }};
    return result.with_carrier(c.carrier());
}

namespace
{
    // bit 0: some extension has colour 0, bit 1: some extension has colour 1
    auto extension_colours(const Colouring & c, const FinSet & s, const FinSet & pool) -> unsigned
    {
        unsigned seen = 0;
        for (auto x : pool) {
            if (s.contains(x))
                continue;
            seen |= 1u << to_int(c(s.with(x)));
            if (seen == 3)
                break;
        }
        return seen;
    }
}

auto finlab::is_dense(const Colouring & c, const FinSet & y) -> bool
{
    auto n = required_arity(c, "is_dense");
    if (n == 0)
        throw InvalidInput{"is_dense needs arity at least 1"};
    if (! y.is_subset_of(c.carrier()))
        throw InvalidInput{"witness set " + to_string(y) + " escapes the colouring carrier"};
    if (y.size() < n - 1)
        throw InvalidInput{"witness set has fewer than n - 1 points"};

    return for_each_subset_of_size(y, n - 1, [&] (const FinSet & s) {
            return extension_colours(c, s, c.carrier()) == 3;
            });
}

auto finlab::locally_finite_split(const Colouring & c, FinitenessThreshold threshold) -> LocalSplit
{
    if (required_arity(c, "locally_finite_split") != 2)
        throw InvalidInput{"locally_finite_split needs a pair colouring"};
    const auto & x = c.carrier();
    const auto t = threshold.t;
    if (x.size() <= 2 * t + 1)
        throw InvalidInput{"locally_finite_split needs |X| > 2t + 1"};

    vector<std::size_t> degree[2] = { vector<std::size_t>(x.size()), vector<std::size_t>(x.size()) };
    for (std::size_t i = 0 ; i < x.size() ; ++i)
        for (std::size_t j = i + 1 ; j < x.size() ; ++j) {
            auto colour = to_int(c(FinSet{x[i], x[j]}));
            ++degree[colour][i];
            ++degree[colour][j];
        }

    vector<Atom> classed[2];
    for (std::size_t i = 0 ; i < x.size() ; ++i) {
        bool low0 = degree[0][i] <= t, low1 = degree[1][i] <= t;
        if (! low0 && ! low1)
            throw Unclassifiable{"atom " + std::to_string(x[i]) + " has more than t neighbours in both colours"};
        classed[low1 ? 1 : 0].push_back(x[i]);
    }

    for (int colour = 0 ; colour < 2 ; ++colour)
        if (classed[colour].size() + t >= x.size()) {
            auto members = FinSet::from_sorted(classed[colour]);
            std::size_t max_degree = 0;
            for (auto a : members) {
                std::size_t d = 0;
                for (auto b : members)
                    if (a != b && to_int(c(FinSet{a, b})) == colour)
                        ++d;
                max_degree = std::max(max_degree, d);
            }
            return LocalSplit{colour_from_int(colour), std::move(members), max_degree};
        }

    throw Unclassifiable{"no colour classes at least |X| - t points"};
}

PairGraph::PairGraph(FinSet vertices, const vector<std::pair<Atom, Atom>> & edges) :
    _vertices(std::move(vertices))
{
    for (auto v : _vertices)
        _adjacent[v];
    for (auto & [a, b] : edges) {
        if (a == b || ! _vertices.contains(a) || ! _vertices.contains(b))
            throw InvalidInput{"edge {" + std::to_string(a) + "," + std::to_string(b) + "} is not a pair of vertices"};
        _adjacent[a].push_back(b);
        _adjacent[b].push_back(a);
    }
    for (auto & [_, n] : _adjacent) {
        std::sort(n.begin(), n.end());
        n.erase(std::unique(n.begin(), n.end()), n.end());
    }
}

auto PairGraph::from_colouring(const Colouring & c, Colour i) -> PairGraph
{
    if (required_arity(c, "PairGraph") != 2)
        throw InvalidInput{"PairGraph needs a pair colouring"};
    vector<std::pair<Atom, Atom>> edges;
    const auto & x = c.carrier();
    for (std::size_t a = 0 ; a < x.size() ; ++a)
        for (std::size_t b = a + 1 ; b < x.size() ; ++b)
            if (c(FinSet{x[a], x[b]}) == i)
                edges.emplace_back(x[a], x[b]);
    return PairGraph{x, edges};
}

auto PairGraph::neighbours(Atom v) const -> const vector<Atom> &
{
    auto f = _adjacent.find(v);
    if (f == _adjacent.end())
        throw InvalidInput{"atom " + std::to_string(v) + " is not a vertex"};
    return f->second;
}

auto PairGraph::adjacent(Atom a, Atom b) const -> bool
{
    auto & n = neighbours(a);
    return std::binary_search(n.begin(), n.end(), b);
}

auto PairGraph::edge_count() const -> std::size_t
{
    std::size_t twice = 0;
    for (auto & [_, n] : _adjacent)
        twice += n.size();
    return twice / 2;
}

auto finlab::bfs_levels(const PairGraph & g, Atom x) -> vector<FinSet>
{
    if (! g.vertices().contains(x))
        throw InvalidInput{"bfs start " + std::to_string(x) + " is not a vertex"};

    std::set<Atom> seen{x};
    vector<FinSet> levels{FinSet{x}};
    while (true) {
        vector<Atom> next;
        for (auto v : levels.back())
            for (auto w : g.neighbours(v))
                if (seen.insert(w).second)
                    next.push_back(w);
        if (next.empty())
            break;
        levels.emplace_back(std::move(next));
    }
    return levels;
}

auto finlab::components(const PairGraph & g) -> Partition
{
    std::set<Atom> seen;
    vector<FinSet> blocks;
    for (auto v : g.vertices()) {
        if (seen.count(v))
            continue;
        vector<Atom> block;
        for (auto & level : bfs_levels(g, v))
            for (auto w : level) {
                seen.insert(w);
                block.push_back(w);
            }
        blocks.emplace_back(std::move(block));
    }
    return Partition{std::move(blocks)};
}

auto finlab::singleton_extract(const Colouring & c, Colour i) -> FinSet
{
    auto g = PairGraph::from_colouring(c, i);
    vector<Atom> singles;
    for (auto v : g.vertices())
        if (g.neighbours(v).empty())
            singles.push_back(v);
    return FinSet::from_sorted(std::move(singles));
}

auto finlab::boundary_colouring(const Colouring & c) -> Colouring
{
    auto n = required_arity(c, "boundary_colouring");
    if (n < 2)
        throw InvalidInput{"boundary_colouring needs n >= 2"};
    Colouring result{"boundary(" + c.name() + ")", 0, n - 1, [c] (const FinSet & s) {
        return colour_from(extension_colours(c, s, c.carrier()) == 3);
    }};
    return result.with_carrier(c.carrier());
}

auto finlab::value_colouring(const Colouring & c, const FinSet & y_prime) -> Colouring
{
    auto n = required_arity(c, "value_colouring");
    if (n < 2)
        throw InvalidInput{"value_colouring needs n >= 2"};
    if (! y_prime.is_subset_of(c.carrier()))
        throw InvalidInput{to_string(y_prime) + " escapes the colouring carrier"};

    Colouring::Table table;
    for_each_subset_of_size(y_prime, n - 1, [&] (const FinSet & s) {
            auto seen = extension_colours(c, s, c.carrier());
            if (seen != 1 && seen != 2)
                throw NotConstant{"extensions of " + to_string(s) + " do not share a unique colour"};
            table.emplace(s, seen == 1 ? Colour::zero : Colour::one);
            return true;
            });

    std::size_t ground = y_prime.empty() ? 0 : y_prime.max() + 1;
    return Colouring::from_table("value(" + c.name() + ")", ground, n - 1, std::move(table)).with_carrier(y_prime);
}

auto GridShape::atom(std::size_t row, std::size_t col) const -> Atom
{
    if (row >= rows || col >= cols)
        throw DomainError{"cell (" + std::to_string(row) + "," + std::to_string(col) + ") is outside the grid"};
    return static_cast<Atom>(row * cols + col);
}

auto GridShape::coords(Atom a) const -> std::pair<std::size_t, std::size_t>
{
    if (a >= size())
        throw DomainError{"atom " + std::to_string(a) + " is not a grid atom"};
    return { a / cols, a % cols };
}

auto GridShape::row_set(const FinSet & x) const -> FinSet
{
    vector<Atom> r;
    for (auto a : x)
        r.push_back(static_cast<Atom>(coords(a).first));
    return FinSet{std::move(r)};
}

auto GridShape::col_set(const FinSet & x) const -> FinSet
{
    vector<Atom> c;
    for (auto a : x)
        c.push_back(static_cast<Atom>(coords(a).second));
    return FinSet{std::move(c)};
}

auto finlab::grid_weight(const GridShape & g, const FinSet & x) -> std::size_t
{
    return g.row_set(x).size() + g.col_set(x).size();
}

auto finlab::grid_colouring(const GridShape & g, const FinSet & x) -> Colour
{
    return colour_from(grid_weight(g, x) % 4 >= 2);
}

auto finlab::grid_colouring_on(const GridShape & g) -> Colouring
{
    return Colouring{"grid", g.size(), std::nullopt, [g] (const FinSet & x) { return grid_colouring(g, x); }};
}
