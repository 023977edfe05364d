#include <finlab/hset.hh>
#include <finlab/errors.hh>

#include <algorithm>
#include <functional>

using namespace finlab;

using std::vector;

struct HSet::Node
{
    bool is_atom = false;
    Atom id = 0;
    vector<HSet> children;
    FinSet atoms;
    std::size_t depth = 0;
    std::size_t hash = 0;
};

HSet::HSet(std::shared_ptr<const Node> node) :
    _node(std::move(node))
{
}

auto HSet::atom(Atom a) -> HSet
{
    auto n = std::make_shared<Node>();
    n->is_atom = true;
    n->id = a;
    n->atoms = FinSet{a};
    n->hash = std::hash<Atom>{}(a) * 0x9e3779b97f4a7c15ull + 1;
    return HSet{std::move(n)};
}

auto HSet::set(vector<HSet> children) -> HSet
{
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());

    auto n = std::make_shared<Node>();
    vector<Atom> atoms;
    std::size_t h = 0x51ed27;
    for (auto & c : children) {
        atoms.insert(atoms.end(), c.atoms().begin(), c.atoms().end());
        n->depth = std::max(n->depth, c.depth() + 1);
        h = (h ^ c.hash()) * 0x100000001b3ull + 7;
    }
    n->atoms = FinSet{std::move(atoms)};
    n->hash = h;
    n->children = std::move(children);
    return HSet{std::move(n)};
}

auto HSet::empty_set() -> HSet
{
    return set({});
}

auto HSet::of_atoms(const FinSet & s) -> HSet
{
    vector<HSet> c;
    for (auto a : s)
        c.push_back(atom(a));
    return set(std::move(c));
}

auto HSet::ordinal(std::size_t n) -> HSet
{
    vector<HSet> members;
    for (std::size_t i = 0 ; i < n ; ++i)
        members.push_back(set(members));
    return set(std::move(members));
}

auto HSet::pair(const HSet & a, const HSet & b) -> HSet
{
    return set({ set({ a }), set({ a, b }) });
}

auto HSet::family(const SetFamily & f) -> HSet
{
    vector<HSet> c;
    for (auto & m : f)
        c.push_back(of_atoms(m));
    return set(std::move(c));
}

auto HSet::is_atom() const -> bool
{
    return _node->is_atom;
}

auto HSet::atom_id() const -> Atom
{
    if (! _node->is_atom)
        throw InvalidInput{"not an atom: " + to_string()};
    return _node->id;
}

auto HSet::children() const -> const vector<HSet> &
{
    return _node->children;
}

auto HSet::atoms() const -> const FinSet &
{
    return _node->atoms;
}

auto HSet::contains(const HSet & x) const -> bool
{
    return std::binary_search(children().begin(), children().end(), x);
}

auto HSet::depth() const -> std::size_t
{
    return _node->depth;
}

auto HSet::hash() const -> std::size_t
{
    return _node->hash;
}

auto HSet::as_finset() const -> FinSet
{
    if (is_atom())
        throw InvalidInput{"an atom is not a set of atoms"};
    vector<Atom> v;
    for (auto & c : children())
        v.push_back(c.atom_id());
    return FinSet::from_sorted(std::move(v));
}

auto HSet::unpair() const -> std::pair<HSet, HSet>
{
    auto fail = [&] { return InvalidInput{"not a Kuratowski pair: " + to_string()}; };
    if (is_atom() || size() == 0 || size() > 2)
        throw fail();
    for (auto & c : children())
        if (c.is_atom())
            throw fail();
    if (size() == 1) {
        auto & only = children()[0];
        if (only.size() != 1)
            throw fail();
        return { only.children()[0], only.children()[0] };
    }
    auto & small = children()[0].size() <= children()[1].size() ? children()[0] : children()[1];
    auto & large = children()[0].size() <= children()[1].size() ? children()[1] : children()[0];
    if (small.size() != 1 || large.size() != 2 || ! large.contains(small.children()[0]))
        throw fail();
    auto & a = small.children()[0];
    auto & b = large.children()[0] == a ? large.children()[1] : large.children()[0];
    return { a, b };
}

auto HSet::as_ordinal() const -> std::size_t
{
    if (is_atom() || *this != ordinal(size()))
        throw InvalidInput{"not a von Neumann ordinal: " + to_string()};
    return size();
}

auto HSet::to_string() const -> std::string
{
    if (is_atom())
        return "a" + std::to_string(_node->id);
    std::string r = "{";
    bool first = true;
    for (auto & c : children()) {
        if (! first)
            r += ",";
        first = false;
        r += c.to_string();
    }
    return r + "}";
}

namespace finlab
{
    auto operator<=> (const HSet & a, const HSet & b) -> std::strong_ordering
    {
        if (a._node == b._node)
            return std::strong_ordering::equal;
        if (a.is_atom() != b.is_atom())
            return a.is_atom() ? std::strong_ordering::less : std::strong_ordering::greater;
        if (a.is_atom())
            return a._node->id <=> b._node->id;
        return std::lexicographical_compare_three_way(
                a.children().begin(), a.children().end(), b.children().begin(), b.children().end());
    }

    auto operator== (const HSet & a, const HSet & b) -> bool
    {
        if (a._node == b._node)
            return true;
        if (a.hash() != b.hash())
            return false;
        return (a <=> b) == 0;
    }
}

auto finlab::encode_colouring(const Colouring & c) -> HSet
{
    auto table = c.tabulate();
    vector<HSet> graph;
    auto zero = HSet::ordinal(0), one = HSet::ordinal(1);
    for (auto & [x, colour] : table)
        graph.push_back(HSet::pair(HSet::of_atoms(x), colour == Colour::one ? one : zero));
    return HSet::set(std::move(graph));
}

auto finlab::encode_sequence(const vector<HSet> & values) -> HSet
{
    vector<HSet> graph;
    for (std::size_t i = 0 ; i < values.size() ; ++i)
        graph.push_back(HSet::pair(HSet::ordinal(i), values[i]));
    return HSet::set(std::move(graph));
}
