#include <finlab/finset.hh>
#include <finlab/errors.hh>

#include <algorithm>
#include <iterator>
#include <set>

using namespace finlab;

using std::vector;

FinSet::FinSet(std::initializer_list<Atom> elements) :
    FinSet(vector<Atom>(elements))
{
}

FinSet::FinSet(vector<Atom> elements) :
    _elements(std::move(elements))
{
    std::sort(_elements.begin(), _elements.end());
    _elements.erase(std::unique(_elements.begin(), _elements.end()), _elements.end());
}

auto FinSet::range(Atom n) -> FinSet
{
    vector<Atom> v(n);
    for (Atom i = 0 ; i < n ; ++i)
        v[i] = i;
    return FinSet{SortedTag{}, std::move(v)};
}

auto FinSet::from_sorted(vector<Atom> sorted) -> FinSet
{
    return FinSet{SortedTag{}, std::move(sorted)};
}

auto FinSet::from_mask(std::uint64_t mask) -> FinSet
{
    vector<Atom> v;
    for (Atom i = 0 ; mask ; ++i, mask >>= 1)
        if (mask & 1)
            v.push_back(i);
    return FinSet{SortedTag{}, std::move(v)};
}

auto FinSet::contains(Atom a) const -> bool
{
    return std::binary_search(_elements.begin(), _elements.end(), a);
}

auto FinSet::min() const -> Atom
{
    if (_elements.empty())
        throw InvalidInput{"min of the empty set"};
    return _elements.front();
}

auto FinSet::max() const -> Atom
{
    if (_elements.empty())
        throw InvalidInput{"max of the empty set"};
    return _elements.back();
}

auto FinSet::is_subset_of(const FinSet & other) const -> bool
{
    return std::includes(other._elements.begin(), other._elements.end(), _elements.begin(), _elements.end());
}

auto FinSet::intersects(const FinSet & other) const -> bool
{
    auto i = _elements.begin(), j = other._elements.begin();
    while (i != _elements.end() && j != other._elements.end()) {
        if (*i == *j)
            return true;
        else if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

auto FinSet::with(Atom a) const -> FinSet
{
    if (contains(a))
        return *this;
    vector<Atom> v = _elements;
    v.insert(std::upper_bound(v.begin(), v.end(), a), a);
    return FinSet{SortedTag{}, std::move(v)};
}

auto FinSet::without(Atom a) const -> FinSet
{
    vector<Atom> v;
    v.reserve(_elements.size());
    for (auto e : _elements)
        if (e != a)
            v.push_back(e);
    return FinSet{SortedTag{}, std::move(v)};
}

auto FinSet::to_mask() const -> std::uint64_t
{
    std::uint64_t mask = 0;
    for (auto e : _elements) {
        if (e >= 64)
            throw InvalidInput{"atom " + std::to_string(e) + " does not fit a 64-bit mask"};
        mask |= std::uint64_t{1} << e;
    }
    return mask;
}

namespace finlab
{
    auto operator| (const FinSet & a, const FinSet & b) -> FinSet
    {
        vector<Atom> v;
        v.reserve(a.size() + b.size());
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
        return FinSet::from_sorted(std::move(v));
    }

    auto operator& (const FinSet & a, const FinSet & b) -> FinSet
    {
        vector<Atom> v;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
        return FinSet::from_sorted(std::move(v));
    }

    auto operator- (const FinSet & a, const FinSet & b) -> FinSet
    {
        vector<Atom> v;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
        return FinSet::from_sorted(std::move(v));
    }

    auto operator^ (const FinSet & a, const FinSet & b) -> FinSet
    {
        vector<Atom> v;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
        return FinSet::from_sorted(std::move(v));
    }
}

auto finlab::sym_diff(const FinSet & a, const FinSet & b) -> FinSet
{
    return a ^ b;
}

auto finlab::to_string(const FinSet & s) -> std::string
{
    std::string result = "{";
    bool first = true;
    for (auto e : s) {
        if (! first)
            result += ",";
        first = false;
        result += std::to_string(e);
    }
    return result + "}";
}

SetFamily::SetFamily(std::initializer_list<FinSet> members) :
    _members(members)
{
}

auto SetFamily::is_injective() const -> bool
{
    std::set<FinSet> seen;
    for (auto & m : _members)
        if (! seen.insert(m).second)
            return false;
    return true;
}

auto SetFamily::union_all() const -> FinSet
{
    vector<Atom> v;
    for (auto & m : _members)
        v.insert(v.end(), m.begin(), m.end());
    return FinSet{std::move(v)};
}

auto finlab::to_string(const SetFamily & f) -> std::string
{
    std::string result = "[";
    bool first = true;
    for (auto & m : f) {
        if (! first)
            result += ",";
        first = false;
        result += to_string(m);
    }
    return result + "]";
}

auto finlab::canonical(vector<FinSet> v) -> vector<FinSet>
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

namespace
{
    template <typename Combine_>
    auto combine_subfamilies(const SetFamily & y, std::size_t k, Combine_ && combine) -> vector<FinSet>
    {
        vector<FinSet> out;
        auto rec = [&] (auto & self, std::size_t from, std::size_t used, const FinSet & acc) -> void {
            for (std::size_t i = from ; i < y.size() ; ++i) {
                FinSet next = used == 0 ? y[i] : combine(acc, y[i]);
                out.push_back(next);
                if (used + 1 < k)
                    self(self, i + 1, used + 1, next);
            }
        };
        rec(rec, 0, 0, FinSet{});
        return canonical(std::move(out));
    }
}

auto finlab::fs_up_to(const SetFamily & y, std::size_t k) -> vector<FinSet>
{
    if (k == 0)
        throw InvalidInput{"fs_up_to needs k >= 1"};
    if (y.empty())
        throw InvalidInput{"fs_up_to needs a nonempty family"};
    if (! y.is_injective())
        throw InvalidInput{"fs_up_to needs an injective family"};
    return combine_subfamilies(y, std::min(k, y.size()), [] (const FinSet & a, const FinSet & b) { return a ^ b; });
}

auto finlab::fu(const SetFamily & y) -> vector<FinSet>
{
    if (y.empty())
        throw InvalidInput{"fu needs a nonempty family"};
    return combine_subfamilies(y, y.size(), [] (const FinSet & a, const FinSet & b) { return a | b; });
}

auto finlab::is_pairwise_disjoint(const SetFamily & y) -> bool
{
    for (std::size_t i = 0 ; i < y.size() ; ++i)
        for (std::size_t j = i + 1 ; j < y.size() ; ++j)
            if (y[i].intersects(y[j]))
                return false;
    return true;
}

auto finlab::disjointify(const SetFamily & xs) -> Disjointified
{
    if (! xs.is_injective())
        throw InvalidInput{"disjointify needs an injective sequence"};

    Disjointified result;
    FinSet covered;
    for (std::size_t k = 0 ; k < xs.size() ; ++k) {
        if (xs[k].is_subset_of(covered))
            continue;
        FinSet y = xs[k] - covered;
        covered = covered | y;
        result.sets.push_back(std::move(y));
        result.source_indices.push_back(k);
    }

    if (result.sets.empty())
        throw NotFound{"every member of the sequence is empty"};
    return result;
}

auto finlab::subsets_of_size(const FinSet & ground, std::size_t k) -> vector<FinSet>
{
    vector<FinSet> out;
    for_each_subset_of_size(ground, k, [&] (const FinSet & s) { out.push_back(s); return true; });
    return out;
}
