#include <finlab/partial_aut.hh>
#include <finlab/errors.hh>

#include <vector>

using namespace finlab;

PartialAut::PartialAut(const std::map<Atom, Atom> & map, std::string theory) :
    _theory(std::move(theory))
{
    for (auto & [a, b] : map)
        insert(a, b);
}

auto PartialAut::identity(const FinSet & atoms, std::string theory) -> PartialAut
{
    PartialAut p;
    for (auto a : atoms)
        p.insert(a, a);
    p._theory = std::move(theory);
    return p;
}

auto PartialAut::transposition(Atom a, Atom b, std::string theory) -> PartialAut
{
    return finitary({ { a, b }, { b, a } }, std::move(theory));
}

auto PartialAut::finitary(const std::map<Atom, Atom> & map, std::string theory) -> PartialAut
{
    PartialAut p{map, theory};
    if (p.domain() != p.image())
        throw ConstraintViolation{"a finitary permutation must map its domain onto itself"};
    p._fixes_rest = true;
    p._status = AutStatus::verified_extendable;
    return p;
}

auto PartialAut::defined(Atom a) const -> bool
{
    return _map.count(a) || _fixes_rest;
}

auto PartialAut::image_of(Atom a) const -> std::optional<Atom>
{
    if (auto f = _map.find(a) ; f != _map.end())
        return f->second;
    if (_fixes_rest)
        return a;
    return std::nullopt;
}

auto PartialAut::preimage_of(Atom b) const -> std::optional<Atom>
{
    if (auto f = _inverse.find(b) ; f != _inverse.end())
        return f->second;
    if (_fixes_rest)
        return b;
    return std::nullopt;
}

auto PartialAut::operator() (Atom a) const -> Atom
{
    auto b = image_of(a);
    if (! b)
        throw IncompleteMap{"atom " + std::to_string(a) + " has no image"};
    return *b;
}

auto PartialAut::domain() const -> FinSet
{
    std::vector<Atom> v;
    for (auto & [a, _] : _map)
        v.push_back(a);
    return FinSet::from_sorted(std::move(v));
}

auto PartialAut::image() const -> FinSet
{
    std::vector<Atom> v;
    for (auto & [b, _] : _inverse)
        v.push_back(b);
    return FinSet::from_sorted(std::move(v));
}

auto PartialAut::insert(Atom a, Atom b) -> void
{
    if (auto f = _map.find(a) ; f != _map.end()) {
        if (f->second != b)
            throw ConstraintViolation{"atom " + std::to_string(a) + " already maps elsewhere"};
        return;
    }
    if (_inverse.count(b))
        throw ConstraintViolation{"atom " + std::to_string(b) + " is already an image"};
    _map.emplace(a, b);
    _inverse.emplace(b, a);
    _status = AutStatus::raw;
}

auto PartialAut::mark_verified(std::string theory) -> void
{
    _theory = std::move(theory);
    _status = AutStatus::verified_extendable;
}

auto PartialAut::then(const PartialAut & other) const -> PartialAut
{
    PartialAut r;
    r._theory = _theory;
    std::vector<Atom> candidates;
    for (auto & [a, _] : _map)
        candidates.push_back(a);
    if (_fixes_rest)
        for (auto & [a, _] : other._map)
            candidates.push_back(a);
    for (auto a : FinSet{std::move(candidates)})
        if (auto b = image_of(a))
            if (auto c = other.image_of(*b))
                r.insert(a, *c);
    r._fixes_rest = _fixes_rest && other._fixes_rest;
    if (_status == AutStatus::verified_extendable && other._status == AutStatus::verified_extendable)
        r._status = AutStatus::verified_extendable;
    return r;
}

auto PartialAut::inverse() const -> PartialAut
{
    PartialAut r;
    r._map = _inverse;
    r._inverse = _map;
    r._theory = _theory;
    r._status = _status;
    r._fixes_rest = _fixes_rest;
    return r;
}

auto finlab::to_string(const PartialAut & p) -> std::string
{
    std::string r = "{";
    bool first = true;
    for (auto & [a, b] : p.entries()) {
        if (! first)
            r += ",";
        first = false;
        r += std::to_string(a) + "->" + std::to_string(b);
    }
    return r + "}";
}

auto finlab::apply_aut(const PartialAut & pi, const HSet & x) -> HSet
{
    if (pi.status() != AutStatus::verified_extendable)
        throw IncompleteMap{"apply_aut needs a completed map"};
    for (auto a : x.atoms())
        if (! pi.defined(a))
            throw IncompleteMap{"atom " + std::to_string(a) + " of " + x.to_string() + " has no image"};

    auto rec = [&] (auto & self, const HSet & y) -> HSet {
        if (y.is_atom())
            return HSet::atom(pi(y.atom_id()));
        if (y.is_pure())
            return y;
        std::vector<HSet> c;
        c.reserve(y.size());
        for (auto & z : y.children())
            c.push_back(self(self, z));
        return HSet::set(std::move(c));
    };
    return rec(rec, x);
}

auto finlab::apply_aut(const PartialAut & pi, const FinSet & x) -> FinSet
{
    if (pi.status() != AutStatus::verified_extendable)
        throw IncompleteMap{"apply_aut needs a completed map"};
    std::vector<Atom> v;
    for (auto a : x)
        v.push_back(pi(a));
    return FinSet{std::move(v)};
}
