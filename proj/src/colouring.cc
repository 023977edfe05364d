#include <finlab/colouring.hh>
#include <finlab/errors.hh>

using namespace finlab;

Colouring::Colouring(std::string name, std::size_t ground_size, std::optional<std::size_t> arity, Rule rule) :
    _name(std::move(name)),
    _carrier(FinSet::range(ground_size)),
    _arity(arity),
    _rule(std::move(rule))
{
}

auto Colouring::from_table(std::string name, std::size_t ground_size, std::optional<std::size_t> arity, Table table) -> Colouring
{
    auto shared = std::make_shared<const Table>(std::move(table));
    Colouring result{std::move(name), ground_size, arity, [shared] (const FinSet & x) -> Colour {
        auto f = shared->find(x);
        if (f == shared->end())
            throw DomainError{"colour table has no entry for " + to_string(x)};
        return f->second;
    }};
    result._table = shared;
    return result;
}

auto Colouring::constant(std::size_t ground_size, std::optional<std::size_t> arity, Colour c) -> Colouring
{
    return Colouring{"constant" + std::to_string(to_int(c)), ground_size, arity, [c] (const FinSet &) { return c; }};
}

auto Colouring::with_carrier(FinSet carrier) const -> Colouring
{
    Colouring result = *this;
    result._carrier = std::move(carrier);
    return result;
}

auto Colouring::with_arity(std::optional<std::size_t> arity) const -> Colouring
{
    Colouring result = *this;
    result._arity = arity;
    return result;
}

auto Colouring::in_domain(const FinSet & x) const -> bool
{
    if (_arity && x.size() != *_arity)
        return false;
    return x.is_subset_of(_carrier);
}

auto Colouring::operator() (const FinSet & x) const -> Colour
{
    if (! in_domain(x))
        throw DomainError{to_string(x) + " is outside the domain of colouring " + _name};
    return _rule(x);
}

auto Colouring::tabulate() const -> Table
{
    Table result;
    if (_arity) {
        for_each_subset_of_size(_carrier, *_arity, [&] (const FinSet & s) {
                if (result.size() > (1u << 22))
                    throw InvalidInput{"colouring domain too large to tabulate"};
                result.emplace(s, _rule(s));
                return true;
                });
    }
    else {
        if (_carrier.size() > 20)
            throw InvalidInput{"colouring domain too large to tabulate"};
        for (std::size_t k = 0 ; k <= _carrier.size() ; ++k)
            for_each_subset_of_size(_carrier, k, [&] (const FinSet & s) {
                    try {
                        result.emplace(s, _rule(s));
                    }
                    catch (const InvalidInput &) {
                        // rule undefined here, e.g. log2 on the empty set
                    }
                    return true;
                    });
    }
    return result;
}

auto finlab::is_monochromatic(const Colouring & c, std::span<const FinSet> s) -> std::optional<Colour>
{
    if (s.empty())
        return std::nullopt;
    std::optional<Colour> seen;
    bool constant = true;
    for (auto & x : s) {
        Colour v = c(x);
        if (! seen)
            seen = v;
        else if (*seen != v)
            constant = false;
    }
    return constant ? seen : std::nullopt;
}

auto finlab::required_arity(const Colouring & c, const char * who) -> std::size_t
{
    if (! c.arity())
        throw InvalidInput{std::string{who} + " needs a colouring on n-subsets"};
    return *c.arity();
}
