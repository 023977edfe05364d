#include <finlab/ramsey.hh>
#include <finlab/errors.hh>
#include <finlab/parallel.hh>

#include <algorithm>
#include <bit>

using namespace finlab;

using std::optional;
using std::uint64_t;
using std::vector;

auto finlab::to_string(Exactness e) -> std::string_view
{
    switch (e) {
        case Exactness::exact:            return "exact";
        case Exactness::exact_from_table: return "exact-from-table";
        case Exactness::upper_bound:      return "upper-bound";
        case Exactness::lower_bound:      return "lower-bound";
    }
    return "unknown";
}

auto finlab::worst(Exactness a, Exactness b) -> Exactness
{
    return std::max(a, b);
}

namespace
{
    struct TableEntry
    {
        unsigned value;
        Exactness exactness;
    };

    // m <= 3 is re-derived by certify_ramsey_by_enumeration in the test suite
    const TableEntry ramsey_table[] = {
        { 1, Exactness::exact },
        { 2, Exactness::exact },
        { 6, Exactness::exact },
        { 18, Exactness::exact_from_table }
    };

    auto binomial(unsigned n, unsigned k) -> BigInt
    {
        BigInt r = 1;
        for (unsigned i = 1 ; i <= k ; ++i) {
            r *= n - k + i;
            r /= i;
        }
        return r;
    }
}

RamseyProvider::RamseyProvider(unsigned max_tabled, unsigned binomial_limit) :
    _max_tabled(std::min<unsigned>(max_tabled, std::size(ramsey_table))),
    _binomial_limit(binomial_limit)
{
}

auto RamseyProvider::number(const BigInt & m) const -> RamseyAnswer
{
    if (m < 1)
        throw InvalidInput{"Ramsey number needs m >= 1"};
    if (m <= _max_tabled) {
        auto & e = ramsey_table[m.convert_to<unsigned>() - 1];
        return { e.value, e.exactness };
    }
    if (m - 1 <= _binomial_limit) {
        auto mm = m.convert_to<unsigned>();
        return { binomial(2 * mm - 2, mm - 1), Exactness::upper_bound };
    }
    return lower(m);
}

auto RamseyProvider::lower(const BigInt & m) const -> RamseyAnswer
{
    if (m < 1)
        throw InvalidInput{"Ramsey number needs m >= 1"};
    if (m <= _max_tabled) {
        auto & e = ramsey_table[m.convert_to<unsigned>() - 1];
        return { e.value, e.exactness };
    }
    // every colouring of fewer than m points lacks an m-subset
    return { m, Exactness::lower_bound };
}

auto finlab::ramsey_number(const BigInt & m, const RamseyProvider & provider) -> RamseyAnswer
{
    return provider.number(m);
}

namespace
{
    auto edge_index(unsigned i, unsigned j, unsigned v) -> unsigned
    {
        // lexicographic index of {i < j} among the pairs of {0..v-1}
        return i * v - i * (i + 1) / 2 + (j - i - 1);
    }

    auto has_mono_clique(uint64_t colouring, unsigned v, unsigned m) -> bool
    {
        if (m <= 1)
            return v >= m;
        bool found = false;
        for_each_subset_of_size(FinSet::range(v), m, [&] (const FinSet & s) {
                int colour = -1;
                bool mono = true;
                for (unsigned a = 0 ; a < s.size() && mono ; ++a)
                    for (unsigned b = a + 1 ; b < s.size() && mono ; ++b) {
                        int e = (colouring >> edge_index(s[a], s[b], v)) & 1;
                        if (colour == -1)
                            colour = e;
                        else if (colour != e)
                            mono = false;
                    }
                found = mono;
                return ! found;
                });
        return found;
    }
}

auto finlab::certify_ramsey_by_enumeration(unsigned m, unsigned value) -> RamseyCertificate
{
    if (m < 1 || value < 1)
        throw InvalidInput{"certify_ramsey_by_enumeration needs m, value >= 1"};
    if (value > 6)
        throw InvalidInput{"certify_ramsey_by_enumeration enumerates K_value only for value <= 6"};

    RamseyCertificate cert;
    cert.m = m;
    cert.value = value;

    unsigned below = value - 1, edges_below = below * (below - (below ? 1 : 0)) / 2;
    for (uint64_t col = 0 ; col < (uint64_t{1} << edges_below) ; ++col) {
        ++cert.colourings_below;
        if (! has_mono_clique(col, below, m)) {
            if (cert.witnesses_below == 0)
                cert.lower_witness = col;
            ++cert.witnesses_below;
        }
    }

    unsigned edges_above = value * (value - 1) / 2;
    for (uint64_t col = 0 ; col < (uint64_t{1} << edges_above) ; ++col) {
        ++cert.colourings_above;
        if (! has_mono_clique(col, value, m))
            ++cert.failures_above;
    }

    cert.certified = cert.witnesses_below > 0 && cert.failures_above == 0;
    return cert;
}

auto finlab::paley_colouring(unsigned q) -> Colouring
{
    bool prime = q >= 2;
    for (unsigned d = 2 ; d * d <= q && prime ; ++d)
        if (q % d == 0)
            prime = false;
    if (! prime || q % 4 != 1)
        throw InvalidInput{"Paley colouring needs a prime q = 1 mod 4"};

    auto residues = std::make_shared<vector<bool>>(q, false);
    for (unsigned x = 1 ; x < q ; ++x)
        (*residues)[(x * x) % q] = true;
    return Colouring{"paley" + std::to_string(q), q, 2, [residues, q] (const FinSet & e) {
        return colour_from((*residues)[(e[1] - e[0]) % q]);
    }};
}

namespace
{
    struct SubtreeResult
    {
        optional<vector<std::size_t>> found;
        optional<Colour> colour;
        uint64_t nodes = 0;
        bool exceeded = false;
    };

    struct Exceeded { };

    // Sequential-equivalent reduction: the winner is the least subtree with a witness, and the
    // node count is what a sequential scan would have spent to reach it.
    template <typename Run_>
    auto run_subtrees(std::size_t count, const SearchOptions & options, Run_ && run) -> std::pair<SubtreeResult, uint64_t>
    {
        vector<SubtreeResult> results(count);
        std::atomic<std::size_t> best{count};
        parallel_for(count, options.workers, [&] (std::size_t i) {
                if (i > best.load())
                    return;
                results[i] = run(i, options.node_budget);
                if (results[i].found) {
                    auto b = best.load();
                    while (i < b && ! best.compare_exchange_weak(b, i))
                        ;
                }
                });

        uint64_t total = 0;
        for (std::size_t i = 0 ; i < count ; ++i) {
            total += results[i].nodes;
            if (results[i].exceeded || total > options.node_budget)
                throw BudgetExceeded{"node budget of " + std::to_string(options.node_budget) + " exhausted"};
            if (results[i].found)
                return { std::move(results[i]), total };
        }
        return { SubtreeResult{}, total };
    }

    class MonoSearcher
    {
        private:
            const Colouring & _c;
            const vector<Atom> & _x;
            std::size_t _n, _m;
            optional<Colour> _only;
            uint64_t _cap;

            uint64_t _nodes = 0;
            vector<std::size_t> _chosen;
            optional<Colour> _colour;

            auto fits(std::size_t j) -> bool
            {
                if (_chosen.size() + 1 < _n)
                    return true;
                vector<Atom> base;
                for (auto i : _chosen)
                    base.push_back(_x[i]);
                bool ok = true;
                for_each_subset_of_size(FinSet::from_sorted(base), _n - 1, [&] (const FinSet & s) {
                        Colour v = _c(s.with(_x[j]));
                        if (_only && v != *_only)
                            ok = false;
                        else if (! _colour)
                            _colour = v;
                        else if (*_colour != v)
                            ok = false;
                        return ok;
                        });
                return ok;
            }

            auto dfs() -> bool
            {
                if (++_nodes > _cap)
                    throw Exceeded{};
                if (_chosen.size() == _m)
                    return true;
                std::size_t need = _m - _chosen.size();
                for (std::size_t j = _chosen.back() + 1 ; j + need <= _x.size() ; ++j) {
                    auto saved = _colour;
                    if (fits(j)) {
                        _chosen.push_back(j);
                        if (dfs())
                            return true;
                        _chosen.pop_back();
                    }
                    _colour = saved;
                }
                return false;
            }

        public:
            MonoSearcher(const Colouring & c, const vector<Atom> & x, std::size_t n, std::size_t m, optional<Colour> only, uint64_t cap) :
                _c(c), _x(x), _n(n), _m(m), _only(only), _cap(cap)
            {
            }

            auto run(std::size_t first) -> SubtreeResult
            {
                SubtreeResult r;
                _chosen = { first };
                _colour = std::nullopt;
                if (_n == 1) {
                    Colour v = _c(FinSet{_x[first]});
                    if (_only && v != *_only) {
                        r.nodes = 1;
                        return r;
                    }
                    _colour = v;
                }
                try {
                    if (dfs()) {
                        r.found = _chosen;
                        r.colour = _colour;
                    }
                }
                catch (const Exceeded &) {
                    r.exceeded = true;
                }
                r.nodes = _nodes;
                return r;
            }
    };
}

auto finlab::search_mono_subset(const Colouring & c, std::size_t m, const SearchOptions & options) -> MonoSearch
{
    auto n = required_arity(c, "find_mono_subset");
    const auto & x = c.carrier().elements();
    if (n < 1)
        throw InvalidInput{"find_mono_subset needs arity at least 1"};
    if (m < n || m > x.size())
        throw InvalidInput{"find_mono_subset needs n <= m <= |X|"};

    auto [result, nodes] = run_subtrees(x.size() - m + 1, options, [&] (std::size_t first, uint64_t cap) {
            return MonoSearcher{c, x, n, m, options.only_colour, cap}.run(first);
            });

    MonoSearch out;
    out.nodes = nodes;
    if (result.found) {
        vector<Atom> atoms;
        for (auto i : *result.found)
            atoms.push_back(x[i]);
        // with m == n == |subset| the single n-subset fixes the colour inside fits()
        Colour colour = result.colour ? *result.colour : c(FinSet::from_sorted(atoms));
        out.witness = MonoSubset{FinSet::from_sorted(std::move(atoms)), colour};
    }
    return out;
}

auto finlab::find_mono_subset(const Colouring & c, std::size_t m, const SearchOptions & options) -> optional<MonoSubset>
{
    return search_mono_subset(c, m, options).witness;
}

auto FBoundTable::get(unsigned n, unsigned k) -> const FBound &
{
    if (n == 0)
        throw InvalidInput{"f_bound needs n >= 1"};
    auto key = std::pair{n, k};
    if (auto f = _memo.find(key) ; f != _memo.end())
        return f->second;

    FBound result;
    if (k == 0)
        result = FBound{4, Exactness::exact};
    else {
        auto & prev = get(n, k - 1);
        if (prev.exactness == Exactness::lower_bound) {
            auto r = _provider.lower(prev.value);
            result = FBound{(BigInt{1} << n) * (r.value - 1) + 2, Exactness::lower_bound};
        }
        else {
            auto r = _provider.number(prev.value);
            if (r.exactness == Exactness::lower_bound) {
                // an upper-bounded argument fed to a lower-bounded R bounds nothing; redo the chain from below
                BigInt v = 4;
                for (unsigned i = 0 ; i < k ; ++i)
                    v = (BigInt{1} << n) * (_provider.lower(v).value - 1) + 2;
                result = FBound{v, Exactness::lower_bound};
            }
            else
                result = FBound{(BigInt{1} << n) * (r.value - 1) + 2, worst(prev.exactness, r.exactness)};
        }
    }
    return _memo.emplace(key, std::move(result)).first->second;
}

auto finlab::f_bound(unsigned n, unsigned k, const RamseyProvider & provider) -> FBound
{
    FBoundTable table{provider};
    return table.get(n, k);
}

auto finlab::schur_triple(const NumberColouring & d, uint64_t bound) -> optional<SchurTriple>
{
    for (uint64_t m = 2 ; m + m + 2 <= bound ; m += 2) {
        Colour cm = d(m);
        for (uint64_t mp = m + 2 ; m + mp <= bound ; mp += 2)
            if (d(mp) == cm && d(m + mp) == cm)
                return SchurTriple{m, mp};
    }
    return std::nullopt;
}

auto finlab::schur_decompose(uint64_t m, uint64_t m_prime) -> SchurParameters
{
    if (m % 2 != 0 || m_prime % 2 != 0)
        throw InvalidInput{"schur_decompose needs even values"};
    uint64_t k = m_prime / 2;
    if (m <= k)
        throw InvalidInput{"schur_decompose needs m > m'/2"};
    return SchurParameters{m - k, k};
}

auto finlab::schur_decompose(const SchurTriple & t) -> SchurParameters
{
    return schur_decompose(std::max(t.m, t.m_prime), std::min(t.m, t.m_prime));
}

namespace
{
    class FuSearcher
    {
        private:
            const vector<Colour> & _colours;
            const vector<uint64_t> & _candidates;
            std::size_t _s, _n;
            uint64_t _cap;

            uint64_t _nodes = 0;
            vector<std::size_t> _chosen;
            vector<uint64_t> _unions;
            uint64_t _used = 0;
            Colour _target = Colour::zero;

            auto colour(uint64_t mask) const -> Colour
            {
                return _colours[mask];
            }

            auto dfs() -> bool
            {
                if (++_nodes > _cap)
                    throw Exceeded{};
                if (_chosen.size() == _s)
                    return true;
                for (std::size_t j = _chosen.back() + 1 ; j < _candidates.size() ; ++j) {
                    uint64_t x = _candidates[j];
                    if (x & _used)
                        continue;
                    if (std::popcount(_used | x) + (_s - _chosen.size() - 1) > _n)
                        continue;
                    if (colour(x) != _target)
                        continue;
                    bool ok = true;
                    for (auto u : _unions)
                        if (colour(u | x) != _target) {
                            ok = false;
                            break;
                        }
                    if (! ok)
                        continue;

                    auto old_size = _unions.size();
                    for (std::size_t i = 0 ; i < old_size ; ++i)
                        _unions.push_back(_unions[i] | x);
                    _unions.push_back(x);
                    _used |= x;
                    _chosen.push_back(j);
                    if (dfs())
                        return true;
                    _chosen.pop_back();
                    _used &= ~x;
                    _unions.resize(old_size);
                }
                return false;
            }

        public:
            FuSearcher(const vector<Colour> & colours, const vector<uint64_t> & candidates, std::size_t s, std::size_t n, uint64_t cap) :
                _colours(colours), _candidates(candidates), _s(s), _n(n), _cap(cap)
            {
            }

            auto run(std::size_t first) -> SubtreeResult
            {
                SubtreeResult r;
                uint64_t x = _candidates[first];
                _chosen = { first };
                _unions = { x };
                _used = x;
                _target = colour(x);
                try {
                    if (std::popcount(x) + _s - 1 <= _n && dfs())
                        r.found = _chosen;
                }
                catch (const Exceeded &) {
                    r.exceeded = true;
                }
                r.nodes = _nodes;
                return r;
            }
    };
}

auto finlab::fu_family_search(const Colouring & c, std::size_t s, const SearchOptions & options) -> optional<SetFamily>
{
    if (c.arity())
        throw InvalidInput{"fu_family_search needs a colouring of all finite subsets"};
    auto n = c.carrier().size();
    if (c.carrier() != FinSet::range(static_cast<Atom>(n)))
        throw InvalidInput{"fu_family_search needs the carrier {0..N-1}"};
    if (s < 1 || n < s)
        throw InvalidInput{"fu_family_search needs 1 <= s <= N"};
    if (n > 20)
        throw InvalidInput{"fu_family_search supports N <= 20"};

    vector<uint64_t> candidates;
    for (uint64_t mask = 1 ; mask < (uint64_t{1} << n) ; ++mask)
        candidates.push_back(mask);
    std::sort(candidates.begin(), candidates.end(), [] (uint64_t a, uint64_t b) {
            return FinSet::from_mask(a) < FinSet::from_mask(b);
            });

    vector<Colour> colours(std::size_t{1} << n, Colour::zero);
    for (auto mask : candidates)
        colours[mask] = c(FinSet::from_mask(mask));

    auto [result, nodes] = run_subtrees(candidates.size(), options, [&] (std::size_t first, uint64_t cap) {
            return FuSearcher{colours, candidates, s, n, cap}.run(first);
            });
    (void) nodes;

    if (! result.found)
        return std::nullopt;
    SetFamily family;
    for (auto j : *result.found)
        family.push_back(FinSet::from_mask(candidates[j]));
    return family;
}
