#include <finlab/hindman.hh>
#include <finlab/errors.hh>

#include <algorithm>
#include <map>

using namespace finlab;

using std::optional;
using std::vector;

auto finlab::to_string(ViolationKind k) -> std::string_view
{
    switch (k) {
        case ViolationKind::disjoint_equal_cardinality: return "disjoint-equal-cardinality";
        case ViolationKind::colour_mismatch:            return "colour-mismatch";
        case ViolationKind::bound_breach:               return "bound-breach";
    }
    return "unknown";
}

namespace
{
    auto make_report(ViolationKind kind, vector<FinSet> witnesses) -> ViolationReport
    {
        ViolationReport r{kind, std::move(witnesses), {}, {}, std::nullopt};
        for (auto & w : r.witnesses) {
            r.cardinalities.push_back(w.size());
            if (! w.empty())
                r.colours.push_back(log2_colouring(w));
        }
        return r;
    }
}

auto finlab::reverify(const ViolationReport & r) -> bool
{
    for (std::size_t i = 0 ; i < r.witnesses.size() ; ++i)
        if (i < r.cardinalities.size() && r.witnesses[i].size() != r.cardinalities[i])
            return false;

    switch (r.kind) {
        case ViolationKind::disjoint_equal_cardinality: {
            if (r.witnesses.size() != 3)
                return false;
            auto & x = r.witnesses[0], & y = r.witnesses[1];
            return x != y && ! x.empty() && ! x.intersects(y) && x.size() == y.size()
                && r.witnesses[2] == (x | y) && log2_colouring(x | y) != log2_colouring(x);
        }
        case ViolationKind::colour_mismatch:
            return r.witnesses.size() == 2 && ! r.witnesses[0].empty() && ! r.witnesses[1].empty()
                && log2_colouring(r.witnesses[0]) != log2_colouring(r.witnesses[1]);
        case ViolationKind::bound_breach: {
            if (! r.bound || r.witnesses.empty())
                return false;
            auto n = r.witnesses[0].size();
            for (auto & w : r.witnesses)
                if (w.size() != n)
                    return false;
            return SetFamily{r.witnesses}.is_injective() && BigInt{r.witnesses.size()} >= *r.bound;
        }
    }
    return false;
}

auto finlab::cardinality_injectivity_check(const SetFamily & y) -> optional<ViolationReport>
{
    if (! y.is_injective())
        throw InvalidInput{"cardinality_injectivity_check needs an injective family"};
    if (! is_pairwise_disjoint(y))
        throw InvalidInput{"cardinality_injectivity_check needs a pairwise disjoint family"};

    for (std::size_t i = 0 ; i < y.size() ; ++i)
        for (std::size_t j = i + 1 ; j < y.size() ; ++j)
            if (y[i].size() == y[j].size())
                return make_report(ViolationKind::disjoint_equal_cardinality, { y[i], y[j], y[i] | y[j] });
    return std::nullopt;
}

auto finlab::fs4_mono_check(const SetFamily & y) -> optional<ViolationReport>
{
    if (y.empty())
        throw InvalidInput{"fs4_mono_check needs a nonempty family"};
    for (auto & m : y)
        if (m.empty())
            throw InvalidInput{"fs4_mono_check: the log2 colouring is undefined on an empty member"};

    auto sums = fs_up_to(y, 4);
    std::erase_if(sums, [] (const FinSet & s) { return s.empty(); });

    Colour first = log2_colouring(sums.front());
    for (auto & s : sums)
        if (log2_colouring(s) != first)
            return make_report(ViolationKind::colour_mismatch, { sums.front(), s });
    return std::nullopt;
}

auto finlab::fs4_count_bound(const SetFamily & y, unsigned n, const RamseyProvider & provider) -> optional<ViolationReport>
{
    if (fs4_mono_check(y))
        throw InvalidInput{"fs4_count_bound needs FS_{<=4}(Y) log2-monochromatic"};

    vector<FinSet> level;
    for (auto & m : y)
        if (m.size() == n)
            level.push_back(m);

    auto f = f_bound(n, n, provider);
    if (BigInt{level.size()} < f.value)
        return std::nullopt;
    if (f.exactness == Exactness::lower_bound)
        throw Unclassifiable{"F(n,n) is only known from below; a breach cannot be certified"};

    auto r = make_report(ViolationKind::bound_breach, std::move(level));
    r.bound = f.value;
    return r;
}

auto finlab::fs4_induction_step(const SetFamily & y, std::size_t n, std::size_t k, const RamseyProvider & provider,
        std::size_t target, const SearchOptions & options) -> InductionStep
{
    if (target < 2)
        throw InvalidInput{"fs4_induction_step needs target >= 2"};
    if (y.empty() || ! y.is_injective())
        throw InvalidInput{"fs4_induction_step needs a nonempty injective family"};
    for (auto & m : y)
        if (m.size() != n)
            throw InvalidInput{"member " + to_string(m) + " does not have cardinality " + std::to_string(n)};
    for (std::size_t i = 0 ; i < y.size() ; ++i)
        for (std::size_t j = i + 1 ; j < y.size() ; ++j)
            if ((y[i] & y[j]).size() < k)
                throw InvalidInput{to_string(y[i]) + " and " + to_string(y[j]) + " meet in fewer than k points"};
    if (fs4_mono_check(y))
        throw InvalidInput{"fs4_induction_step needs FS_{<=4}(Y) log2-monochromatic"};

    InductionStep step;
    step.anchor = *std::min_element(y.begin(), y.end());
    step.forcing_size = provider.number(target);

    std::map<FinSet, vector<FinSet>> buckets;
    for (auto & m : y)
        if (m != step.anchor)
            buckets[m & step.anchor].push_back(m);
    if (buckets.empty())
        return step;

    auto best = buckets.begin();
    for (auto i = buckets.begin() ; i != buckets.end() ; ++i)
        if (i->second.size() > best->second.size())
            best = i;
    step.kernel = best->first;
    step.bucket = SetFamily{best->second};
    if (step.bucket.size() < target)
        return step;

    // pair colouring on bucket indices
    auto members = step.bucket;
    auto kernel = step.kernel;
    Colouring d{"kernel-overlap", members.size(), 2, [members, kernel] (const FinSet & e) {
        return colour_from((members[e[0]] - kernel).intersects(members[e[1]] - kernel));
    }};

    auto pick = [&] (Colour colour) -> optional<SetFamily> {
        auto o = options;
        o.only_colour = colour;
        auto found = find_mono_subset(d, target, o);
        if (! found)
            return std::nullopt;
        SetFamily sub;
        for (auto i : found->subset)
            sub.push_back(members[i]);
        return sub;
    };

    step.colour_zero_witness = pick(Colour::zero);
    step.subfamily = pick(Colour::one);
    if (step.subfamily)
        for (std::size_t i = 0 ; i < step.subfamily->size() ; ++i)
            for (std::size_t j = i + 1 ; j < step.subfamily->size() ; ++j)
                if (((*step.subfamily)[i] & (*step.subfamily)[j]).size() <= k)
                    throw ConstraintViolation{"induction step produced a pair meeting in at most k points"};
    return step;
}

auto finlab::pushforward_colouring(const Colouring & c, const SetFamily & ys) -> Colouring
{
    if (! is_pairwise_disjoint(ys))
        throw InvalidInput{"pushforward_colouring needs pairwise disjoint blocks"};
    for (auto & b : ys)
        if (b.empty())
            throw InvalidInput{"pushforward_colouring needs nonempty blocks"};
    return Colouring{"pushforward(" + c.name() + ")", ys.size(), std::nullopt, [c, ys] (const FinSet & s) {
        vector<Atom> u;
        for (auto i : s)
            u.insert(u.end(), ys[i].begin(), ys[i].end());
        return c(FinSet{std::move(u)});
    }};
}

auto finlab::lift_family(const SetFamily & z, const SetFamily & ys) -> SetFamily
{
    SetFamily out;
    for (auto & s : z) {
        vector<Atom> u;
        for (auto i : s) {
            if (i >= ys.size())
                throw DomainError{"index " + std::to_string(i) + " has no block"};
            u.insert(u.end(), ys[i].begin(), ys[i].end());
        }
        out.push_back(FinSet{std::move(u)});
    }
    return out;
}

auto finlab::star_family(const FinSet & z_set, Atom z) -> SetFamily
{
    if (! z_set.contains(z))
        throw InvalidInput{"star centre " + std::to_string(z) + " is not in " + to_string(z_set)};
    if (z_set.size() < 2)
        throw InvalidInput{"star_family needs |Z| >= 2"};
    SetFamily out;
    for (auto y : z_set)
        if (y != z)
            out.push_back(FinSet{y, z});
    return out;
}

auto finlab::schur_to_fs3(const NumberColouring & g, std::uint64_t bound, const GridShape & grid, std::size_t size) -> SchurFs3
{
    if (size < 1)
        throw InvalidInput{"schur_to_fs3 needs size >= 1"};
    auto triple = schur_triple(g, bound);
    if (! triple)
        throw NotFound{"no Schur triple among evens up to " + std::to_string(bound)};
    auto params = schur_decompose(*triple);
    auto n = params.n, k = params.k;
    if (grid.rows < size + 1 || grid.cols < n + k)
        throw InvalidInput{"grid " + std::to_string(grid.rows) + "x" + std::to_string(grid.cols)
            + " is too small for " + std::to_string(size) + " rows of " + std::to_string(n + k) + " columns"};

    SchurFs3 out{SetFamily{}, g(n + k), *triple, params};
    for (std::size_t i = 1 ; i <= size ; ++i) {
        vector<Atom> atoms;
        for (std::size_t j = 0 ; j < n ; ++j)
            atoms.push_back(grid.atom(0, j));
        for (std::size_t j = n ; j < n + k ; ++j)
            atoms.push_back(grid.atom(i, j));
        out.family.push_back(FinSet{std::move(atoms)});
    }

    Colouring by_size{"cardinality", grid.size(), std::nullopt, [g] (const FinSet & x) { return g(x.size()); }};
    auto sums = fs_up_to(out.family, 3);
    auto mono = is_monochromatic(by_size, sums);
    if (! mono || *mono != out.colour)
        throw ConstraintViolation{"FS_{<=3} of the built family is not monochromatic"};
    return out;
}
