#include <finlab/rado_witness.hh>
#include <finlab/errors.hh>

#include <algorithm>

using namespace finlab;

using std::optional;
using std::vector;

namespace
{
    auto require_rado(const ModelSpec & model, const char * who) -> void
    {
        if (model.kind != ModelKind::rado)
            throw InvalidInput{std::string{who} + " needs an unordered Rado model, got " + model.name()};
    }

    auto local_set(const ModelSpec & model, const FinSet & s, std::size_t block) -> FinSet
    {
        vector<Atom> v;
        for (auto a : s)
            if (*model.cell_of(a) == block)
                v.push_back(model.local(a));
        return FinSet{std::move(v)};
    }

    auto global_set(const ModelSpec & model, const FinSet & s, std::size_t block) -> FinSet
    {
        vector<Atom> v;
        for (auto a : s)
            v.push_back(model.global(block, a));
        return FinSet{std::move(v)};
    }

    auto singletons(const FinSet & s) -> vector<FinSet>
    {
        vector<FinSet> out;
        for (auto a : s)
            out.push_back(FinSet{ { a } });
        return out;
    }

    auto require_pool(const ModelSpec & model, const FinSet & s, const char * what) -> void
    {
        if (! s.empty() && s.max() >= model.atom_count)
            throw InvalidInput{std::string{what} + " leaves the atom pool"};
    }
}

auto finlab::rado_block_colouring(const ModelSpec & model, const FinSet & x) -> Colour
{
    if (! model.structure)
        throw InvalidInput{"model " + model.name() + " carries no hypergraph"};
    require_pool(model, x, "x");
    if (x.empty())
        return Colour::zero;
    auto block = *model.cell_of(x.min());
    if (*model.cell_of(x.max()) != block)
        return Colour::zero;
    auto n = model.structure->arity();
    bool found = false;
    for_each_subset_of_size(local_set(model, x, block), n, [&] (const FinSet & e) {
        found = model.structure->has_edge(e);
        return ! found;
    });
    return colour_from(found);
}

auto finlab::rado_h2_witness(const ModelSpec & model, const SetFamily & reps, const FinSet & f) -> RadoH2Report
{
    require_rado(model, "rado_h2_witness");
    if (model.structure->arity() != 2)
        throw InvalidInput{"rado_h2_witness needs a graph block"};
    require_pool(model, f, "declared support");
    for (auto & r : reps.members())
        require_pool(model, r, "representative");

    RadoH2Report r;
    auto y = std::find_if(reps.members().begin(), reps.members().end(), [&] (auto & m) { return ! m.is_subset_of(f); });
    if (y == reps.members().end())
        throw InvalidInput{"every member lies inside the support"};
    r.y = *y;
    r.a = (r.y - f).min();
    r.block = *model.cell_of(r.a);

    auto & s = *model.structure;
    auto la = model.local(r.a);
    // a itself stays out of F', otherwise the demand for b would contradict itself
    auto f_prime = local_set(model, f | r.y, r.block).without(la);
    vector<Atom> f0, f1;
    for (auto v : f_prime)
        (s.adjacent(la, v) ? f1 : f0).push_back(v);
    FinSet lf0{f0}, lf1{f1};
    r.f0 = global_set(model, lf0, r.block);
    r.f1 = global_set(model, lf1, r.block);

    auto lb = extension_witness(s, Demand{ singletons(lf1.with(la)), singletons(lf0) }, f_prime);
    auto lc = extension_witness(s, Demand{ singletons(lf1), singletons(lf0.with(la)) }, f_prime);
    if (! lb || ! lc)
        throw NoExtension{"block " + std::to_string(r.block) + " cannot host " + (lb ? "c" : "b")};
    r.b = model.global(r.block, *lb);
    r.c = model.global(r.block, *lc);

    auto fixed = (f | r.y).without(r.a);
    auto pb = PartialAut::identity(fixed, model.name());
    auto pc = pb;
    pb.insert(r.a, r.b);
    pc.insert(r.a, r.c);
    r.pi = complete_aut(model, pb, f | r.y);
    r.sigma = complete_aut(model, pc, f | r.y);

    r.z = apply_aut(r.pi, r.y);
    r.w = apply_aut(r.sigma, r.y);
    r.ab = r.y ^ r.z;
    r.ac = r.y ^ r.w;
    r.colour_ab = rado_block_colouring(model, r.ab);
    r.colour_ac = rado_block_colouring(model, r.ac);

    auto in_y = [&] (const FinSet & z) {
        return std::any_of(reps.members().begin(), reps.members().end(),
                [&] (auto & rep) { return same_orbit(model, f, rep, z).has_value(); });
    };

    if (! in_y(r.z) || ! in_y(r.w))
        r.note = "an image left the family";
    else if (r.ab != FinSet{ { std::min(r.a, r.b), std::max(r.a, r.b) } } || r.ac != FinSet{ { std::min(r.a, r.c), std::max(r.a, r.c) } })
        r.note = "symmetric differences are not the expected pairs";
    else if (r.colour_ab != Colour::one || r.colour_ac != Colour::zero)
        r.note = "colours do not split";
    r.verdict = r.note.empty() ? Verdict::pass : Verdict::fail;
    return r;
}

auto finlab::rado_rk_witness(const ModelSpec & model, std::size_t k, const FinSet & x, const FinSet & f) -> RadoRkReport
{
    require_rado(model, "rado_rk_witness");
    require_pool(model, f, "declared support");
    require_pool(model, x, "X");
    auto & s = *model.structure;
    auto n = s.arity();
    if (k == 0)
        throw InvalidInput{"k must be positive"};

    RadoRkReport r;
    r.arity = n;
    r.k = k;

    if (k < n) {
        r.transitivity_mode = true;
        optional<std::size_t> block;
        for (std::size_t m = 0 ; m < model.cell_count() && ! block ; ++m)
            if (! model.cell(m).intersects(f))
                block = m;
        if (! block) {
            r.verdict = Verdict::inconclusive;
            r.note = "every block meets the support";
            return r;
        }
        r.block = *block;
        auto cell = model.cell(r.block);
        if (cell.size() < k)
            throw NoExtension{"block smaller than k"};
        FinSet first;
        bool ok = true;
        for_each_subset_of_size(cell, k, [&] (const FinSet & s_k) {
            if (! r.subsets_checked++)
                first = s_k;
            else if (! same_orbit(model, f, first, s_k))
                ok = false;
            return ok;
        });
        r.verdict = ok ? Verdict::pass : Verdict::fail;
        if (! ok)
            r.note = "two k-subsets lie in different orbits";
        return r;
    }

    auto moving = x - f;
    if (moving.empty())
        throw InvalidInput{"X lies inside the support"};
    // pool-invariance stands in for the support check of an infinite set
    for (auto v : x - f)
        for (auto u : model.pool() - f - x)
            if (same_orbit(model, f, FinSet{ { v } }, FinSet{ { u } }))
                throw InvalidInput{"X is not closed under F-types: atom " + std::to_string(u) + " is missing"};

    r.a = moving.min();
    r.block = *model.cell_of(*r.a);
    auto la = model.local(*r.a);
    auto f_prime = local_set(model, f, r.block);

    vector<FinSet> f0, f1;
    for_each_subset_of_size(f_prime, n - 1, [&] (const FinSet & t) {
        (s.has_edge(t.with(la)) ? f1 : f0).push_back(t);
        return true;
    });

    vector<Atom> as{ la }, bs{ la };
    for (std::size_t l = 1 ; l < k ; ++l) {
        auto grow = [&] (vector<Atom> & seq, bool complete) {
            auto seq_set = FinSet{ vector<Atom>(seq) };
            auto within = subsets_of_size(seq_set, n - 1);
            Demand d{ f1, f0 };
            auto & extra = complete ? d.positive : d.negative;
            extra.insert(extra.end(), within.begin(), within.end());
            auto v = extension_witness(s, d, f_prime | seq_set);
            if (! v)
                throw NoExtension{"block " + std::to_string(r.block) + " cannot extend the " + (complete ? "complete" : "independent") + " sequence"};
            seq.push_back(*v);
        };
        grow(as, false);
        grow(bs, true);
    }

    bool members = true;
    for (std::size_t i = 0 ; i < k ; ++i) {
        r.a_seq.push_back(model.global(r.block, as[i]));
        r.b_seq.push_back(model.global(r.block, bs[i]));
        for (auto [target, maps] : { std::pair{ r.a_seq.back(), &r.pi }, std::pair{ r.b_seq.back(), &r.sigma } }) {
            auto p = PartialAut::identity(f, model.name());
            if (! p.defined(*r.a))
                p.insert(*r.a, target);
            if (! respects_theory(model, p))
                throw ConstraintViolation{"atom " + std::to_string(target) + " does not share a's type over F"};
            maps->push_back(complete_aut(model, p, f.with(*r.a)));
            members = members && x.contains(target);
        }
    }

    r.colour_a = rado_block_colouring(model, FinSet{ vector<Atom>(r.a_seq) });
    r.colour_b = rado_block_colouring(model, FinSet{ vector<Atom>(r.b_seq) });
    if (! members)
        r.note = "a constructed atom is missing from X";
    else if (r.colour_a != Colour::zero || r.colour_b != Colour::one)
        r.note = "colours do not split";
    r.verdict = r.note.empty() ? Verdict::pass : Verdict::fail;
    return r;
}
