#include <finlab/fm.hh>
#include <finlab/colourings.hh>
#include <finlab/errors.hh>

#include <algorithm>
#include <set>

using namespace finlab;

using std::optional;
using std::vector;

namespace
{
    auto require_kind(const ModelSpec & model, std::initializer_list<ModelKind> kinds, const char * who) -> void
    {
        if (std::find(kinds.begin(), kinds.end(), model.kind) == kinds.end())
            throw InvalidInput{std::string{who} + " does not apply to model " + model.name()};
    }

    auto require_in_pool(const ModelSpec & model, const FinSet & s, const char * what) -> void
    {
        if (! s.empty() && s.max() >= model.known_atoms())
            throw InvalidInput{std::string{what} + " leaves the atom pool"};
    }

    auto in_orbit_union(const ModelSpec & model, const FinSet & f, const SetFamily & reps, const FinSet & z) -> bool
    {
        for (auto & r : reps.members())
            if (same_orbit(model, f, r, z))
                return true;
        return false;
    }
}

auto finlab::verify_first_fraenkel_rn(const ModelSpec & model, const Colouring & c, const FinSet & f) -> FirstFraenkelReport
{
    require_kind(model, { ModelKind::fraenkel1 }, "verify_first_fraenkel_rn");
    auto n = required_arity(c, "verify_first_fraenkel_rn");
    if (c.carrier() != model.pool())
        throw InvalidInput{"colouring must live on the model's atom pool"};
    require_in_pool(model, f, "declared support");
    if (! is_support(model, f, encode_colouring(c)))
        throw InvalidInput{"declared support " + to_string(f) + " does not support " + c.name()};

    FirstFraenkelReport r;
    auto rest = model.pool() - f;
    for_each_subset_of_size(rest, n, [&] (const FinSet & x) {
        ++r.subsets_checked;
        auto colour = c(x);
        if (! r.colour) {
            r.colour = colour;
            r.sample_x = x;
        }
        else if (colour != *r.colour) {
            r.counterexample = { *r.sample_x, x };
            return false;
        }
        r.sample_y = x;
        return true;
    });

    if (r.counterexample) {
        r.verdict = Verdict::fail;
        return r;
    }
    if (! r.colour) {
        r.verdict = Verdict::inconclusive;
        return r;
    }

    // replay: a map fixing F carrying sample_x onto sample_y
    auto p = PartialAut::identity(f, model.name());
    for (std::size_t i = 0 ; i < n ; ++i)
        p.insert((*r.sample_x)[i], (*r.sample_y)[i]);
    auto pi = complete_aut(model, p, *r.sample_x | *r.sample_y);
    r.sample_map = pi;
    r.verdict = apply_aut(pi, *r.sample_x) == *r.sample_y ? Verdict::pass : Verdict::fail;
    return r;
}

auto finlab::verify_h3_witness(const ModelSpec & model, const SetFamily & family, const FinSet & f) -> H3Report
{
    require_kind(model, { ModelKind::fraenkel1, ModelKind::omega_fraenkel, ModelKind::mostowski }, "verify_h3_witness");
    require_in_pool(model, f, "declared support");
    for (auto & m : family.members())
        require_in_pool(model, m, "family member");

    bool virtual_model = model.is_virtual();
    auto encoded = HSet::family(family);
    if (! virtual_model && ! is_support(model, f, encoded))
        throw InvalidInput{"declared support " + to_string(f) + " does not support the family"};

    H3Report r;
    auto y = std::find_if(family.members().begin(), family.members().end(), [&] (auto & m) { return ! m.is_subset_of(f); });
    if (y == family.members().end())
        throw InvalidInput{"every member lies inside the support"};
    r.y = *y;
    r.a = (r.y - f).min();

    auto taken = r.y | f;
    if (model.kind == ModelKind::mostowski) {
        auto fixed = f | r.y.without(r.a);
        auto p = PartialAut::identity(fixed, model.name());
        optional<Atom> above, below;
        for (auto v : fixed) {
            if (model.compare(v, r.a) < 0 && (! above || model.compare(*above, v) < 0))
                above = v;
            if (model.compare(r.a, v) < 0 && (! below || model.compare(v, *below) < 0))
                below = v;
        }
        auto pick = [&] (const FinSet & avoid) {
            auto v = model.chain->least_between(above, below, avoid);
            return v ? *v : model.chain->fresh_between(above, below);
        };
        r.b = pick(taken);
        r.c = pick(taken.with(r.b));
        auto pb = p, pc = p;
        pb.insert(r.a, r.b);
        pc.insert(r.a, r.c);
        r.pi = complete_aut(model, pb, r.y);
        r.sigma = complete_aut(model, pc, r.y);
    }
    else {
        auto region = model.kind == ModelKind::omega_fraenkel ? model.cell(*model.cell_of(r.a)) : model.pool();
        auto fresh = region - taken;
        if (fresh.size() < 2)
            throw NoExtension{"no two fresh atoms next to atom " + std::to_string(r.a)};
        r.b = fresh[0];
        r.c = fresh[1];
        r.pi = PartialAut::transposition(r.a, r.b, model.name());
        r.sigma = PartialAut::transposition(r.a, r.c, model.name());
    }

    r.z = apply_aut(r.pi, r.y);
    r.w = apply_aut(r.sigma, r.y);
    r.sum = r.y ^ r.z ^ r.w;
    r.colour_y = mod4_colouring(r.y);
    r.colour_sum = mod4_colouring(r.sum);

    bool fixes_f = true;
    for (auto v : f)
        fixes_f = fixes_f && r.pi(v) == v && r.sigma(v) == v;

    bool stable;
    if (virtual_model)
        stable = in_orbit_union(model, f, family, r.z) && in_orbit_union(model, f, family, r.w);
    else {
        auto members = family.members();
        auto has = [&] (const FinSet & s) { return std::find(members.begin(), members.end(), s) != members.end(); };
        stable = has(r.z) && has(r.w) && apply_aut(r.pi, encoded) == encoded && apply_aut(r.sigma, encoded) == encoded;
    }

    if (! fixes_f)
        r.note = "a swap moves the support";
    else if (! stable)
        r.note = "the swaps do not preserve the family";
    else if (r.sum.size() != r.y.size() + 2)
        r.note = "sum has the wrong size";
    else if (r.colour_y == r.colour_sum)
        r.note = "colour did not flip";
    r.verdict = r.note.empty() ? Verdict::pass : Verdict::fail;
    return r;
}

auto finlab::encode_choice(const std::map<std::size_t, Atom> & g) -> HSet
{
    vector<HSet> pairs;
    for (auto & [m, a] : g) {
        if (a / 2 != m)
            throw InvalidInput{"atom " + std::to_string(a) + " is not in pair " + std::to_string(m)};
        pairs.push_back(HSet::pair(HSet::ordinal(m), HSet::atom(a)));
    }
    return HSet::set(std::move(pairs));
}

auto finlab::russell_obstruction(const ModelSpec & model, const std::map<std::size_t, Atom> & g, const FinSet & f) -> RussellReport
{
    require_kind(model, { ModelKind::fraenkel2 }, "russell_obstruction");
    require_in_pool(model, f, "declared support");
    for (auto & [m, _] : g)
        if (m >= model.cell_count())
            throw InvalidInput{"pair " + std::to_string(m) + " is outside the pool"};
    auto encoded = encode_choice(g);

    RussellReport r;
    r.before = g;
    if (g.empty()) {
        r.verdict = Verdict::absent;
        r.note = "vacuous: the empty function is supported by the empty set";
        return r;
    }

    for (auto & [m, a] : g)
        if (! model.cell(m).intersects(f)) {
            r.pair_index = m;
            break;
        }
    if (! r.pair_index) {
        r.verdict = Verdict::inconclusive;
        r.note = "every pair in the domain meets the support";
        return r;
    }

    auto n = *r.pair_index;
    r.swap = PartialAut::transposition(static_cast<Atom>(2 * n), static_cast<Atom>(2 * n + 1), model.name());
    r.after = g;
    r.after[n] = g.at(n) ^ 1u;
    auto moved = apply_aut(*r.swap, encoded);
    bool ok = moved != encoded && moved == encode_choice(r.after);
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    if (! ok)
        r.note = "swap failed to move the choice";
    return r;
}

auto finlab::russell_sweep(const ModelSpec & model, const std::map<std::size_t, Atom> & g, std::size_t max_support) -> RussellSweep
{
    require_kind(model, { ModelKind::fraenkel2 }, "russell_sweep");
    RussellSweep s;
    if (g.empty()) {
        s.verdict = Verdict::absent;
        return s;
    }
    bool failed = false;
    auto pool = model.pool();
    for (std::size_t k = 0 ; k <= std::min(max_support, pool.size()) ; ++k)
        for_each_subset_of_size(pool, k, [&] (const FinSet & f) {
            ++s.supports_checked;
            switch (russell_obstruction(model, g, f).verdict) {
                case Verdict::pass:         ++s.refuted; break;
                case Verdict::inconclusive: ++s.inconclusive; break;
                default:                    failed = true;
            }
            return true;
        });
    s.verdict = failed ? Verdict::fail : s.inconclusive ? Verdict::inconclusive : Verdict::pass;
    return s;
}

namespace
{
    auto selectors(std::size_t pairs) -> vector<FinSet>
    {
        vector<FinSet> out;
        for (std::uint64_t mask = 0 ; mask < (std::uint64_t{1} << pairs) ; ++mask) {
            vector<Atom> v;
            for (std::size_t m = 0 ; m < pairs ; ++m)
                v.push_back(static_cast<Atom>(2 * m + ((mask >> m) & 1)));
            out.push_back(FinSet::from_sorted(std::move(v)));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
}

auto finlab::b_family(const ModelSpec & model, std::size_t n) -> BFamily
{
    require_kind(model, { ModelKind::fraenkel2 }, "b_family");
    if (n + 2 > model.cell_count())
        throw InvalidInput{"b_family needs pairs P_0..P_" + std::to_string(n + 1)};
    if (n > 18)
        throw InvalidInput{"b_family enumerates at most 2^20 selectors"};

    BFamily b;
    b.n = n;
    b.level = selectors(n + 1);
    b.next_level = selectors(n + 2);
    b.fiber_sizes.assign(b.level.size(), 0);
    auto last = model.cell(n + 1);
    for (auto & s : b.next_level) {
        auto it = std::lower_bound(b.level.begin(), b.level.end(), s - last);
        auto i = static_cast<std::size_t>(it - b.level.begin());
        b.image.push_back(i);
        ++b.fiber_sizes[i];
    }
    b.surjective = std::all_of(b.fiber_sizes.begin(), b.fiber_sizes.end(), [] (auto k) { return k > 0; });
    b.two_to_one = std::all_of(b.fiber_sizes.begin(), b.fiber_sizes.end(), [] (auto k) { return k == 2; });
    return b;
}

auto finlab::omega_fraenkel_h_obstruction(const ModelSpec & model, const vector<HSet> & seq, const FinSet & f) -> OmegaReport
{
    require_kind(model, { ModelKind::omega_fraenkel }, "omega_fraenkel_h_obstruction");
    require_in_pool(model, f, "declared support");
    if (std::set<HSet>(seq.begin(), seq.end()).size() != seq.size())
        throw InvalidInput{"sequence is not injective"};
    for (auto & s : seq)
        require_in_pool(model, s.atoms(), "sequence term");

    OmegaReport r;
    for (std::size_t i = 0 ; i < seq.size() ; ++i)
        if (! seq[i].atoms().is_subset_of(f)) {
            r.index = i;
            break;
        }
    if (! r.index) {
        r.verdict = Verdict::inconclusive;
        r.note = "every term lies inside the support";
        return r;
    }

    auto & term = seq[*r.index];
    r.a = (term.atoms() - f).min();
    r.block = model.cell_of(*r.a);
    auto fresh = model.cell(*r.block) - term.atoms() - f;
    if (fresh.empty())
        throw NoExtension{"block " + std::to_string(*r.block) + " has no fresh atom"};
    r.b = fresh.min();

    auto pi = PartialAut::transposition(*r.a, *r.b, model.name());
    bool ok = ! f.contains(*r.a) && ! f.contains(*r.b) && apply_aut(pi, term) != term;
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    if (! ok)
        r.note = "transposition fixed the term";
    return r;
}

auto finlab::grid_invariance_check(const ModelSpec & model, const FinSet & x, const PartialAut & pi) -> GridReport
{
    require_kind(model, { ModelKind::grid }, "grid_invariance_check");
    require_in_pool(model, x, "x");
    if (! respects_theory(model, pi))
        throw ConstraintViolation{"map " + to_string(pi) + " does not factor into row and column maps"};

    GridReport r;
    r.x = x;
    r.pi = pi.fixes_rest() ? pi : complete_aut(model, pi, x);
    r.image = apply_aut(r.pi, x);
    r.weight_before = grid_weight(model.grid, x);
    r.weight_after = grid_weight(model.grid, r.image);
    r.verdict = r.weight_before == r.weight_after ? Verdict::pass : Verdict::fail;
    return r;
}

auto finlab::grid_copy_construction(const ModelSpec & model, const FinSet & x, const FinSet & f) -> GridCopyReport
{
    require_kind(model, { ModelKind::grid }, "grid_copy_construction");
    require_in_pool(model, x, "x");
    require_in_pool(model, f, "declared support");
    if (x.empty())
        throw InvalidInput{"x must be nonempty"};

    auto & g = model.grid;
    GridCopyReport r;
    r.x = x;

    auto pick_line = [&] (bool rows) -> optional<std::size_t> {
        auto lines_x = rows ? g.row_set(x) : g.col_set(x);
        auto lines_f = rows ? g.row_set(f) : g.col_set(f);
        auto escaping = lines_x - lines_f;
        if (escaping.empty())
            return std::nullopt;
        return escaping.min();
    };
    auto line = pick_line(true);
    if (! line) {
        r.by_rows = false;
        line = pick_line(false);
    }
    if (! line) {
        r.verdict = Verdict::inconclusive;
        r.note = "every line of x meets the support";
        return r;
    }
    r.line = *line;

    auto extent = r.by_rows ? g.rows : g.cols;
    auto busy = r.by_rows ? (g.row_set(x) | g.row_set(f)) : (g.col_set(x) | g.col_set(f));
    auto free = FinSet::range(static_cast<Atom>(extent)) - busy;
    if (free.size() < 2)
        throw NoExtension{"no two fresh lines for the copies"};
    r.copy1 = free[0];
    r.copy2 = free[1];

    auto line_swap = [&] (std::size_t u, std::size_t v) {
        std::map<Atom, Atom> m;
        auto other = r.by_rows ? g.cols : g.rows;
        for (std::size_t k = 0 ; k < other ; ++k) {
            auto au = r.by_rows ? g.atom(u, k) : g.atom(k, u);
            auto av = r.by_rows ? g.atom(v, k) : g.atom(k, v);
            m[au] = av;
            m[av] = au;
        }
        return PartialAut::finitary(m, model.name());
    };
    r.y = apply_aut(line_swap(r.line, r.copy1), x);
    r.z = apply_aut(line_swap(r.line, r.copy2), x);
    r.sum = x ^ r.y ^ r.z;
    r.weight_x = grid_weight(g, x);
    r.weight_sum = grid_weight(g, r.sum);
    r.colour_x = grid_colouring(g, x);
    r.colour_sum = grid_colouring(g, r.sum);

    if (r.weight_sum != r.weight_x + 2)
        r.note = "sum does not gain exactly two lines";
    else if (r.colour_x == r.colour_sum)
        r.note = "colour did not flip";
    r.verdict = r.note.empty() ? Verdict::pass : Verdict::fail;
    return r;
}
