#include <finlab/fm.hh>
#include <finlab/errors.hh>

#include <algorithm>
#include <set>

using namespace finlab;

using std::optional;
using std::vector;

auto finlab::to_string(ModelKind k) -> std::string_view
{
    switch (k) {
        case ModelKind::fraenkel1:      return "fraenkel1";
        case ModelKind::fraenkel2:      return "fraenkel2";
        case ModelKind::omega_fraenkel: return "omega-fraenkel";
        case ModelKind::grid:           return "grid";
        case ModelKind::mostowski:      return "mostowski";
        case ModelKind::rado:           return "rado";
        case ModelKind::ordered_rado:   return "ordered-rado";
    }
    return "unknown";
}

auto finlab::parse_model_kind(std::string_view s) -> ModelKind
{
    for (auto k : { ModelKind::fraenkel1, ModelKind::fraenkel2, ModelKind::omega_fraenkel, ModelKind::grid,
            ModelKind::mostowski, ModelKind::rado, ModelKind::ordered_rado })
        if (to_string(k) == s)
            return k;
    throw InvalidInput{"unknown model '" + std::string{s} + "'"};
}

DenseChain::DenseChain(std::size_t initial)
{
    for (std::size_t i = 0 ; i < initial ; ++i)
        _position.emplace_back(i);
}

auto DenseChain::size() const -> std::size_t
{
    std::lock_guard lock{_mutex};
    return _position.size();
}

auto DenseChain::position(Atom a) const -> Rational
{
    std::lock_guard lock{_mutex};
    if (a >= _position.size())
        throw InvalidInput{"atom " + std::to_string(a) + " is not on the chain"};
    return _position[a];
}

auto DenseChain::compare(Atom a, Atom b) const -> int
{
    auto pa = position(a), pb = position(b);
    return pa < pb ? -1 : pb < pa ? 1 : 0;
}

auto DenseChain::least_between(const optional<Atom> & above, const optional<Atom> & below, const FinSet & taken) const -> optional<Atom>
{
    optional<Rational> lo, hi;
    if (above)
        lo = position(*above);
    if (below)
        hi = position(*below);
    std::lock_guard lock{_mutex};
    optional<Atom> best;
    for (Atom v = 0 ; v < _position.size() ; ++v) {
        auto & p = _position[v];
        if ((lo && ! (*lo < p)) || (hi && ! (p < *hi)) || taken.contains(v))
            continue;
        if (! best || p < _position[*best])
            best = v;
    }
    return best;
}

auto DenseChain::fresh_between(const optional<Atom> & above, const optional<Atom> & below) -> Atom
{
    optional<Rational> lo, hi;
    if (above)
        lo = position(*above);
    if (below)
        hi = position(*below);
    if (lo && hi && ! (*lo < *hi))
        throw ConstraintViolation{"empty order interval"};

    std::lock_guard lock{_mutex};
    // next existing position above lo, so the fresh atom sits in a gap
    optional<Rational> next;
    for (auto & p : _position)
        if ((! lo || *lo < p) && (! next || p < *next))
            next = p;
    if (hi && next && *hi < *next)
        next = hi;

    Rational fresh;
    if (lo && next)
        fresh = (*lo + *next) / 2;
    else if (lo)
        fresh = *lo + 1;
    else if (next)
        fresh = *next - 1;
    else
        fresh = 0;
    _position.push_back(fresh);
    return static_cast<Atom>(_position.size() - 1);
}

auto ModelSpec::fraenkel1(std::size_t atoms) -> ModelSpec
{
    ModelSpec m;
    m.kind = ModelKind::fraenkel1;
    m.atom_count = atoms;
    return m;
}

auto ModelSpec::fraenkel2(std::size_t pairs) -> ModelSpec
{
    ModelSpec m;
    m.kind = ModelKind::fraenkel2;
    m.atom_count = 2 * pairs;
    m.block_size = 2;
    return m;
}

auto ModelSpec::omega_fraenkel(std::size_t blocks, std::size_t block_size) -> ModelSpec
{
    if (block_size == 0)
        throw InvalidInput{"block size must be positive"};
    ModelSpec m;
    m.kind = ModelKind::omega_fraenkel;
    m.atom_count = blocks * block_size;
    m.block_size = block_size;
    return m;
}

auto ModelSpec::grid_model(std::size_t rows, std::size_t cols) -> ModelSpec
{
    ModelSpec m;
    m.kind = ModelKind::grid;
    m.grid = GridShape{rows, cols};
    m.atom_count = rows * cols;
    return m;
}

auto ModelSpec::mostowski(std::size_t atoms) -> ModelSpec
{
    ModelSpec m;
    m.kind = ModelKind::mostowski;
    m.atom_count = atoms;
    m.chain = std::make_shared<DenseChain>(atoms);
    return m;
}

auto ModelSpec::rado(std::size_t blocks, std::shared_ptr<const RadoStructure> structure) -> ModelSpec
{
    if (! structure || structure->vertex_count() == 0)
        throw InvalidInput{"Rado model needs a nonempty structure"};
    ModelSpec m;
    m.kind = structure->ordered() ? ModelKind::ordered_rado : ModelKind::rado;
    m.block_size = structure->vertex_count();
    m.atom_count = blocks * m.block_size;
    m.structure = std::move(structure);
    return m;
}

auto ModelSpec::name() const -> std::string
{
    std::string n{to_string(kind)};
    if (structure)
        n += "(" + std::to_string(structure->arity()) + ")";
    return n;
}

auto ModelSpec::pool() const -> FinSet
{
    return FinSet::range(static_cast<Atom>(atom_count));
}

auto ModelSpec::known_atoms() const -> std::size_t
{
    return chain ? chain->size() : atom_count;
}

auto ModelSpec::is_virtual() const -> bool
{
    return kind == ModelKind::mostowski || kind == ModelKind::rado || kind == ModelKind::ordered_rado;
}

auto ModelSpec::cell_of(Atom a) const -> optional<std::size_t>
{
    switch (kind) {
        case ModelKind::fraenkel2:
        case ModelKind::omega_fraenkel:
        case ModelKind::rado:
        case ModelKind::ordered_rado:
            if (a >= atom_count)
                throw InvalidInput{"atom " + std::to_string(a) + " is outside the pool"};
            return a / block_size;
        default:
            return std::nullopt;
    }
}

auto ModelSpec::cell(std::size_t i) const -> FinSet
{
    if (block_size == 0 || i >= cell_count())
        throw InvalidInput{"no cell " + std::to_string(i)};
    vector<Atom> v;
    for (std::size_t j = 0 ; j < block_size ; ++j)
        v.push_back(static_cast<Atom>(i * block_size + j));
    return FinSet::from_sorted(std::move(v));
}

auto ModelSpec::cell_count() const -> std::size_t
{
    return block_size ? atom_count / block_size : 0;
}

auto ModelSpec::compare(Atom a, Atom b) const -> int
{
    if (kind == ModelKind::mostowski)
        return chain->compare(a, b);
    if (kind == ModelKind::ordered_rado) {
        auto ca = *cell_of(a), cb = *cell_of(b);
        if (ca != cb)
            return ca < cb ? -1 : 1;
        return structure->compare(local(a), local(b));
    }
    throw InvalidInput{"model " + name() + " carries no order"};
}

namespace
{
    auto local_map(const ModelSpec & model, const PartialAut & p, std::size_t block) -> PartialAut
    {
        PartialAut l;
        for (auto & [a, b] : p.entries())
            if (*model.cell_of(a) == block)
                l.insert(model.local(a), model.local(b));
        return l;
    }

    auto grid_factors(const ModelSpec & model, const PartialAut & p, std::map<std::size_t, std::size_t> & sigma,
            std::map<std::size_t, std::size_t> & rho) -> bool
    {
        std::map<std::size_t, std::size_t> sigma_inv, rho_inv;
        auto bind = [] (auto & fwd, auto & inv, std::size_t x, std::size_t y) {
            if (auto f = fwd.find(x) ; f != fwd.end())
                return f->second == y;
            if (inv.count(y))
                return false;
            fwd.emplace(x, y);
            inv.emplace(y, x);
            return true;
        };
        for (auto & [a, b] : p.entries()) {
            auto [ra, ca] = model.grid.coords(a);
            auto [rb, cb] = model.grid.coords(b);
            if (! bind(sigma, sigma_inv, ra, rb) || ! bind(rho, rho_inv, ca, cb))
                return false;
        }
        return true;
    }

    auto free_value(const std::map<std::size_t, std::size_t> & m, std::size_t x, std::size_t limit) -> optional<std::size_t>
    {
        std::set<std::size_t> used;
        for (auto & [_, v] : m)
            used.insert(v);
        if (! used.count(x))
            return x;
        for (std::size_t v = 0 ; v < limit ; ++v)
            if (! used.count(v))
                return v;
        return std::nullopt;
    }

    auto order_slot(const ModelSpec & model, const PartialAut & p, Atom a) -> std::pair<optional<Atom>, optional<Atom>>
    {
        optional<Atom> lo, hi;
        for (auto & [x, _] : p.entries()) {
            if (model.compare(x, a) < 0 && (! lo || model.compare(*lo, x) < 0))
                lo = x;
            if (model.compare(a, x) < 0 && (! hi || model.compare(x, *hi) < 0))
                hi = x;
        }
        optional<Atom> above, below;
        if (lo)
            above = p(*lo);
        if (hi)
            below = p(*hi);
        return { above, below };
    }

    auto inside(const ModelSpec & model, Atom v, const optional<Atom> & above, const optional<Atom> & below) -> bool
    {
        return (! above || model.compare(*above, v) < 0) && (! below || model.compare(v, *below) < 0);
    }

    // a finitary map also fixes the rest of the pool; lines and blocks see those fixed points
    auto with_fixed_points(const ModelSpec & model, const PartialAut & p) -> PartialAut
    {
        auto m = p.entries();
        for (auto a : model.pool())
            m.emplace(a, a);
        return PartialAut{m, p.theory()};
    }

    auto sorted_for_model(const ModelSpec & model, const FinSet & atoms) -> vector<Atom>
    {
        vector<Atom> v(atoms.begin(), atoms.end());
        if (model.kind == ModelKind::mostowski)
            std::sort(v.begin(), v.end(), [&] (Atom a, Atom b) { return model.compare(a, b) < 0; });
        return v;
    }
}

auto finlab::respects_theory(const ModelSpec & model, const PartialAut & p) -> bool
{
    auto limit = model.known_atoms();
    for (auto & [a, b] : p.entries())
        if (a >= limit || b >= limit)
            return false;

    switch (model.kind) {
        case ModelKind::fraenkel1:
            return true;

        case ModelKind::fraenkel2:
        case ModelKind::omega_fraenkel:
            for (auto & [a, b] : p.entries())
                if (model.cell_of(a) != model.cell_of(b))
                    return false;
            return true;

        case ModelKind::grid: {
            std::map<std::size_t, std::size_t> sigma, rho;
            return grid_factors(model, p.fixes_rest() ? with_fixed_points(model, p) : p, sigma, rho);
        }

        case ModelKind::mostowski:
            for (auto & [a, pa] : p.entries())
                for (auto & [b, pb] : p.entries())
                    if (model.compare(a, b) != model.compare(pa, pb))
                        return false;
            return true;

        case ModelKind::rado:
        case ModelKind::ordered_rado: {
            std::set<std::size_t> blocks;
            for (auto & [a, b] : p.entries()) {
                if (model.cell_of(a) != model.cell_of(b))
                    return false;
                blocks.insert(*model.cell_of(a));
            }
            auto full = p.fixes_rest() ? with_fixed_points(model, p) : p;
            for (auto block : blocks)
                if (! is_partial_iso(*model.structure, local_map(model, full, block)))
                    return false;
            return true;
        }
    }
    return false;
}

auto finlab::complete_aut(const ModelSpec & model, const PartialAut & p, const FinSet & needed) -> PartialAut
{
    if (! respects_theory(model, p))
        throw ConstraintViolation{"map " + to_string(p) + " breaks the " + model.name() + " theory"};
    for (auto a : needed)
        if (a >= model.known_atoms())
            throw InvalidInput{"atom " + std::to_string(a) + " is not in the model"};

    PartialAut r = p;
    for (auto a : sorted_for_model(model, needed)) {
        if (r.image_of(a))
            continue;
        auto taken = r.image();
        optional<Atom> target;

        switch (model.kind) {
            case ModelKind::fraenkel1:
                if (! taken.contains(a))
                    target = a;
                else
                    for (Atom v = 0 ; v < model.atom_count && ! target ; ++v)
                        if (! taken.contains(v))
                            target = v;
                break;

            case ModelKind::fraenkel2:
            case ModelKind::omega_fraenkel: {
                auto cell = model.cell(*model.cell_of(a));
                if (! taken.contains(a))
                    target = a;
                else
                    for (auto v : cell)
                        if (! taken.contains(v)) {
                            target = v;
                            break;
                        }
                break;
            }

            case ModelKind::grid: {
                std::map<std::size_t, std::size_t> sigma, rho;
                grid_factors(model, r, sigma, rho);
                auto [row, col] = model.grid.coords(a);
                auto rs = sigma.count(row) ? optional<std::size_t>{sigma[row]} : free_value(sigma, row, model.grid.rows);
                auto cs = rho.count(col) ? optional<std::size_t>{rho[col]} : free_value(rho, col, model.grid.cols);
                if (rs && cs)
                    target = model.grid.atom(*rs, *cs);
                break;
            }

            case ModelKind::mostowski: {
                auto [above, below] = order_slot(model, r, a);
                if (! taken.contains(a) && inside(model, a, above, below))
                    target = a;
                else
                    target = model.chain->least_between(above, below, taken);
                if (! target)
                    target = model.chain->fresh_between(above, below);
                break;
            }

            case ModelKind::rado:
            case ModelKind::ordered_rado: {
                auto block = *model.cell_of(a);
                auto l = extend_partial_iso(*model.structure, local_map(model, r, block), model.local(a));
                target = model.global(block, *l.image_of(model.local(a)));
                break;
            }
        }

        if (! target)
            throw NoExtension{"no image left for atom " + std::to_string(a)};
        r.insert(a, *target);
    }

    if (! respects_theory(model, r))
        throw ConstraintViolation{"completion broke the " + model.name() + " theory"};
    r.mark_verified(model.name());
    return r;
}

auto finlab::stabilizer_generators(const ModelSpec & model, const FinSet & e) -> vector<PartialAut>
{
    vector<PartialAut> gens;
    auto theory = model.name();
    switch (model.kind) {
        case ModelKind::fraenkel1:
            for (Atom a = 0 ; a < model.atom_count ; ++a)
                for (Atom b = a + 1 ; b < model.atom_count ; ++b)
                    if (! e.contains(a) && ! e.contains(b))
                        gens.push_back(PartialAut::transposition(a, b, theory));
            break;

        case ModelKind::fraenkel2:
            for (std::size_t m = 0 ; m < model.cell_count() ; ++m) {
                auto pair = model.cell(m);
                if (! pair.intersects(e))
                    gens.push_back(PartialAut::transposition(pair[0], pair[1], theory));
            }
            break;

        case ModelKind::omega_fraenkel:
            for (std::size_t m = 0 ; m < model.cell_count() ; ++m) {
                auto block = model.cell(m) - e;
                for (std::size_t i = 0 ; i < block.size() ; ++i)
                    for (std::size_t j = i + 1 ; j < block.size() ; ++j)
                        gens.push_back(PartialAut::transposition(block[i], block[j], theory));
            }
            break;

        case ModelKind::grid: {
            auto rows_e = model.grid.row_set(e), cols_e = model.grid.col_set(e);
            vector<std::size_t> rows, cols;
            for (std::size_t r = 0 ; r < model.grid.rows ; ++r)
                if (! rows_e.contains(static_cast<Atom>(r)))
                    rows.push_back(r);
            for (std::size_t c = 0 ; c < model.grid.cols ; ++c)
                if (! cols_e.contains(static_cast<Atom>(c)))
                    cols.push_back(c);
            for (std::size_t i = 0 ; i + 1 < rows.size() ; ++i) {
                std::map<Atom, Atom> m;
                for (std::size_t c = 0 ; c < model.grid.cols ; ++c) {
                    m[model.grid.atom(rows[i], c)] = model.grid.atom(rows[i + 1], c);
                    m[model.grid.atom(rows[i + 1], c)] = model.grid.atom(rows[i], c);
                }
                gens.push_back(PartialAut::finitary(m, theory));
            }
            for (std::size_t i = 0 ; i + 1 < cols.size() ; ++i) {
                std::map<Atom, Atom> m;
                for (std::size_t r = 0 ; r < model.grid.rows ; ++r) {
                    m[model.grid.atom(r, cols[i])] = model.grid.atom(r, cols[i + 1]);
                    m[model.grid.atom(r, cols[i + 1])] = model.grid.atom(r, cols[i]);
                }
                gens.push_back(PartialAut::finitary(m, theory));
            }
            break;
        }

        default:
            throw InvalidInput{"model " + theory + " has no finite generator basis"};
    }
    return gens;
}

auto finlab::support_counterexample(const ModelSpec & model, const FinSet & e, const HSet & x) -> optional<PartialAut>
{
    if (! model.is_virtual()) {
        for (auto & g : stabilizer_generators(model, e))
            if (apply_aut(g, x) != x)
                return g;
        return std::nullopt;
    }

    // a finite object in a virtual model is supported exactly by the supersets of its atoms
    const auto & atoms = x.atoms();
    auto moving = atoms - e;
    if (moving.empty())
        return std::nullopt;

    PartialAut p = PartialAut::identity(e | (atoms & e));
    for (auto a : sorted_for_model(model, moving)) {
        auto avoid = atoms | p.image();
        optional<Atom> target;
        if (model.kind == ModelKind::mostowski) {
            auto [above, below] = order_slot(model, p, a);
            target = model.chain->least_between(above, below, avoid);
            if (! target)
                target = model.chain->fresh_between(above, below);
        }
        else {
            auto block = *model.cell_of(a);
            auto l = local_map(model, p, block);
            auto [d, slot] = extension_demand(*model.structure, l, model.local(a));
            vector<Atom> avoid_local;
            for (auto v : avoid)
                if (v < model.atom_count && *model.cell_of(v) == block)
                    avoid_local.push_back(model.local(v));
            auto w = extension_witness(*model.structure, d, FinSet{std::move(avoid_local)}, slot);
            if (! w)
                throw NoExtension{"block " + std::to_string(block) + " cannot move atom " + std::to_string(a)};
            target = model.global(block, *w);
        }
        p.insert(a, *target);
    }

    if (! respects_theory(model, p))
        throw ConstraintViolation{"moving map breaks the " + model.name() + " theory"};
    p.mark_verified(model.name());
    return p;
}

auto finlab::is_support(const ModelSpec & model, const FinSet & e, const HSet & x) -> bool
{
    return ! support_counterexample(model, e, x);
}

auto finlab::orbit(const ModelSpec & model, const FinSet & e, const HSet & x, std::size_t budget) -> Orbit
{
    Orbit result;
    std::set<HSet> seen{x};

    if (! model.is_virtual()) {
        auto gens = stabilizer_generators(model, e);
        vector<HSet> frontier{x};
        while (! frontier.empty() && result.complete) {
            vector<HSet> next;
            for (auto & y : frontier)
                for (auto & g : gens) {
                    auto z = apply_aut(g, y);
                    if (seen.insert(z).second) {
                        next.push_back(z);
                        if (seen.size() > budget) {
                            result.complete = false;
                            break;
                        }
                    }
                }
            frontier = std::move(next);
        }
    }
    else {
        auto moving = sorted_for_model(model, x.atoms() - e);
        auto pool = model.pool() - e;
        PartialAut base = PartialAut::identity(e | (x.atoms() & e));
        std::size_t nodes = 0;
        auto rec = [&] (auto & self, std::size_t i, PartialAut & p) -> void {
            if (++nodes > budget) {
                result.complete = false;
                return;
            }
            if (i == moving.size()) {
                auto q = p;
                q.mark_verified(model.name());
                seen.insert(apply_aut(q, x));
                return;
            }
            for (auto v : pool) {
                if (! result.complete)
                    return;
                if (p.preimage_of(v))
                    continue;
                auto q = p;
                q.insert(moving[i], v);
                if (respects_theory(model, q))
                    self(self, i + 1, q);
            }
        };
        rec(rec, 0, base);
    }

    result.members.assign(seen.begin(), seen.end());
    return result;
}

auto finlab::same_orbit(const ModelSpec & model, const FinSet & e, const FinSet & x, const FinSet & y) -> optional<PartialAut>
{
    if (x.size() != y.size() || (x & e) != (y & e))
        return std::nullopt;
    auto xs = x - e, ys = y - e;
    if (xs.size() > 8)
        throw InvalidInput{"same_orbit enumerates at most 8 moving atoms"};

    vector<Atom> perm(ys.begin(), ys.end());
    do {
        PartialAut p = PartialAut::identity(e);
        bool ok = true;
        for (std::size_t i = 0 ; i < xs.size() && ok ; ++i) {
            if (p.preimage_of(perm[i]) && *p.preimage_of(perm[i]) != xs[i])
                ok = false;
            else
                p.insert(xs[i], perm[i]);
        }
        if (ok && respects_theory(model, p)) {
            p.mark_verified(model.name());
            return p;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}
