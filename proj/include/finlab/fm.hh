#pragma once

#include <finlab/colouring.hh>
#include <finlab/colourings.hh>
#include <finlab/finset.hh>
#include <finlab/hset.hh>
#include <finlab/partial_aut.hh>
#include <finlab/rado.hh>
#include <finlab/verdict.hh>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finlab
{
    enum class ModelKind
    {
        fraenkel1,
        fraenkel2,
        omega_fraenkel,
        grid,
        mostowski,
        rado,
        ordered_rado
    };

    auto to_string(ModelKind) -> std::string_view;
    // InvalidInput on an unknown name
    auto parse_model_kind(std::string_view) -> ModelKind;

    // Virtual dense order for the Mostowski model: atom i starts at position i, fresh atoms are
    // created between existing ones on demand.
    class DenseChain
    {
        private:
            mutable std::mutex _mutex;
            std::vector<Rational> _position;

        public:
            explicit DenseChain(std::size_t initial);

            auto size() const -> std::size_t;
            auto position(Atom) const -> Rational;
            auto compare(Atom a, Atom b) const -> int;
            // least existing atom strictly inside the interval and outside `taken`, by position
            auto least_between(const std::optional<Atom> & above, const std::optional<Atom> & below, const FinSet & taken) const -> std::optional<Atom>;
            // new atom strictly inside the interval
            auto fresh_between(const std::optional<Atom> & above, const std::optional<Atom> & below) -> Atom;
    };

    struct ModelSpec
    {
        ModelKind kind = ModelKind::fraenkel1;
        // the finite atom pool; the Mostowski chain can grow past it
        std::size_t atom_count = 0;
        // OmegaFraenkel block size, or vertices per Rado block
        std::size_t block_size = 0;
        GridShape grid;
        std::shared_ptr<DenseChain> chain;
        std::shared_ptr<const RadoStructure> structure;

        static auto fraenkel1(std::size_t atoms) -> ModelSpec;
        // P_m = {2m, 2m + 1}
        static auto fraenkel2(std::size_t pairs) -> ModelSpec;
        // A_m = [m * block_size, (m + 1) * block_size)
        static auto omega_fraenkel(std::size_t blocks, std::size_t block_size) -> ModelSpec;
        static auto grid_model(std::size_t rows, std::size_t cols) -> ModelSpec;
        static auto mostowski(std::size_t atoms) -> ModelSpec;
        // atom m * V + v is vertex v of block m; ordered structures give OrderedRado
        static auto rado(std::size_t blocks, std::shared_ptr<const RadoStructure> structure) -> ModelSpec;

        auto name() const -> std::string;
        auto pool() const -> FinSet;
        // atoms currently known, including fresh chain atoms
        auto known_atoms() const -> std::size_t;
        auto is_virtual() const -> bool;
        // pair / block index; absent for models without cells
        auto cell_of(Atom) const -> std::optional<std::size_t>;
        auto cell(std::size_t) const -> FinSet;
        auto cell_count() const -> std::size_t;
        auto local(Atom a) const -> Atom { return static_cast<Atom>(a % block_size); }
        auto global(std::size_t block, Atom v) const -> Atom { return static_cast<Atom>(block * block_size + v); }
        // Mostowski / OrderedRado order on atoms; InvalidInput elsewhere
        auto compare(Atom a, Atom b) const -> int;
    };

    // injective, in range, and preserving the model's structure on the domain
    auto respects_theory(const ModelSpec & model, const PartialAut & p) -> bool;

    // Extends p over `needed`. Each atom goes to itself when that is allowed, otherwise to the least
    // allowed atom; Mostowski creates a fresh chain atom if the order interval has none.
    // ConstraintViolation if p breaks the theory, NoExtension on saturation.
    auto complete_aut(const ModelSpec & model, const PartialAut & p, const FinSet & needed) -> PartialAut;

    // Finitary generators of the pointwise stabilizer of E; InvalidInput for virtual models.
    auto stabilizer_generators(const ModelSpec & model, const FinSet & e) -> std::vector<PartialAut>;

    // An automorphism fixing E pointwise that moves x, if one exists. Finite models search the
    // generators; virtual models send atoms(x) \ E to fresh atoms. NoExtension on saturation.
    auto support_counterexample(const ModelSpec & model, const FinSet & e, const HSet & x) -> std::optional<PartialAut>;
    auto is_support(const ModelSpec & model, const FinSet & e, const HSet & x) -> bool;

    struct Orbit
    {
        std::vector<HSet> members;
        // false when the budget cut the expansion short
        bool complete = true;
    };

    // Finite models: closure under the stabilizer generators. Virtual models: the images whose
    // atoms stay inside the pool.
    auto orbit(const ModelSpec & model, const FinSet & e, const HSet & x, std::size_t budget = 100000) -> Orbit;

    // some automorphism fixing E pointwise maps x onto y; InvalidInput above 8 moving atoms
    auto same_orbit(const ModelSpec & model, const FinSet & e, const FinSet & x, const FinSet & y) -> std::optional<PartialAut>;

    struct FirstFraenkelReport
    {
        Verdict verdict = Verdict::error;
        std::optional<Colour> colour;
        std::size_t subsets_checked = 0;
        std::optional<FinSet> sample_x, sample_y;
        std::optional<PartialAut> sample_map;
        std::optional<std::pair<FinSet, FinSet>> counterexample;
    };

    // InvalidInput unless the model is Fraenkel1, c lives on n-subsets of the pool and F supports c
    auto verify_first_fraenkel_rn(const ModelSpec & model, const Colouring & c, const FinSet & f) -> FirstFraenkelReport;

    struct H3Report
    {
        Verdict verdict = Verdict::error;
        FinSet y;
        Atom a = 0, b = 0, c = 0;
        PartialAut pi, sigma;
        FinSet z, w, sum;
        Colour colour_y = Colour::zero, colour_sum = Colour::zero;
        std::string note;
    };

    // Fraenkel1 and OmegaFraenkel take Y in full and check F supports it; Mostowski takes orbit
    // representatives. InvalidInput if no member escapes F.
    auto verify_h3_witness(const ModelSpec & model, const SetFamily & y, const FinSet & f) -> H3Report;

    struct RussellReport
    {
        Verdict verdict = Verdict::error;
        std::optional<std::size_t> pair_index;
        std::optional<PartialAut> swap;
        std::map<std::size_t, Atom> before, after;
        std::string note;
    };

    // g maps pair indices to a chosen atom of that pair; InvalidInput otherwise
    auto encode_choice(const std::map<std::size_t, Atom> & g) -> HSet;
    auto russell_obstruction(const ModelSpec & model, const std::map<std::size_t, Atom> & g, const FinSet & f) -> RussellReport;

    struct RussellSweep
    {
        Verdict verdict = Verdict::error;
        std::size_t supports_checked = 0;
        std::size_t refuted = 0;
        std::size_t inconclusive = 0;
    };

    // every F of size at most max_support inside the pool
    auto russell_sweep(const ModelSpec & model, const std::map<std::size_t, Atom> & g, std::size_t max_support) -> RussellSweep;

    struct BFamily
    {
        std::size_t n = 0;
        std::vector<FinSet> level, next_level;
        // image[i] indexes level for next_level[i]
        std::vector<std::size_t> image;
        std::vector<std::size_t> fiber_sizes;
        bool surjective = false;
        bool two_to_one = false;
    };

    // selectors of P_0..P_n and P_0..P_{n+1} with f(B) = B \ P_{n+1}; InvalidInput without P_{n+1}
    auto b_family(const ModelSpec & model, std::size_t n) -> BFamily;

    struct OmegaReport
    {
        Verdict verdict = Verdict::error;
        std::optional<std::size_t> index;
        std::optional<Atom> a, b;
        std::optional<std::size_t> block;
        std::string note;
    };

    // NoExtension if the block of a has no atom outside atoms(F_n) and F
    auto omega_fraenkel_h_obstruction(const ModelSpec & model, const std::vector<HSet> & seq, const FinSet & f) -> OmegaReport;

    struct GridReport
    {
        Verdict verdict = Verdict::error;
        FinSet x, image;
        std::size_t weight_before = 0, weight_after = 0;
        PartialAut pi;
    };

    // ConstraintViolation unless pi factors through row and column maps
    auto grid_invariance_check(const ModelSpec & model, const FinSet & x, const PartialAut & pi) -> GridReport;

    struct GridCopyReport
    {
        Verdict verdict = Verdict::error;
        bool by_rows = true;
        std::size_t line = 0, copy1 = 0, copy2 = 0;
        FinSet x, y, z, sum;
        std::size_t weight_x = 0, weight_sum = 0;
        Colour colour_x = Colour::zero, colour_sum = Colour::zero;
        std::string note;
    };

    // copies one line of x outside F to two fresh lines; the sum gains exactly two lines
    auto grid_copy_construction(const ModelSpec & model, const FinSet & x, const FinSet & f) -> GridCopyReport;
}
