#pragma once

#include <finlab/colouring.hh>
#include <finlab/colourings.hh>
#include <finlab/finset.hh>
#include <finlab/ramsey.hh>

#include <optional>
#include <string_view>
#include <vector>

namespace finlab
{
    enum class ViolationKind
    {
        disjoint_equal_cardinality,
        colour_mismatch,
        bound_breach
    };

    auto to_string(ViolationKind) -> std::string_view;

    struct ViolationReport
    {
        ViolationKind kind;
        std::vector<FinSet> witnesses;
        // log2 colours and cardinalities of the witnesses, in witness order
        std::vector<Colour> colours;
        std::vector<std::size_t> cardinalities;
        // bound_breach only
        std::optional<BigInt> bound;
    };

    // Recomputes the violation from the witnesses alone.
    auto reverify(const ViolationReport &) -> bool;

    // first pair (index order) with equal cardinality; witnesses x, y, x | y
    // InvalidInput unless Y is injective and pairwise disjoint
    auto cardinality_injectivity_check(const SetFamily & y) -> std::optional<ViolationReport>;

    // log2 colouring over FS_{<=4}(Y) with the empty sum removed; witnesses are the least sum and
    // the least sum of the other colour. InvalidInput on non-injective Y or an empty member.
    auto fs4_mono_check(const SetFamily & y) -> std::optional<ViolationReport>;

    // breach iff at least F(n,n) members have cardinality n; InvalidInput unless fs4_mono_check passes
    auto fs4_count_bound(const SetFamily & y, unsigned n, const RamseyProvider & provider) -> std::optional<ViolationReport>;

    struct InductionStep
    {
        FinSet anchor;
        FinSet kernel;
        SetFamily bucket;
        // bucket size that forces a monochromatic target-subset of the pair colouring
        RamseyAnswer forcing_size;
        std::optional<SetFamily> subfamily;
        // a colour-0 target-subset would contradict the FS_{<=4} hypothesis; always absent on valid input
        std::optional<SetFamily> colour_zero_witness;
    };

    // One step: anchor = least member, bucket the rest by intersection with the anchor (largest
    // bucket, ties to the least kernel), search a colour-1 target-subset of
    // d({y,z}) = 1 iff (y \ r) and (z \ r) meet. InvalidInput on any precondition breach.
    auto fs4_induction_step(const SetFamily & y, std::size_t n, std::size_t k, const RamseyProvider & provider,
            std::size_t target = 4, const SearchOptions & options = {}) -> InductionStep;

    // d(s) = c(union of ys[i], i in s) over all subsets of {0..|ys|-1}
    // InvalidInput unless ys is pairwise disjoint with nonempty members
    auto pushforward_colouring(const Colouring & c, const SetFamily & ys) -> Colouring;
    auto lift_family(const SetFamily & z, const SetFamily & ys) -> SetFamily;

    // {{y, z} : y in Z \ {z}}; InvalidInput if z is not in Z or |Z| < 2
    auto star_family(const FinSet & z_set, Atom z) -> SetFamily;

    struct SchurFs3
    {
        SetFamily family;
        Colour colour;
        SchurTriple triple;
        SchurParameters params;
    };

    // Y_i = row 0 columns [0, n) + row i columns [n, n + k), i = 1..size, for the least Schur
    // triple of g among evens up to bound. FS_{<=3}(Y) monochromacy under g(|x|) is re-checked.
    // NotFound without a triple; InvalidInput if the grid lacks size + 1 rows or n + k columns.
    auto schur_to_fs3(const NumberColouring & g, std::uint64_t bound, const GridShape & grid, std::size_t size) -> SchurFs3;
}
