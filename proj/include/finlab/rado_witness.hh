#pragma once

#include <finlab/colouring.hh>
#include <finlab/fm.hh>
#include <finlab/verdict.hh>

#include <optional>
#include <string>
#include <vector>

namespace finlab
{
    // 1 iff x sits inside one block and some arity-subset of x is a hyperedge of that block
    auto rado_block_colouring(const ModelSpec & model, const FinSet & x) -> Colour;

    struct RadoH2Report
    {
        Verdict verdict = Verdict::error;
        FinSet y;
        Atom a = 0, b = 0, c = 0;
        std::size_t block = 0;
        // global atoms of F' split by adjacency to a
        FinSet f0, f1;
        PartialAut pi, sigma;
        FinSet z, w, ab, ac;
        Colour colour_ab = Colour::zero, colour_ac = Colour::zero;
        std::string note;
    };

    // Y is the union of the F-orbits of `reps`. InvalidInput unless the model is Rado over a graph
    // and some representative escapes F; NoExtension if the block cannot host b or c.
    auto rado_h2_witness(const ModelSpec & model, const SetFamily & reps, const FinSet & f) -> RadoH2Report;

    struct RadoRkReport
    {
        Verdict verdict = Verdict::error;
        std::size_t arity = 0, k = 0;
        // k < arity: every k-subset of a block missing F shares one orbit
        bool transitivity_mode = false;
        std::size_t block = 0;
        std::optional<Atom> a;
        std::vector<Atom> a_seq, b_seq;
        std::vector<PartialAut> pi, sigma;
        Colour colour_a = Colour::zero, colour_b = Colour::zero;
        std::size_t subsets_checked = 0;
        std::string note;
    };

    // X must be closed under F-types inside the pool, i.e. the pool part of an F-supported set.
    // InvalidInput if X is not, or X lies inside F; NoExtension on saturation.
    auto rado_rk_witness(const ModelSpec & model, std::size_t k, const FinSet & x, const FinSet & f) -> RadoRkReport;
}
