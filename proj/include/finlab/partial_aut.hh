#pragma once

#include <finlab/finset.hh>
#include <finlab/hset.hh>

#include <map>
#include <optional>
#include <string>

namespace finlab
{
    enum class AutStatus
    {
        raw,
        verified_extendable
    };

    // Finite injective atom map. A finitary permutation also fixes every atom outside its domain;
    // otherwise atoms outside the domain have no image yet.
    class PartialAut
    {
        private:
            std::map<Atom, Atom> _map;
            std::map<Atom, Atom> _inverse;
            std::string _theory;
            AutStatus _status = AutStatus::raw;
            bool _fixes_rest = false;

        public:
            PartialAut() = default;
            // ConstraintViolation if not injective
            explicit PartialAut(const std::map<Atom, Atom> & map, std::string theory = "");

            static auto identity(const FinSet & atoms, std::string theory = "") -> PartialAut;
            // swaps a and b and fixes everything else; already a total automorphism for the flat theories
            static auto transposition(Atom a, Atom b, std::string theory) -> PartialAut;
            // a permutation of its own domain, fixing everything else; ConstraintViolation unless domain = image
            static auto finitary(const std::map<Atom, Atom> & map, std::string theory) -> PartialAut;

            auto entries() const -> const std::map<Atom, Atom> & { return _map; }
            auto theory() const -> const std::string & { return _theory; }
            auto status() const -> AutStatus { return _status; }
            auto fixes_rest() const -> bool { return _fixes_rest; }
            auto size() const -> std::size_t { return _map.size(); }

            auto defined(Atom a) const -> bool;
            auto image_of(Atom a) const -> std::optional<Atom>;
            auto preimage_of(Atom b) const -> std::optional<Atom>;
            // IncompleteMap when a has no image
            auto operator() (Atom a) const -> Atom;

            auto domain() const -> FinSet;
            auto image() const -> FinSet;

            // ConstraintViolation on a clash; resets the status to raw
            auto insert(Atom a, Atom b) -> void;
            auto mark_verified(std::string theory) -> void;

            // x -> other(this(x))
            auto then(const PartialAut & other) const -> PartialAut;
            auto inverse() const -> PartialAut;

            friend auto operator== (const PartialAut &, const PartialAut &) -> bool = default;
    };

    auto to_string(const PartialAut &) -> std::string;

    // IncompleteMap unless pi is verified and covers every atom of x
    auto apply_aut(const PartialAut & pi, const HSet & x) -> HSet;
    auto apply_aut(const PartialAut & pi, const FinSet & x) -> FinSet;
}
