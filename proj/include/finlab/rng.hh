#pragma once

#include <cstdint>
#include <random>

namespace finlab
{
    // mt19937_64 with draws defined here rather than by std distributions, whose output is
    // implementation-defined; seeds must reproduce byte-identical reports everywhere.
    class Rng
    {
        private:
            std::mt19937_64 _engine;

        public:
            explicit Rng(std::uint64_t seed) : _engine(seed) { }

            auto next() -> std::uint64_t { return _engine(); }

            // uniform on [0, n); n > 0
            auto below(std::uint64_t n) -> std::uint64_t
            {
                std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
                std::uint64_t v;
                do
                    v = _engine();
                while (v >= limit);
                return v % n;
            }

            auto coin() -> bool { return _engine() >> 63; }
    };
}
