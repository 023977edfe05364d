#pragma once

#include <string_view>

namespace finlab
{
    enum class Verdict
    {
        pass,
        fail,
        absent,
        inconclusive,
        error
    };

    constexpr auto to_string(Verdict v) -> std::string_view
    {
        switch (v) {
            case Verdict::pass:         return "PASS";
            case Verdict::fail:         return "FAIL";
            case Verdict::absent:       return "ABSENT";
            case Verdict::inconclusive: return "INCONCLUSIVE";
            case Verdict::error:        return "ERROR";
        }
        return "ERROR";
    }
}
