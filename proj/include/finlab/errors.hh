#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finlab
{
    enum class ErrorKind
    {
        invalid_input,
        domain_error,
        not_found,
        unclassifiable,
        not_constant,
        budget_exceeded,
        incomplete_map,
        no_extension,
        constraint_violation
    };

    auto to_string(ErrorKind) -> std::string_view;

    class Error : public std::runtime_error
    {
        private:
            ErrorKind _kind;

        public:
            Error(ErrorKind kind, const std::string & message);

            auto kind() const -> ErrorKind { return _kind; }
    };

#define FINLAB_ERROR_TYPE(name, tag) \
    struct name : Error \
    { \
        explicit name(const std::string & message) : Error(ErrorKind::tag, message) { } \
    }

    FINLAB_ERROR_TYPE(InvalidInput, invalid_input);
    FINLAB_ERROR_TYPE(DomainError, domain_error);
    FINLAB_ERROR_TYPE(NotFound, not_found);
    FINLAB_ERROR_TYPE(Unclassifiable, unclassifiable);
    FINLAB_ERROR_TYPE(NotConstant, not_constant);
    FINLAB_ERROR_TYPE(BudgetExceeded, budget_exceeded);
    FINLAB_ERROR_TYPE(IncompleteMap, incomplete_map);
    FINLAB_ERROR_TYPE(NoExtension, no_extension);
    FINLAB_ERROR_TYPE(ConstraintViolation, constraint_violation);

#undef FINLAB_ERROR_TYPE
}
