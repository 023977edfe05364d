#include <finlab/errors.hh>

using namespace finlab;

auto finlab::to_string(ErrorKind kind) -> std::string_view
{
    switch (kind) {
        case ErrorKind::invalid_input:        return "InvalidInput";
        case ErrorKind::domain_error:         return "DomainError";
        case ErrorKind::not_found:            return "NotFound";
        case ErrorKind::unclassifiable:       return "Unclassifiable";
        case ErrorKind::not_constant:         return "NotConstant";
        case ErrorKind::budget_exceeded:      return "BudgetExceeded";
        case ErrorKind::incomplete_map:       return "IncompleteMap";
        case ErrorKind::no_extension:         return "NoExtension";
        case ErrorKind::constraint_violation: return "ConstraintViolation";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string & message) :
    std::runtime_error(message),
    _kind(kind)
{
}
