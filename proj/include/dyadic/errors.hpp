#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

// Base for every library error. `code()` is the stable machine-readable
// identifier the CLI puts into error JSON; `what()` carries the details.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define DYADIC_ERROR_TYPE(Name)                                        \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& msg = #Name)                  \
            : Error(#Name, msg) {}                                     \
    }

DYADIC_ERROR_TYPE(NotEisenstein);
DYADIC_ERROR_TYPE(NotIrreducibleUnramified);
DYADIC_ERROR_TYPE(PrecisionTooSmall);
DYADIC_ERROR_TYPE(PrecisionLoss);
DYADIC_ERROR_TYPE(DivisionByZero);
DYADIC_ERROR_TYPE(ZeroArgument);
DYADIC_ERROR_TYPE(DegenerateSpace);
DYADIC_ERROR_TYPE(DegenerateGram);
DYADIC_ERROR_TYPE(BadCodimension);
DYADIC_ERROR_TYPE(IndexOutOfRange);
DYADIC_ERROR_TYPE(ZeroEntry);
DYADIC_ERROR_TYPE(FieldMismatch);
DYADIC_ERROR_TYPE(NonIntegralLattice);
DYADIC_ERROR_TYPE(BudgetExceeded);
DYADIC_ERROR_TYPE(NoAdmissibleT);
DYADIC_ERROR_TYPE(ParseError);

#undef DYADIC_ERROR_TYPE

// Validation failures that carry the offending BONG position (1-based).
class NotAdjacentAdmissible : public Error {
public:
    explicit NotAdjacentAdmissible(int index, const std::string& msg = "")
        : Error("NotAdjacentAdmissible",
                msg.empty() ? "pair (" + std::to_string(index) + "," +
                                  std::to_string(index + 1) + ") not admissible"
                            : msg),
          index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

class NotGood : public Error {
public:
    explicit NotGood(int index, const std::string& msg = "")
        : Error("NotGood",
                msg.empty() ? "ord Q(x_" + std::to_string(index) +
                                  ") > ord Q(x_" + std::to_string(index + 2) + ")"
                            : msg),
          index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

}  // namespace dyadic
