#pragma once

#include <stdexcept>
#include <string>

namespace hroot {

// Failure classes surfaced by the library.  CLI maps degree_budget/bound to
// exit code 4, parse/usage problems to exit 2.
enum class errc {
    reducible,              // candidate minimal polynomial factors over Q
    division_by_zero,
    field_mismatch,         // operands live in different number fields
    arity_mismatch,         // Laurent operands disagree on variable count
    base_mismatch,          // exp-poly base absent from a group presentation
    bad_reduction,          // prime hits a denominator / non-simple root / vanishing base
    degree_budget_exceeded, // splitting tower grew past the configured degree
    bound_exceeded,         // relation search / factorization budget exhausted
    verification_failed,    // internal consistency check failed (library bug)
    parse_error,
    invalid_argument,
};

class Error : public std::runtime_error {
  public:
    Error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc c, const std::string& what) { throw Error(c, what); }

} // namespace hroot
