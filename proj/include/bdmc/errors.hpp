#ifndef BDMC_ERRORS_HPP
#define BDMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bdmc {

// Argument outside the domain of a scalar function or constructor.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The requested value diverges (e.g. phi'' at u = 0). Distinct from a plain
// domain violation so callers can render it as "inf".
class divergence_error : public domain_error {
public:
    using domain_error::domain_error;
};

// Channel rows failed validation.
class invalid_channel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Distribution masses failed validation.
class invalid_distribution : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A proven inequality failed numerically. Only an implementation bug or a
// corrupted input can trigger this.
class bound_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace bdmc

#endif  // BDMC_ERRORS_HPP
