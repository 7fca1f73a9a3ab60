#pragma once

#include <stdexcept>
#include <string>

namespace fpsg {

// Base for every error this library raises on bad input or violated
// preconditions.
class Error : public std::runtime_error {
public:
	explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// A polynomial exceeded the configured term budget (see
// FieldElem::set_max_terms). Composition depth grows degrees superlinearly;
// this aborts instead of thrashing.
class BlowupError : public Error {
public:
	explicit BlowupError(const std::string &what) : Error(what) {}
};

// A cross-check that cannot fail through truncation disagreed. Always a bug.
class InternalError : public Error {
public:
	explicit InternalError(const std::string &what) : Error(what) {}
};

} // namespace fpsg
