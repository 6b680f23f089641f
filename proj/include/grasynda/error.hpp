#pragma once

#include <stdexcept>
#include <string>

namespace grasynda {

// Classifies failures so front ends can map them to exit/status codes.
enum class ErrorKind {
	usage = 1,    // bad arguments or configuration
	data = 2,     // malformed or unsuitable input data, I/O failures
	internal = 3, // broken invariant inside the library
};

class Error : public std::runtime_error {
public:
	Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {
	}

	ErrorKind kind() const noexcept {
		return kind_;
	}

private:
	ErrorKind kind_;
};

class UsageError : public Error {
public:
	explicit UsageError(const std::string &message) : Error(ErrorKind::usage, message) {
	}
};

class DataError : public Error {
public:
	explicit DataError(const std::string &message) : Error(ErrorKind::data, message) {
	}
};

class InternalError : public Error {
public:
	explicit InternalError(const std::string &message) : Error(ErrorKind::internal, message) {
	}
};

} // namespace grasynda
