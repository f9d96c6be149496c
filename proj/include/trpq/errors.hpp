// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace trpq {

class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class ConflictingValue : public Error {
public:
	using Error::Error;
};

class DomainTooLarge : public Error {
public:
	using Error::Error;
};

class FragmentError : public Error {
public:
	using Error::Error;
};

class ResourceLimit : public Error {
public:
	using Error::Error;
};

class UnsupportedFeature : public Error {
public:
	using Error::Error;
};

class InvalidInstance : public Error {
public:
	using Error::Error;
};

class SizeLimit : public Error {
public:
	using Error::Error;
};

class IoError : public Error {
public:
	using Error::Error;
};

class SyntaxError : public Error {
public:
	SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string &detail);

	std::size_t position() const { return position_; }
	const std::vector<std::string> &expected() const { return expected_; }

private:
	std::size_t position_;
	std::vector<std::string> expected_;
};

class FormatError : public Error {
public:
	FormatError(std::string file, std::size_t line, const std::string &detail);

	const std::string &file() const { return file_; }
	std::size_t line() const { return line_; }

private:
	std::string file_;
	std::size_t line_;
};

} // namespace trpq
